//! Hecke signatures (λ, k, γ) and executable forms of the correspondence:
//! the completed-transform functional equation and the modular relation
//! of the attached q-expansions.

mod registry;

pub use registry::{lookup, normalize_name, registry, RegistryInstance};

use crate::arithmetic::CoefficientSeq;
use crate::lfun_ref::LSeriesRef;
use crate::numerics::{gamma, NeumaierSum};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Affine change of variables from corollary variables to theorem
/// variables: u ↦ (u + t0)/t1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariableMap {
    pub t0: f64,
    pub t1: f64,
}

impl VariableMap {
    pub const IDENTITY: VariableMap = VariableMap { t0: 0.0, t1: 1.0 };

    pub fn to_theorem(&self, u: C64) -> C64 {
        (u + self.t0) / self.t1
    }

    pub fn to_corollary(&self, u: C64) -> C64 {
        u * self.t1 - self.t0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeckeSignature {
    pub lambda: f64,
    pub k: f64,
    pub gamma: C64,
    pub alpha_seq: CoefficientSeq,
    pub beta_seq: CoefficientSeq,
    /// φ(s) = Σ α_n n^{−s} in theorem variables.
    pub phi_ref: LSeriesRef,
    /// ψ(s) = Σ β_n n^{−s} in theorem variables.
    pub psi_ref: LSeriesRef,
    pub variable_map: VariableMap,
    pub self_dual: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Side {
    Phi,
    Psi,
}

impl HeckeSignature {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.gamma.norm() == 0.0 || !self.gamma.is_finite() {
            return Err(Error::Domain("gamma must be a nonzero finite number".into()));
        }
        if self.variable_map.t1 == 0.0 {
            return Err(Error::Domain("variable map is not invertible (t1 = 0)".into()));
        }
        if self.self_dual {
            if self.alpha_seq != self.beta_seq {
                return Err(Error::Domain("self-dual signature with distinct sequences".into()));
            }
            if self.gamma != C64::new(1.0, 0.0) && self.gamma != C64::new(-1.0, 0.0) {
                return Err(Error::Domain(format!("self-dual signature needs gamma = ±1, got {}", self.gamma)));
            }
        }
        Ok(())
    }

    pub fn seq(&self, side: Side) -> &CoefficientSeq {
        match side {
            Side::Phi => &self.alpha_seq,
            Side::Psi => &self.beta_seq,
        }
    }

    pub fn lref(&self, side: Side) -> &LSeriesRef {
        match side {
            Side::Phi => &self.phi_ref,
            Side::Psi => &self.psi_ref,
        }
    }

    /// 2π/λ
    pub fn scale(&self) -> f64 {
        2.0 * PI / self.lambda
    }
}

/// The Dirichlet series of one side at s, theorem variables.
pub fn dirichlet_series(sig: &HeckeSignature, side: Side, s: C64) -> Result<C64> {
    let residue = residue_at_k(sig, side);
    if residue != C64::new(0.0, 0.0) && (s - sig.k).norm() < 1e-12 {
        return Err(Error::PoleAt(s));
    }
    Ok(sig.lref(side).evaluate(s)?.value)
}

/// Φ(s) = (2π/λ)^{−s} Γ(s) φ(s), or Ψ for the other side.
pub fn completed_transform(sig: &HeckeSignature, side: Side, s: C64) -> Result<C64> {
    let g = gamma(s)?;
    let l = dirichlet_series(sig, side, s)?;
    Ok((-s * sig.scale().ln()).exp() * g * l)
}

/// |Φ(s) − γΨ(k−s)| / (1 + |Φ(s)|).
pub fn functional_equation_residual(sig: &HeckeSignature, s: C64) -> Result<f64> {
    let lhs = completed_transform(sig, Side::Phi, s)?;
    let rhs = sig.gamma * completed_transform(sig, Side::Psi, C64::new(sig.k, 0.0) - s)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// res φ(k) = (2π/λ)^k γ β₀/Γ(k) and res ψ(k) = (2π/λ)^k α₀/(γ Γ(k)).
pub fn residue_at_k(sig: &HeckeSignature, side: Side) -> C64 {
    let zero = C64::new(0.0, 0.0);
    let (c0, g) = match side {
        Side::Phi => (sig.beta_seq.alpha0, sig.gamma),
        Side::Psi => (sig.alpha_seq.alpha0, sig.gamma.inv()),
    };
    if c0 == zero {
        return zero;
    }
    let gk = gamma(C64::new(sig.k, 0.0)).unwrap_or(C64::new(f64::INFINITY, 0.0));
    c0 * g * sig.scale().powf(sig.k) / gk
}

/// Σ_{n>N} C n^c e^{−an}, bounded geometrically; infinite when the ratio
/// test has not kicked in yet.
fn q_tail_bound(seq: &CoefficientSeq, a: f64, n: usize) -> f64 {
    let m = n as f64 + 1.0;
    let c = seq.growth_exponent;
    let r = (1.0 + 1.0 / m).powf(c) * (-a).exp();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    seq.growth_constant * (c * m.ln() - a * m).exp() / (1.0 - r)
}

const Q_TAIL_REL: f64 = 1e-16;
const Q_MAX_TERMS: usize = 1 << 17;

/// f(iy) = α₀ + Σ_{n≤N} α_n e^{−2πny/λ}, with the tail bound, the size
/// of the leading term and Σ|terms|.
fn q_expansion(seq: &CoefficientSeq, lambda: f64, y: f64, n: usize) -> Result<QSum> {
    let a = 2.0 * PI * y / lambda;
    let table = seq.table(n)?;
    let mut acc = NeumaierSum::new();
    let mut leading: f64 = 0.0;
    let mut magnitude = 0.0;
    for (i, c) in table.iter().enumerate() {
        let t = if i == 0 { *c } else { *c * (-a * i as f64).exp() };
        leading = leading.max(t.norm());
        magnitude += t.norm();
        acc.add(t);
    }
    Ok(QSum { value: acc.value(), tail: q_tail_bound(seq, a, n), leading, magnitude })
}

struct QSum {
    value: C64,
    tail: f64,
    leading: f64,
    magnitude: f64,
}

/// Cutoff for which both q-expansion tails fall below 1e-16 of their
/// leading terms.
pub fn modular_cutoff(sig: &HeckeSignature, y: f64) -> Result<usize> {
    let mut n = 16;
    loop {
        let mut ok = true;
        for (seq, yy) in [(&sig.alpha_seq, y), (&sig.beta_seq, 1.0 / y)] {
            let a = 2.0 * PI * yy / sig.lambda;
            let lead =
                seq.table(n)?.iter().enumerate().map(|(i, c)| c.norm() * (-a * i as f64).exp()).fold(0.0, f64::max);
            ok &= q_tail_bound(seq, a, n) < Q_TAIL_REL * lead;
        }
        if ok {
            return Ok(n);
        }
        if n >= Q_MAX_TERMS {
            return Err(Error::TailTooLarge(format!("no cutoff ≤ {Q_MAX_TERMS} reaches the tail bound at y = {y}")));
        }
        n *= 2;
    }
}

/// The two sides f_α(iy) and γ y^{−k} f_β(i/y), each with the sum of the
/// magnitudes of its terms.
pub fn modular_sides(sig: &HeckeSignature, y: f64, n: Option<usize>) -> Result<[(C64, f64); 2]> {
    if !(0.25..=4.0).contains(&y) {
        return Err(Error::Domain(format!("y = {y} outside [1/4, 4]")));
    }
    let n = match n {
        Some(n) => n,
        None => modular_cutoff(sig, y)?,
    };
    let a = q_expansion(&sig.alpha_seq, sig.lambda, y, n)?;
    let b = q_expansion(&sig.beta_seq, sig.lambda, 1.0 / y, n)?;
    if a.tail > Q_TAIL_REL * a.leading || b.tail > Q_TAIL_REL * b.leading {
        return Err(Error::TailTooLarge(format!(
            "N = {n} leaves tails {:.3e}, {:.3e} against leading terms {:.3e}, {:.3e}",
            a.tail, b.tail, a.leading, b.leading
        )));
    }
    let f = sig.gamma * y.powf(-sig.k);
    Ok([(a.value, a.magnitude), (f * b.value, f.norm() * b.magnitude)])
}

/// |f_α(iy) − γ y^{−k} f_β(i/y)| relative to the term magnitudes of the two
/// q-expansions, both truncated at N terms (chosen automatically when `n` is
/// None). Measuring against term magnitudes rather than values keeps the
/// residual meaningful at zeros of the form, e.g. E₆(i) = 0.
pub fn modular_relation_residual(sig: &HeckeSignature, y: f64, n: Option<usize>) -> Result<f64> {
    let [(l, ml), (r, mr)] = modular_sides(sig, y, n)?;
    let scale = ml.max(mr);
    Ok(if scale == 0.0 { 0.0 } else { (l - r).norm() / scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_completed_transform_at_one() {
        let sig = lookup("theta_riemann").unwrap().signature.clone();
        let v = completed_transform(&sig, Side::Phi, C64::new(1.0, 0.0)).unwrap();
        // π^{−1} ζ(2) = π/6
        assert!((v.re - PI / 6.0).abs() < 1e-14 && v.im == 0.0, "{v}");
    }

    #[test]
    fn delta_completed_transform_is_finite_and_real() {
        let sig = lookup("delta-ramanujan").unwrap().signature.clone();
        let v = completed_transform(&sig, Side::Phi, C64::new(6.0, 0.0)).unwrap();
        assert!(v.is_finite() && v.re > 0.0);
        assert!(v.im.abs() < 1e-14 * v.re);
    }

    #[test]
    fn residues() {
        let theta = &lookup("theta_riemann").unwrap().signature;
        assert!((residue_at_k(theta, Side::Phi) - C64::new(0.5, 0.0)).norm() < 1e-15);
        let delta = &lookup("delta_ramanujan").unwrap().signature;
        assert_eq!(residue_at_k(delta, Side::Phi), C64::new(0.0, 0.0));
        let qi = &lookup("dedekind_qi").unwrap().signature;
        assert!((residue_at_k(qi, Side::Phi).re - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn modular_examples() {
        let delta = &lookup("delta_ramanujan").unwrap().signature;
        assert!(modular_relation_residual(delta, 2.0, Some(60)).unwrap() <= 1e-12);
        let theta = &lookup("theta_riemann").unwrap().signature;
        assert!(modular_relation_residual(theta, 2.0, Some(40)).unwrap() <= 1e-12);
        assert_eq!(modular_relation_residual(theta, 1.0, None).unwrap(), 0.0);
        assert!(matches!(modular_relation_residual(theta, 2.0, Some(3)), Err(Error::TailTooLarge(_))));
        assert!(matches!(modular_relation_residual(theta, 5.0, None), Err(Error::Domain(_))));
    }

    #[test]
    fn self_dual_fixed_point() {
        for inst in registry().iter().filter(|i| i.signature.self_dual && i.signature.gamma == C64::new(1.0, 0.0)) {
            let s = C64::new(inst.signature.k / 2.0, 0.0);
            let r = functional_equation_residual(&inst.signature, s).unwrap();
            assert!(r < 1e-14, "{}: {r}", inst.name);
        }
    }

    #[test]
    fn variable_map_inverts() {
        let m = VariableMap { t0: 1.0, t1: 2.0 };
        let u = C64::new(0.7, -0.3);
        assert!((m.to_corollary(m.to_theorem(u)) - u).norm() < 1e-15);
    }
}
