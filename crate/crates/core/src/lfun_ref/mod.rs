//! Reference evaluators for the L-functions on the left-hand side of every
//! identity. None of them touches the Bessel-moment machinery.

pub mod dedekind;
pub mod dirichlet;
pub mod epstein;
pub mod ramanujan;
pub mod zeta;

pub use dedekind::{dedekind_coefficient_sum, dedekind_zeta};
pub use dirichlet::dirichlet_l;
pub use epstein::epstein_z;
pub use ramanujan::{ramanujan_l, ramanujan_l_mellin};
pub use zeta::{hurwitz_zeta, riemann_zeta};

use crate::arithmetic::sequences::eisenstein_normalizer;
use crate::arithmetic::{CoefficientSeq, DirichletCharacter, ImagQuadField, QuadraticForm};
use crate::numerics::NeumaierSum;
use crate::{Error, Result, C64};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A value together with an error estimate that over-covers the actual error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValue {
    pub value: C64,
    pub error_estimate: f64,
}

impl LValue {
    fn product(a: LValue, b: LValue) -> LValue {
        LValue {
            value: a.value * b.value,
            error_estimate: a.error_estimate * b.value.norm() + b.error_estimate * a.value.norm(),
        }
    }

    fn scaled(self, c: C64) -> LValue {
        LValue { value: self.value * c, error_estimate: self.error_estimate * c.norm() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum LKind {
    RiemannZeta,
    Hurwitz { a: f64 },
    DirichletL { chi: DirichletCharacter },
    Dedekind { field: ImagQuadField },
    Epstein { form: QuadraticForm },
    RamanujanL,
    EisensteinL { k: u32 },
    TruncatedDirichlet { seq: CoefficientSeq, terms: usize },
}

/// An L-function evaluated at an affine image of its argument:
/// `evaluate(s)` returns L(scale·s + shift).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LSeriesRef {
    pub kind: LKind,
    pub scale: f64,
    pub shift: f64,
    pub domain_note: String,
}

/// −(2k/B_k)·ζ(s)·ζ(s−k+1).
pub fn eisenstein_l(k: u32, s: C64) -> Result<C64> {
    eisenstein_l_value(k, s).map(|v| v.value)
}

fn eisenstein_l_value(k: u32, s: C64) -> Result<LValue> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::OutOfRange(format!("Eisenstein weight {k} (need even k ≥ 4)")));
    }
    let a = zeta::riemann_zeta_with(s, zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS)?;
    let b = zeta::riemann_zeta_with(s - (k as f64 - 1.0), zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS)?;
    let norm = eisenstein_normalizer(k).to_f64().unwrap_or(f64::NAN);
    Ok(LValue::product(a, b).scaled(C64::new(norm, 0.0)))
}

/// (e^w − 1)/w
fn exp_m1_over(w: C64) -> C64 {
    if w.norm() < 1e-3 {
        C64::new(1.0, 0.0) + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
    } else {
        (w.exp() - 1.0) / w
    }
}

fn sum_of_squares_dim(q: &QuadraticForm) -> Option<usize> {
    (*q == QuadraticForm::sum_of_squares(q.dimension())).then_some(q.dimension())
}

/// Σ_{n≤N} α_n n^{−s} with the tail bound C·N^{c+1−σ}/(σ−c−1).
pub fn truncated_dirichlet(seq: &CoefficientSeq, terms: usize, s: C64) -> Result<LValue> {
    let c = seq.growth_exponent;
    if s.re <= c + 1.0 {
        return Err(Error::Domain(format!("truncated series needs Re s > c+1 = {} (got {s})", c + 1.0)));
    }
    let t = seq.table(terms)?;
    let mut acc = NeumaierSum::new();
    for (n, a) in t.iter().enumerate().skip(1) {
        if *a != C64::new(0.0, 0.0) {
            acc.add(*a * (-s * (n as f64).ln()).exp());
        }
    }
    let n = terms as f64;
    let tail = seq.growth_constant * n.powf(c + 1.0 - s.re) / (s.re - c - 1.0);
    Ok(LValue { value: acc.value(), error_estimate: tail })
}

impl LSeriesRef {
    pub fn new(kind: LKind, scale: f64, shift: f64) -> Self {
        let domain_note = match &kind {
            LKind::RiemannZeta | LKind::Hurwitz { .. } | LKind::DirichletL { .. } | LKind::Dedekind { .. } => {
                "Euler–Maclaurin continuation; accurate for |Im| ≤ 100".to_string()
            }
            LKind::Epstein { form } if sum_of_squares_dim(form).is_some_and(|m| m == 2 || m == 4) => {
                "factorization through ζ and L(s, χ₋₄) or ζ(s−1); whole plane".to_string()
            }
            LKind::Epstein { form } => format!("direct lattice sum; Re s > {}", form.dimension() as f64 / 2.0 + 0.25),
            LKind::RamanujanL => "truncated series for Re s ≥ 7, Mellin integral of Δ elsewhere".to_string(),
            LKind::EisensteinL { .. } => "product of two Riemann zeta values".to_string(),
            LKind::TruncatedDirichlet { seq, .. } => format!("direct sum; Re s > {}", seq.growth_exponent + 1.0),
        };
        LSeriesRef { kind, scale, shift, domain_note }
    }

    pub fn plain(kind: LKind) -> Self {
        Self::new(kind, 1.0, 0.0)
    }

    /// L(scale·s + shift) with an error estimate.
    pub fn evaluate(&self, s: C64) -> Result<LValue> {
        self.evaluate_base(s * self.scale + self.shift)
    }

    fn evaluate_base(&self, s: C64) -> Result<LValue> {
        match &self.kind {
            LKind::RiemannZeta => zeta::riemann_zeta_with(s, zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS),
            LKind::Hurwitz { a } => zeta::hurwitz_zeta_value(s, *a),
            LKind::DirichletL { chi } => dirichlet::dirichlet_l_value(chi, s),
            LKind::Dedekind { field } => dedekind::dedekind_zeta_value(field, s),
            LKind::Epstein { form } => match sum_of_squares_dim(form) {
                Some(2) => {
                    let z = zeta::riemann_zeta_with(s, zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS)?;
                    let b = dirichlet::dirichlet_l_value(&DirichletCharacter::from_kronecker(-4), s)?;
                    Ok(LValue::product(z, b).scaled(C64::new(4.0, 0.0)))
                }
                Some(4) => {
                    // r_4(n) = 8σ(n) − 32σ(n/4) gives 8(1 − 4^{1−s}) ζ(s) ζ(s−1)
                    // (1 − 4^{1−s}) ζ(s) = (1 − 4^{1−s})(ζ(s) − 1/(s−1)) + ln 4 · (e^w − 1)/w,
                    // w = (1−s) ln 4, which stays finite through s = 1
                    let l4 = 4f64.ln();
                    let w = (1.0 - s) * l4;
                    let f = C64::new(1.0, 0.0) - w.exp();
                    let reg = zeta::euler_maclaurin(s, 1.0, zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS, true);
                    let a = LValue {
                        value: f * reg.value + l4 * exp_m1_over(w),
                        error_estimate: reg.error_estimate * f.norm(),
                    };
                    let b = zeta::riemann_zeta_with(s - 1.0, zeta::DEFAULT_CUTOFF, zeta::DEFAULT_TERMS)?;
                    Ok(LValue::product(a, b).scaled(C64::new(8.0, 0.0)))
                }
                _ => epstein::epstein_z(form, s, 1e-10),
            },
            LKind::RamanujanL => {
                if s.re >= 7.0 {
                    ramanujan::ramanujan_l(s, 1e-14)
                } else {
                    ramanujan::ramanujan_l_mellin(s)
                }
            }
            LKind::EisensteinL { k } => eisenstein_l_value(*k, s),
            LKind::TruncatedDirichlet { seq, terms } => truncated_dirichlet(seq, *terms, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_values() {
        let v = eisenstein_l(4, C64::new(6.0, 0.0)).unwrap();
        assert!((v.re - 293.49702012958227).abs() < 1e-11, "{v}");
        let seq = CoefficientSeq::eisenstein(4);
        let t = truncated_dirichlet(&seq, 20_000, C64::new(6.0, 0.0)).unwrap();
        assert!((t.value - v).norm() < 1e-6);
        for k in [4u32, 6, 8, 12] {
            let s = C64::new(k as f64 + 2.0, 0.0);
            let ratio = eisenstein_l(k, s).unwrap() / riemann_zeta(s).unwrap();
            let want = eisenstein_normalizer(k).to_f64().unwrap() * riemann_zeta(C64::new(3.0, 0.0)).unwrap();
            assert!((ratio - want).norm() < 1e-12 * want.norm());
        }
    }

    #[test]
    fn four_squares_factorization_matches_lattice_sum() {
        let r = LSeriesRef::plain(LKind::Epstein { form: QuadraticForm::sum_of_squares(4) });
        let s = C64::new(4.0, 0.5);
        let direct = epstein_z(&QuadraticForm::sum_of_squares(4), s, 1e-6).unwrap();
        let fact = r.evaluate(s).unwrap();
        assert!((direct.value - fact.value).norm() <= direct.error_estimate + 1e-12);
    }

    #[test]
    fn affine_argument() {
        let r = LSeriesRef::new(LKind::RiemannZeta, 2.0, 0.0);
        let v = r.evaluate(C64::new(1.0, 0.0)).unwrap().value;
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }
}
