//! The registered signatures. Built once, read-only afterwards.

use super::{HeckeSignature, VariableMap};
use crate::arithmetic::{
    character_group, gauss_sum, CoefficientSeq, DirichletCharacter, ImagQuadField, Parity, QuadraticForm,
};
use crate::lfun_ref::{LKind, LSeriesRef};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryInstance {
    pub name: String,
    pub signature: HeckeSignature,
    pub notes: String,
}

/// Lowercase, with '-' read as '_'.
pub fn normalize_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Snap γ to ±1 when it is real up to rounding; keeps self-dual checks exact.
fn snap(g: C64) -> C64 {
    for t in [1.0, -1.0] {
        if (g - t).norm() < 1e-12 {
            return C64::new(t, 0.0);
        }
    }
    g
}

/// ζ(2s) with θ(τ)/2 = 1/2 + Σ_{m≥1} q^{m²}, signature (2, 1/2, 1).
pub fn theta_riemann() -> HeckeSignature {
    let seq = CoefficientSeq::theta_squares(C64::new(0.5, 0.0));
    let phi = LSeriesRef::new(LKind::RiemannZeta, 2.0, 0.0);
    HeckeSignature {
        lambda: 2.0,
        k: 0.5,
        gamma: one(),
        alpha_seq: seq.clone(),
        beta_seq: seq,
        phi_ref: phi.clone(),
        psi_ref: phi,
        variable_map: VariableMap { t0: 0.0, t1: 2.0 },
        self_dual: true,
    }
}

/// L(2s, χ) for primitive even χ mod q: signature (2q, 1/2, τ(χ)/√q).
pub fn dirichlet_even(chi: &DirichletCharacter) -> Result<HeckeSignature> {
    if chi.parity != Parity::Even || !chi.primitive || chi.is_principal() {
        return Err(Error::Domain(format!("{} is not a primitive even character", chi.label)));
    }
    let q = chi.modulus as f64;
    let gamma = snap(gauss_sum(chi) / q.sqrt());
    let bar = chi.conj();
    Ok(HeckeSignature {
        lambda: 2.0 * q,
        k: 0.5,
        gamma,
        alpha_seq: CoefficientSeq::character_squares(chi.clone()),
        beta_seq: CoefficientSeq::character_squares(bar.clone()),
        phi_ref: LSeriesRef::new(LKind::DirichletL { chi: chi.clone() }, 2.0, 0.0),
        psi_ref: LSeriesRef::new(LKind::DirichletL { chi: bar }, 2.0, 0.0),
        variable_map: VariableMap { t0: 0.0, t1: 2.0 },
        self_dual: chi.is_real(),
    })
}

/// L(2s−1, χ) for primitive odd χ mod q: signature (2q, 3/2, τ(χ)/(i√q)).
pub fn dirichlet_odd(chi: &DirichletCharacter) -> Result<HeckeSignature> {
    if chi.parity != Parity::Odd || !chi.primitive {
        return Err(Error::Domain(format!("{} is not a primitive odd character", chi.label)));
    }
    let q = chi.modulus as f64;
    let gamma = snap(gauss_sum(chi) / C64::new(0.0, q.sqrt()));
    let bar = chi.conj();
    Ok(HeckeSignature {
        lambda: 2.0 * q,
        k: 1.5,
        gamma,
        alpha_seq: CoefficientSeq::character_squares_weighted(chi.clone()),
        beta_seq: CoefficientSeq::character_squares_weighted(bar.clone()),
        phi_ref: LSeriesRef::new(LKind::DirichletL { chi: chi.clone() }, 2.0, -1.0),
        psi_ref: LSeriesRef::new(LKind::DirichletL { chi: bar }, 2.0, -1.0),
        variable_map: VariableMap { t0: 1.0, t1: 2.0 },
        self_dual: chi.is_real(),
    })
}

/// L(s, Δ), signature (1, 12, 1).
pub fn delta_ramanujan() -> HeckeSignature {
    let seq = CoefficientSeq::ramanujan_tau();
    let phi = LSeriesRef::plain(LKind::RamanujanL);
    HeckeSignature {
        lambda: 1.0,
        k: 12.0,
        gamma: one(),
        alpha_seq: seq.clone(),
        beta_seq: seq,
        phi_ref: phi.clone(),
        psi_ref: phi,
        variable_map: VariableMap::IDENTITY,
        self_dual: true,
    }
}

/// E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ, signature (1, k, (−1)^{k/2}).
pub fn eisenstein(k: u32) -> Result<HeckeSignature> {
    if k < 4 || k % 2 == 1 || k > 60 {
        return Err(Error::OutOfRange(format!("Eisenstein weight {k} (need even 4 ≤ k ≤ 60)")));
    }
    let seq = CoefficientSeq::eisenstein(k);
    let phi = LSeriesRef::plain(LKind::EisensteinL { k });
    Ok(HeckeSignature {
        lambda: 1.0,
        k: k as f64,
        gamma: if k.is_multiple_of(4) { one() } else { -one() },
        alpha_seq: seq.clone(),
        beta_seq: seq,
        phi_ref: phi.clone(),
        psi_ref: phi,
        variable_map: VariableMap::IDENTITY,
        self_dual: true,
    })
}

/// Z(s; Q) paired with Z(s; Q*), Q* having Gram matrix 4M⁻¹; signature
/// (2, m/2, D^{−1/2}) with D = det(M/2).
pub fn epstein(form: &QuadraticForm) -> Result<HeckeSignature> {
    let dual = form.inverse()?;
    let self_dual = dual == *form;
    let gamma = snap(C64::new(form.discriminant().powf(-0.5), 0.0));
    Ok(HeckeSignature {
        lambda: 2.0,
        k: form.dimension() as f64 / 2.0,
        gamma,
        alpha_seq: CoefficientSeq::rep_count(form.clone()),
        beta_seq: CoefficientSeq::rep_count(dual.clone()),
        phi_ref: LSeriesRef::plain(LKind::Epstein { form: form.clone() }),
        psi_ref: LSeriesRef::plain(LKind::Epstein { form: dual }),
        variable_map: VariableMap::IDENTITY,
        self_dual,
    })
}

/// ζ_K(s) for imaginary quadratic K, signature (√|d|, 1, 1), α₀ = h/w.
pub fn dedekind(field: ImagQuadField) -> HeckeSignature {
    let seq = CoefficientSeq::ideal_count(field);
    let phi = LSeriesRef::plain(LKind::Dedekind { field });
    HeckeSignature {
        lambda: (field.discriminant.unsigned_abs() as f64).sqrt(),
        k: 1.0,
        gamma: one(),
        alpha_seq: seq.clone(),
        beta_seq: seq,
        phi_ref: phi.clone(),
        psi_ref: phi,
        variable_map: VariableMap::IDENTITY,
        self_dual: true,
    }
}

/// First primitive odd character mod 5 with complex values.
fn odd_complex_mod5() -> DirichletCharacter {
    character_group(5)
        .into_iter()
        .find(|c| c.parity == Parity::Odd && c.primitive && !c.is_real())
        .expect("mod 5 has complex odd characters")
}

fn fail<T>(e: Error) -> T {
    panic!("registry construction: {e}")
}

fn build() -> Vec<RegistryInstance> {
    let inst = |name: &str, signature: HeckeSignature, notes: &str| RegistryInstance {
        name: name.to_string(),
        signature,
        notes: notes.to_string(),
    };
    let mut out = vec![
        inst(
            "theta_riemann",
            theta_riemann(),
            "φ(s) = ζ(2s); α₀ = 1/2 is forced by res_{s=1/2} ζ(2s) = 1/2; corollary u maps to u/2",
        ),
        inst(
            "dirichlet_even_q5",
            dirichlet_even(&DirichletCharacter::from_kronecker(5)).unwrap_or_else(fail),
            "Legendre symbol mod 5; φ(s) = L(2s, χ); corollary u maps to u/2",
        ),
        inst(
            "dirichlet_odd_q4",
            dirichlet_odd(&DirichletCharacter::from_kronecker(-4)).unwrap_or_else(fail),
            "χ₋₄; φ(s) = L(2s−1, χ); corollary u maps to (u+1)/2",
        ),
        inst(
            "dirichlet_odd_q3",
            dirichlet_odd(&DirichletCharacter::from_kronecker(-3)).unwrap_or_else(fail),
            "χ₋₃; φ(s) = L(2s−1, χ); corollary u maps to (u+1)/2",
        ),
        inst(
            "dirichlet_odd_q5_complex",
            dirichlet_odd(&odd_complex_mod5()).unwrap_or_else(fail),
            "quartic odd character mod 5; partner series uses the conjugate character",
        ),
        inst("delta_ramanujan", delta_ramanujan(), "cusp form Δ; α₀ = 0 so both residues vanish"),
    ];
    for k in [4, 6] {
        out.push(inst(
            &format!("eisenstein_{k}"),
            eisenstein(k).unwrap_or_else(fail),
            "normalized so α₀ = 1; φ(s) = −(2k/B_k) ζ(s) ζ(s−k+1)",
        ));
    }
    out.push(inst(
        "epstein_selfdual",
        epstein(&QuadraticForm::sum_of_squares(2)).unwrap_or_else(fail),
        "x² + y²; Z(s) = 4 ζ(s) β(s)",
    ));
    out.push(inst(
        "epstein_sum4",
        epstein(&QuadraticForm::sum_of_squares(4)).unwrap_or_else(fail),
        "sum of four squares; Z(s) = 8 (1 − 4^{1−s}) ζ(s) ζ(s−1)",
    ));
    for (name, d) in [("dedekind_qi", -4), ("dedekind_q3", -3), ("dedekind_q7", -7)] {
        let field = ImagQuadField::new(d).unwrap_or_else(fail);
        out.push(inst(name, dedekind(field), "ζ_K = ζ · L(s, χ_d); α₀ = h/w"));
    }
    for i in &out {
        i.signature.validate().unwrap_or_else(fail);
    }
    out
}

static REGISTRY: OnceLock<Vec<RegistryInstance>> = OnceLock::new();

pub fn registry() -> &'static [RegistryInstance] {
    REGISTRY.get_or_init(build)
}

pub fn lookup(name: &str) -> Result<&'static RegistryInstance> {
    let key = normalize_name(name);
    registry()
        .iter()
        .find(|i| i.name == key)
        .ok_or_else(|| Error::Unknown(format!("no registered instance named {name:?}")))
}
