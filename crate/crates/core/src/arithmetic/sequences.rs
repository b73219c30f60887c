//! Coefficient sequences α_n of the Dirichlet series in the registry.

use super::characters::DirichletCharacter;
use super::divisor_sigma;
use super::fields::{ideal_count, ideal_count_table, ImagQuadField};
use super::forms::QuadraticForm;
use super::tau::{ramanujan_tau, tau_table};
use crate::numerics::bernoulli;
use crate::{Result, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum SeqKind {
    /// α_n = 1
    Ones,
    /// α_{m²} = 1, zero off squares
    ThetaSquares,
    /// α_{m²} = χ(m)
    CharacterSquares { chi: DirichletCharacter },
    /// α_{m²} = m·χ(m)
    CharacterSquaresWeighted { chi: DirichletCharacter },
    /// α_n = τ(n)
    RamanujanTau,
    /// α_n = −(2k/B_k)·σ_{k−1}(n)
    Eisenstein { k: u32 },
    /// α_n = r_Q(n)
    RepCount { form: QuadraticForm },
    /// α_n = v_K(n)
    IdealCount { field: ImagQuadField },
    /// α_n = values[n−1], zero beyond the table
    Custom { values: Vec<C64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeq {
    pub kind: SeqKind,
    pub alpha0: C64,
    /// Exponent c with |α_n| ≤ C·n^c, used for truncation estimates.
    pub growth_exponent: f64,
    /// The constant C going with `growth_exponent`.
    pub growth_constant: f64,
}

/// −2k/B_k exactly.
pub fn eisenstein_normalizer(k: u32) -> BigRational {
    let b = bernoulli(k).expect("eisenstein weight must be even, 4 ≤ k ≤ 60");
    -BigRational::from_integer(BigInt::from(2 * k)) / b
}

fn is_square(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r * r == n).then_some(r)
}

impl CoefficientSeq {
    pub fn ones() -> Self {
        CoefficientSeq { kind: SeqKind::Ones, alpha0: C64::new(0.0, 0.0), growth_exponent: 0.01, growth_constant: 1.0 }
    }

    pub fn theta_squares(alpha0: C64) -> Self {
        CoefficientSeq { kind: SeqKind::ThetaSquares, alpha0, growth_exponent: 0.01, growth_constant: 1.0 }
    }

    pub fn character_squares(chi: DirichletCharacter) -> Self {
        CoefficientSeq {
            kind: SeqKind::CharacterSquares { chi },
            alpha0: C64::new(0.0, 0.0),
            growth_exponent: 0.01,
            growth_constant: 1.0,
        }
    }

    pub fn character_squares_weighted(chi: DirichletCharacter) -> Self {
        CoefficientSeq {
            kind: SeqKind::CharacterSquaresWeighted { chi },
            alpha0: C64::new(0.0, 0.0),
            growth_exponent: 0.5,
            growth_constant: 1.0,
        }
    }

    /// c = 5.51 (Deligne plus ε); the weight-based c = k of the cusp-form
    /// statement is never used for truncation.
    pub fn ramanujan_tau() -> Self {
        CoefficientSeq {
            kind: SeqKind::RamanujanTau,
            alpha0: C64::new(0.0, 0.0),
            growth_exponent: 5.51,
            growth_constant: 4.0,
        }
    }

    pub fn eisenstein(k: u32) -> Self {
        let norm = eisenstein_normalizer(k).to_f64().unwrap_or(f64::NAN);
        CoefficientSeq {
            kind: SeqKind::Eisenstein { k },
            alpha0: C64::new(1.0, 0.0),
            growth_exponent: k as f64 - 1.0 + 0.01,
            growth_constant: 1.25 * norm.abs(),
        }
    }

    pub fn rep_count(form: QuadraticForm) -> Self {
        let m = form.dimension() as f64;
        CoefficientSeq {
            kind: SeqKind::RepCount { form },
            alpha0: C64::new(1.0, 0.0),
            growth_exponent: m / 2.0 - 1.0 + 0.01,
            growth_constant: 256.0,
        }
    }

    pub fn ideal_count(field: ImagQuadField) -> Self {
        let alpha0 = C64::new(field.class_number as f64 / field.unit_count as f64, 0.0);
        CoefficientSeq { kind: SeqKind::IdealCount { field }, alpha0, growth_exponent: 0.01, growth_constant: 64.0 }
    }

    pub fn custom(values: Vec<C64>, alpha0: C64, growth_exponent: f64, growth_constant: f64) -> Self {
        CoefficientSeq { kind: SeqKind::Custom { values }, alpha0, growth_exponent, growth_constant }
    }

    /// α_n is zero unless n is a perfect square.
    pub fn is_square_supported(&self) -> bool {
        matches!(
            self.kind,
            SeqKind::ThetaSquares | SeqKind::CharacterSquares { .. } | SeqKind::CharacterSquaresWeighted { .. }
        )
    }

    /// Short family name used in reports and the CLI.
    pub fn family(&self) -> String {
        match &self.kind {
            SeqKind::Ones => "ones".into(),
            SeqKind::ThetaSquares => "theta-squares".into(),
            SeqKind::CharacterSquares { chi } => format!("character-squares[{}]", chi.label),
            SeqKind::CharacterSquaresWeighted { chi } => format!("character-squares-weighted[{}]", chi.label),
            SeqKind::RamanujanTau => "tau".into(),
            SeqKind::Eisenstein { k } => format!("eisenstein-{k}"),
            SeqKind::RepCount { form } => format!("rep-count{:?}", form.gram),
            SeqKind::IdealCount { field } => format!("ideal-count[{}]", field.discriminant),
            SeqKind::Custom { values } => format!("custom[{}]", values.len()),
        }
    }

    /// Exact value when the family is integer valued.
    pub fn exact_at(&self, n: u64) -> Option<BigRational> {
        let int = |x: i128| Some(BigRational::from_integer(BigInt::from(x)));
        match &self.kind {
            SeqKind::Ones => int(1),
            SeqKind::ThetaSquares => int(is_square(n).is_some() as i128),
            SeqKind::RamanujanTau => ramanujan_tau(n).ok().and_then(int),
            SeqKind::Eisenstein { k } => {
                let sigma: BigInt = super::divisors(n).into_iter().map(|d| BigInt::from(d).pow(k - 1)).sum();
                Some(eisenstein_normalizer(*k) * BigRational::from_integer(sigma))
            }
            SeqKind::RepCount { form } => form.rep_count_table(n).ok().and_then(|t| int(t[n as usize] as i128)),
            SeqKind::IdealCount { field } => int(ideal_count(field, n) as i128),
            SeqKind::CharacterSquares { chi } | SeqKind::CharacterSquaresWeighted { chi } if chi.is_real() => {
                let v = self.value_at(n);
                int(v.re as i128)
            }
            _ => None,
        }
    }

    /// α_n for n ≥ 1 (α_0 for n = 0).
    pub fn value_at(&self, n: u64) -> C64 {
        if n == 0 {
            return self.alpha0;
        }
        let zero = C64::new(0.0, 0.0);
        match &self.kind {
            SeqKind::Ones => C64::new(1.0, 0.0),
            SeqKind::ThetaSquares => is_square(n).map_or(zero, |_| C64::new(1.0, 0.0)),
            SeqKind::CharacterSquares { chi } => is_square(n).map_or(zero, |m| chi.eval_u(m)),
            SeqKind::CharacterSquaresWeighted { chi } => is_square(n).map_or(zero, |m| chi.eval_u(m) * m as f64),
            SeqKind::RamanujanTau => C64::new(ramanujan_tau(n).map(|t| t as f64).unwrap_or(f64::NAN), 0.0),
            SeqKind::Eisenstein { k } => {
                let norm = eisenstein_normalizer(*k).to_f64().unwrap_or(f64::NAN);
                divisor_sigma(C64::new(*k as f64 - 1.0, 0.0), n) * norm
            }
            SeqKind::RepCount { form } => {
                C64::new(form.rep_count_table(n).map(|t| t[n as usize] as f64).unwrap_or(f64::NAN), 0.0)
            }
            SeqKind::IdealCount { field } => C64::new(ideal_count(field, n) as f64, 0.0),
            SeqKind::Custom { values } => values.get(n as usize - 1).copied().unwrap_or(zero),
        }
    }

    /// α_0, α_1, …, α_n in one pass (index i holds α_i).
    pub fn table(&self, n: usize) -> Result<Vec<C64>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.alpha0);
        match &self.kind {
            SeqKind::RamanujanTau => {
                let t = tau_table(n)?;
                out.extend(t[..n].iter().map(|&x| C64::new(x as f64, 0.0)));
            }
            SeqKind::RepCount { form } => {
                let t = form.rep_count_table(n as u64)?;
                out.extend(t[1..].iter().map(|&x| C64::new(x as f64, 0.0)));
            }
            SeqKind::IdealCount { field } => {
                out.extend(ideal_count_table(field, n).into_iter().map(|x| C64::new(x as f64, 0.0)));
            }
            SeqKind::Eisenstein { k } => {
                let norm = eisenstein_normalizer(*k).to_f64().unwrap_or(f64::NAN);
                let mut sigma = vec![0.0f64; n + 1];
                for d in 1..=n {
                    let p = (d as f64).powi(*k as i32 - 1);
                    let mut m = d;
                    while m <= n {
                        sigma[m] += p;
                        m += d;
                    }
                }
                out.extend(sigma[1..].iter().map(|&s| C64::new(norm * s, 0.0)));
            }
            _ => out.extend((1..=n as u64).map(|i| self.value_at(i))),
        }
        Ok(out)
    }
}
