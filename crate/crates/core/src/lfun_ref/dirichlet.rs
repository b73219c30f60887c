//! Dirichlet L-functions through the Hurwitz decomposition.

use super::zeta::{euler_maclaurin, DEFAULT_CUTOFF, DEFAULT_TERMS};
use super::LValue;
use crate::arithmetic::DirichletCharacter;
use crate::numerics::NeumaierSum;
use crate::{Error, Result, C64};

/// L(s, χ) = q^{−s} Σ_a χ(a) ζ(s, a/q). For non-principal χ the Hurwitz
/// poles cancel, so the pole-free parts are summed and s = 1 is allowed.
pub fn dirichlet_l_value(chi: &DirichletCharacter, s: C64) -> Result<LValue> {
    let principal = chi.is_principal();
    if principal && (s - 1.0).norm() < 1e-10 {
        return Err(Error::PoleAt(s));
    }
    let q = chi.modulus;
    let mut acc = NeumaierSum::new();
    let mut err = 0.0;
    for a in 1..=q {
        let c = chi.eval_u(a);
        if c == C64::new(0.0, 0.0) {
            continue;
        }
        let h = euler_maclaurin(s, a as f64 / q as f64, DEFAULT_CUTOFF, DEFAULT_TERMS, !principal);
        acc.add(c * h.value);
        err += c.norm() * h.error_estimate;
    }
    let scale = (-s * (q as f64).ln()).exp();
    Ok(LValue { value: acc.value() * scale, error_estimate: err * scale.norm() })
}

pub fn dirichlet_l(chi: &DirichletCharacter, s: C64) -> Result<C64> {
    dirichlet_l_value(chi, s).map(|v| v.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        let chi4 = DirichletCharacter::from_kronecker(-4);
        let catalan = 0.915_965_594_177_219_015_05;
        assert!((dirichlet_l(&chi4, C64::new(2.0, 0.0)).unwrap().re - catalan).abs() < 1e-14);
        assert!((dirichlet_l(&chi4, C64::new(1.0, 0.0)).unwrap().re - PI / 4.0).abs() < 1e-14);
        let chi3 = DirichletCharacter::from_kronecker(-3);
        let want = PI / (3.0 * 3f64.sqrt());
        assert!((dirichlet_l(&chi3, C64::new(1.0, 0.0)).unwrap().re - want).abs() < 1e-14);
    }

    #[test]
    fn catalan_from_alternating_series() {
        // Σ (−1)^n/(2n+1)² summed in pairs with an Euler tail correction
        let mut acc = 0.0f64;
        let n = 200_000;
        for j in (0..n).rev() {
            let x = 2.0 * j as f64 + 1.0;
            acc += if j % 2 == 0 { 1.0 } else { -1.0 } / (x * x);
        }
        let x = 2.0 * n as f64 + 1.0;
        acc += 0.5 / (x * x); // n is even, next term is positive; average the partial sums
        let chi4 = DirichletCharacter::from_kronecker(-4);
        assert!((dirichlet_l(&chi4, C64::new(2.0, 0.0)).unwrap().re - acc).abs() < 1e-10);
    }

    #[test]
    fn principal_pole() {
        let chi = crate::arithmetic::character_group(5).remove(0);
        assert!(matches!(dirichlet_l(&chi, C64::new(1.0, 0.0)), Err(Error::PoleAt(_))));
        // principal χ mod 5 gives (1 − 5^{−s}) ζ(s)
        let s = C64::new(2.5, 0.3);
        let want = (C64::new(1.0, 0.0) - (-s * 5f64.ln()).exp()) * super::super::zeta::riemann_zeta(s).unwrap();
        assert!((dirichlet_l(&chi, s).unwrap() - want).norm() < 1e-14);
    }
}
