//! L-function of Ramanujan's Δ.

use super::LValue;
use crate::arithmetic::tau::{tau_table, TAU_LIMIT};
use crate::numerics::quadrature::adaptive;
use crate::numerics::{ln_gamma, NeumaierSum};
use crate::{Error, Result, C64};
use std::f64::consts::PI;

/// Σ τ(n) n^{−s} truncated at N, for Re s ≥ 7. The tail is bounded by
/// 2Σ_{n>N} n^{5.51−σ} ≤ 2N^{6.51−σ}/(σ−6.51); N doubles from 64 up to 10⁵.
pub fn ramanujan_l(s: C64, tol: f64) -> Result<LValue> {
    if s.re < 7.0 {
        return Err(Error::Domain(format!("truncated L_τ needs Re s ≥ 7 (got {s})")));
    }
    let bound = |n: f64| 2.0 * n.powf(6.51 - s.re) / (s.re - 6.51);
    let mut n = 64usize;
    while bound(n as f64) > tol && n < TAU_LIMIT {
        n = (2 * n).min(TAU_LIMIT);
    }
    let t = tau_table(n)?;
    let mut acc = NeumaierSum::new();
    for (i, &tau) in t[..n].iter().enumerate() {
        acc.add((-s * ((i + 1) as f64).ln()).exp() * tau as f64);
    }
    let value = acc.value();
    let err = bound(n as f64);
    if err > tol {
        return Err(Error::ToleranceNotMet { value, estimate: err });
    }
    Ok(LValue { value, error_estimate: err + 1e-16 * value.norm() * n as f64 })
}

/// F(y) = Σ τ(n) e^{−2πny}, truncated once n^{5.51}e^{−2πny} < 1e−22.
fn delta_q_series(y: f64, t: &[i128]) -> f64 {
    let mut acc = 0.0;
    let mut comp = 0.0;
    for (i, &tau) in t.iter().enumerate() {
        let n = (i + 1) as f64;
        let e = (-2.0 * PI * n * y).exp();
        if n > 12.0 && n.powf(5.51) * e < 1e-22 {
            break;
        }
        let x = tau as f64 * e;
        let s = acc + x;
        comp += if f64::abs(acc) >= x.abs() { (acc - s) + x } else { (x - s) + acc };
        acc = s;
    }
    acc + comp
}

/// Lower limit of the Mellin integral; Δ's q-series value at y = 0.1 is
/// below 1e−15 and the integrand's contribution on (0, 0.1) is negligible.
const MELLIN_LOWER: f64 = 0.1;

/// L_τ(s) for any s from the Mellin transform
/// (2π)^{−s}Γ(s)L_τ(s) = ∫₀^∞ F(y) y^{s−1} dy, evaluated directly by
/// quadrature in log y. The functional equation is not used.
pub fn ramanujan_l_mellin(s: C64) -> Result<LValue> {
    let t = tau_table(200)?;
    // upper limit where y^σ e^{−2πy} is negligible
    let mut upper = 10.0f64;
    for _ in 0..20 {
        upper = (52.0 + (s.re.max(1.0)) * upper.ln()) / (2.0 * PI);
    }
    let f = |w: f64| {
        let y = w.exp();
        (s * w).exp() * delta_q_series(y, &t)
    };
    let r = adaptive(&f, MELLIN_LOWER.ln(), upper.ln(), 1e-16, 2000);
    let cut = delta_q_series(MELLIN_LOWER, &t).abs() * MELLIN_LOWER.powf(s.re) / s.re.max(0.1);
    let scale = (s * (2.0 * PI).ln() - ln_gamma(s)?).exp();
    let value = r.value * scale;
    Ok(LValue { value, error_estimate: (r.error_estimate + cut) * scale.norm() + 1e-15 * value.norm() })
}
