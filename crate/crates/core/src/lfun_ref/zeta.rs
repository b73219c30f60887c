//! Riemann and Hurwitz zeta by Euler–Maclaurin summation.

use super::LValue;
use crate::numerics::{bernoulli_f64, pow_neg, NeumaierSum};
use crate::{Error, Result, C64};

pub const DEFAULT_CUTOFF: usize = 50;
pub const DEFAULT_TERMS: usize = 15;

/// (e^w − 1)/w for |w| < 1e-3.
fn expm1_over(w: C64) -> C64 {
    C64::new(1.0, 0.0) + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
}

/// ζ(s, a), or ζ(s, a) − 1/(s−1) when `drop_pole` is set, with `cutoff`
/// explicit terms and Bernoulli corrections through B_{2·terms}.
pub fn euler_maclaurin(s: C64, a: f64, cutoff: usize, terms: usize, drop_pole: bool) -> LValue {
    let mut acc = NeumaierSum::new();
    let mut mag = 0.0;
    for j in 0..cutoff {
        let t = pow_neg(j as f64 + a, s);
        mag += t.norm();
        acc.add(t);
    }
    let x = cutoff as f64 + a;
    let lx = x.ln();
    let xs = pow_neg(x, s);
    let w = (1.0 - s) * lx;
    // x^{1−s}/(s−1) = −lx·e^w/w; written via expm1 so the pole can be removed
    let integral = match (drop_pole, w.norm() < 1e-3) {
        (true, true) => -lx * expm1_over(w),
        (true, false) => (x * xs - 1.0) / (s - 1.0),
        (false, _) => x * xs / (s - 1.0),
    };
    acc.add(integral);
    acc.add(xs * 0.5);
    mag += integral.norm() + 0.5 * xs.norm();
    let mut poch = s;
    let mut xp = xs / x;
    let mut fact = 2.0;
    let mut next = C64::new(0.0, 0.0);
    for j in 1..=terms + 1 {
        let t = poch * xp * (bernoulli_f64(2 * j as u32) / fact);
        if j > terms {
            next = t;
            break;
        }
        acc.add(t);
        mag += t.norm();
        let jj = 2.0 * j as f64;
        poch *= (s + jj - 1.0) * (s + jj);
        xp /= x * x;
        fact *= (jj + 1.0) * (jj + 2.0);
    }
    let tail_factor = (s + 2.0 * terms as f64 + 1.0).norm() / (s.re + 2.0 * terms as f64 + 1.0).max(1e-3);
    let value = acc.value();
    LValue { value, error_estimate: next.norm() * tail_factor + 8.0 * f64::EPSILON * (mag + value.norm()) }
}

fn check_pole(s: C64) -> Result<()> {
    if (s - 1.0).norm() < 1e-10 {
        Err(Error::PoleAt(s))
    } else {
        Ok(())
    }
}

/// ζ(s) with explicit Euler–Maclaurin parameters.
pub fn riemann_zeta_with(s: C64, cutoff: usize, terms: usize) -> Result<LValue> {
    check_pole(s)?;
    Ok(euler_maclaurin(s, 1.0, cutoff, terms, false))
}

/// ζ(s).
pub fn riemann_zeta(s: C64) -> Result<C64> {
    riemann_zeta_with(s, DEFAULT_CUTOFF, DEFAULT_TERMS).map(|v| v.value)
}

/// ζ(s, a) for a ∈ (0, 1].
pub fn hurwitz_zeta(s: C64, a: f64) -> Result<C64> {
    hurwitz_zeta_value(s, a).map(|v| v.value)
}

pub fn hurwitz_zeta_value(s: C64, a: f64) -> Result<LValue> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::OutOfRange(format!("Hurwitz parameter a = {a} outside (0, 1]")));
    }
    check_pole(s)?;
    Ok(euler_maclaurin(s, a, DEFAULT_CUTOFF, DEFAULT_TERMS, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn closed_forms() {
        assert!((riemann_zeta(c(2.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        assert!((riemann_zeta(c(4.0)).unwrap().re - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((hurwitz_zeta(c(2.0), 0.5).unwrap().re - PI * PI / 2.0).abs() < 1e-14);
        assert!((hurwitz_zeta(c(2.0), 1.0).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        assert!(matches!(riemann_zeta(c(1.0)), Err(Error::PoleAt(_))));
    }

    #[test]
    fn apery_from_doubled_parameters() {
        let a = riemann_zeta(c(3.0)).unwrap();
        let b = riemann_zeta_with(c(3.0), 100, 20).unwrap().value;
        assert!((a - b).norm() < 1e-15);
        assert!((a.re - 1.2020569031595942854).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_against_brute_force() {
        // Σ_{n<10⁶} (n+1/4)^{-3} plus the integral tail with midpoint correction
        let a = 0.25;
        let n = 1_000_000;
        let mut acc = NeumaierSum::new();
        for j in (0..n).rev() {
            acc.add(c((j as f64 + a).powi(-3)));
        }
        let x = n as f64 + a;
        let tail = 0.5 / (x * x) + 0.5 / (x * x * x);
        let oracle = acc.value().re + tail;
        let bound = 3.0 / x.powi(4);
        assert!((hurwitz_zeta(c(3.0), a).unwrap().re - oracle).abs() < 1e-9 + bound);
    }

    #[test]
    fn nontrivial_zero() {
        let z = riemann_zeta(C64::new(0.5, 14.134725141734693790)).unwrap();
        assert!(z.norm() < 1e-13);
    }
}
