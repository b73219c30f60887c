//! Epstein zeta by direct lattice summation with a certified tail.

use super::LValue;
use crate::arithmetic::QuadraticForm;
use crate::numerics::NeumaierSum;
use crate::{Error, Result, C64};

fn binomial(m: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// Bound on |s|∫_N^∞ |P(x)| x^{−σ−1} dx with |P(x)| ≤ κ[(√x+ρ)^m − x^{m/2}].
fn tail_error(q: &QuadraticForm, s: C64, n: f64) -> f64 {
    let m = q.dimension();
    let kappa = q.unit_ball_volume() / q.discriminant().sqrt();
    let rho = q.cube_radius();
    let mut acc = 0.0;
    for j in 1..=m {
        let e = (m - j) as f64 / 2.0;
        acc += binomial(m, j) * rho.powi(j as i32) * n.powf(e - s.re) / (s.re - e);
    }
    s.norm() * kappa * acc
}

/// Z(s; Q) = Σ_{v≠0} Q(v)^{−s} for Re s > m/2 + 1/4.
///
/// Partial sum over Q(v) ≤ N, plus the volume term κ s N^{m/2−s}/(s−m/2)
/// minus A(N)N^{−s} (A counts lattice points with Q ≤ N, origin included,
/// and the 1 for the origin is subtracted). N is doubled until the bound on
/// the lattice-remainder integral is below `tol`.
pub fn epstein_z(q: &QuadraticForm, s: C64, tol: f64) -> Result<LValue> {
    let m = q.dimension() as f64;
    if s.re <= m / 2.0 + 0.25 {
        return Err(Error::Domain(format!("direct Epstein sum needs Re s > m/2 + 1/4 = {} (got {s})", m / 2.0 + 0.25)));
    }
    let mut n = 64.0f64;
    while tail_error(q, s, n) > tol {
        n *= 2.0;
        if q.point_estimate(n) > crate::arithmetic::forms::POINT_BUDGET {
            let nn = n / 2.0;
            let partial = sum_upto(q, s, nn as u64)?;
            return Err(Error::ToleranceNotMet { value: partial, estimate: tail_error(q, s, nn) });
        }
    }
    let value = sum_upto(q, s, n as u64)?;
    Ok(LValue { value, error_estimate: tail_error(q, s, n) + 1e-15 * value.norm() * n.log2() })
}

fn sum_upto(q: &QuadraticForm, s: C64, n: u64) -> Result<C64> {
    let t = q.rep_count_table(n)?;
    let mut acc = NeumaierSum::new();
    let mut a_n = 0u64;
    for (i, &c) in t.iter().enumerate() {
        a_n += c;
        if i > 0 && c != 0 {
            acc.add((-s * (i as f64).ln()).exp() * c as f64);
        }
    }
    let m = q.dimension() as f64;
    let nf = n as f64;
    let kappa = q.unit_ball_volume() / q.discriminant().sqrt();
    let n_s = (-s * nf.ln()).exp();
    acc.add(kappa * s * nf.powf(m / 2.0) * n_s / (s - m / 2.0));
    acc.add(-n_s * a_n as f64);
    Ok(acc.value())
}
