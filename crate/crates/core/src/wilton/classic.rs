//! Wilton's formula for ζ(u)ζ(v), the classically convergent ancestor of
//! the general identity.

use super::identity::{assemble, par_terms, residual_of, verdict, IdentityReport, TailDiagnostics};
use super::moments::MomentMode;
use super::series::SumStrategy;
use crate::arithmetic::divisor_sigma;
use crate::lfun_ref::zeta::riemann_zeta;
use crate::numerics::accel::wynn_epsilon;
use crate::numerics::quadrature::gauss_kronrod_31;
use crate::{Error, Result, C64};
use std::f64::consts::PI;

pub const WILTON_CLASSIC: &str = "wilton-classic";

const MAX_PANELS: usize = 4000;

/// ∫_{2πn}^∞ t^{−u−1} sin t dt, half-period panels summed with ε-acceleration.
pub fn sine_tail(u: C64, n: u64) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("sine tail needs n ≥ 1".into()));
    }
    if u.re <= -1.0 {
        return Err(Error::Domain(format!("sine tail diverges for ℜu ≤ −1 (got {u})")));
    }
    let x0 = 2.0 * PI * n as f64;
    let f = move |t: f64| (-(u + 1.0) * t.ln()).exp() * t.sin();
    let mut acc = C64::new(0.0, 0.0);
    let mut partial = Vec::with_capacity(64);
    for j in 0..MAX_PANELS {
        let a = x0 + j as f64 * PI;
        let (v, _) = gauss_kronrod_31(&f, a, a + PI);
        acc += v;
        partial.push(acc);
        if j >= 10 && j % 2 == 0 {
            let w = &partial[partial.len().saturating_sub(20)..];
            let (est, err) = wynn_epsilon(w);
            if err <= 1e-15 * est.norm() {
                return Ok(est);
            }
        }
    }
    Err(Error::TailBoundFailed(format!("sine tail at n = {n}, u = {u} did not settle")))
}

fn check(u: C64, v: C64) -> Result<()> {
    let near = |a: C64, b: f64| (a - b).norm() < 1e-12;
    if u.re <= -1.0 || v.re <= -1.0 {
        return Err(Error::Precondition(format!("Wilton's formula needs ℜu, ℜv > −1 (got {u}, {v})")));
    }
    if (u + v).re <= 0.0 {
        return Err(Error::Precondition(format!("Wilton's formula needs ℜ(u+v) > 0 (got {})", u + v)));
    }
    if near(u, 1.0) || near(v, 1.0) {
        return Err(Error::Precondition("Wilton's formula excludes u, v = 1".into()));
    }
    if near(u + v, 2.0) {
        return Err(Error::Precondition("Wilton's formula excludes u + v = 2".into()));
    }
    Ok(())
}

/// 2(2π)^{w−1} σ_{1−u−v}(n) n^{w−1} w ∫_{2πn}^∞ t^{−w−1} sin t dt.
pub fn wilton_term(w: C64, z: C64, n: u64) -> Result<C64> {
    let nf = n as f64;
    let p = ((w - 1.0) * (2.0 * PI * nf).ln()).exp();
    Ok(2.0 * p * divisor_sigma(z, n) * w * sine_tail(w, n)?)
}

/// ζ(u)ζ(v) − (1/(u−1) + 1/(v−1)) ζ(u+v−1).
pub fn wilton_lhs(u: C64, v: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    Ok(riemann_zeta(u)? * riemann_zeta(v)? - (one / (u - 1.0) + one / (v - 1.0)) * riemann_zeta(u + v - 1.0)?)
}

/// Both sides of Wilton's formula at truncation N (series also taken to 2N
/// for the stability check). The u-series is reported as seriesBeta, the
/// v-series as seriesAlpha, matching the general identity where M(u) goes
/// with σ_β.
pub fn evaluate_wilton_classic(u: C64, v: C64, n: usize) -> Result<IdentityReport> {
    check(u, v)?;
    if n < 16 {
        return Err(Error::Precondition(format!("truncation N must be at least 16 (got {n})")));
    }
    let lhs = wilton_lhs(u, v).map_err(|e| Error::Precondition(format!("left side: {e}")))?;
    let z = C64::new(1.0, 0.0) - u - v;
    let mut errors = Vec::new();
    let mut sums = Vec::new();
    for (label, w) in [("seriesAlpha", v), ("seriesBeta", u)] {
        let (terms, err) = par_terms(2 * n, |j| wilton_term(w, z, j));
        if let Some(e) = err {
            errors.push(format!("{label}: {e}"));
        }
        sums.push(assemble(&terms, n, SumStrategy::Direct)?);
    }
    let (a, b) = (&sums[0], &sums[1]);
    let rhs = a.n.value + b.n.value;
    let residual = residual_of(lhs, rhs);
    let residual_2n = residual_of(lhs, a.n2.value + b.n2.value);
    let oscillation = a.n.oscillation + b.n.oscillation;
    let tol = 1e-4;
    Ok(IdentityReport {
        instance: WILTON_CLASSIC.into(),
        u,
        v,
        u_theorem: u,
        v_theorem: v,
        mode: MomentMode::Classical,
        strategy: SumStrategy::Direct,
        n,
        index: "n".into(),
        lhs,
        residue_part: C64::new(0.0, 0.0),
        series_alpha: a.n.value,
        series_beta: b.n.value,
        rhs,
        residual,
        tail_diagnostics: TailDiagnostics {
            last_term_magnitude: a.n.last_term_magnitude.max(b.n.last_term_magnitude),
            partial_sum_oscillation: oscillation,
            averaged_residual: residual_of(lhs, a.n.averaged + b.n.averaged),
            window: a.n.window,
            residual_at_2n: residual_2n,
            early_window_magnitude: a.early + b.early,
            late_window_magnitude: a.late + b.late,
        },
        convergence_verdict: verdict(residual, residual_2n, oscillation, a.early + b.early, a.late + b.late, tol),
        in_stated_domain: true,
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_tail_oracle() {
        // mpmath: Im(e^{iπs/2} Γ(s, −2πi n)) with s = −u
        let t = sine_tail(C64::new(2.0, 0.0), 1).unwrap();
        assert!((t.re - 0.0032550962148135834).abs() < 1e-17, "{t}");
        let t = sine_tail(C64::new(3.0, 0.0), 3).unwrap();
        assert!((t.re - 7.5197854234327041e-6).abs() < 1e-20, "{t}");
    }

    #[test]
    fn preconditions() {
        let c = |x| C64::new(x, 0.0);
        assert!(evaluate_wilton_classic(c(0.5), c(1.5), 100).unwrap_err().is_domain_violation());
        assert!(evaluate_wilton_classic(c(1.0), c(3.0), 100).unwrap_err().is_domain_violation());
    }
}
