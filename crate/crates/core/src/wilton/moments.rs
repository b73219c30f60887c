//! The Bessel moment ∫₀¹ t^{(k−1)/2−u} J_{k−1}(4π√(nt)/λ) dt under its
//! interpretations, and the Mellin–Barnes integral I_n(x).
//!
//! Throughout, x = 2π√n/λ, so the moment is 2∫₀¹ s^{k−2u} J_{k−1}(2xs) ds
//! after t = s².

use crate::hecke::HeckeSignature;
use crate::numerics::accel::wynn_epsilon;
use crate::numerics::quadrature::{adaptive, gauss_kronrod_31};
use crate::numerics::summation::DdComplex;
use crate::numerics::{
    bessel_j, bessel_j_scaled, ln_gamma, osc_quadrature, DoubleDouble, NeumaierSum, QuadratureResult,
};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum MomentMode {
    /// The literal integral; needs Re u < k.
    Classical,
    /// Term-wise integration of the Bessel series (analytic in u).
    Regularized,
    /// Recovered from the contour integral I_n(1).
    MellinBarnes,
    /// −2∫₁^∞ s^{k−2u} J_{k−1}(2xs) ds: the regularized moment with the
    /// ∫₀^∞ part removed.
    Tail,
}

impl MomentMode {
    pub const ALL: [MomentMode; 4] =
        [MomentMode::Classical, MomentMode::Regularized, MomentMode::MellinBarnes, MomentMode::Tail];

    pub fn name(self) -> &'static str {
        match self {
            MomentMode::Classical => "classical",
            MomentMode::Regularized => "regularized",
            MomentMode::MellinBarnes => "mellinBarnes",
            MomentMode::Tail => "tail",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "classical" => Some(MomentMode::Classical),
            "regularized" => Some(MomentMode::Regularized),
            "mellinbarnes" | "mb" => Some(MomentMode::MellinBarnes),
            "tail" => Some(MomentMode::Tail),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Precision {
    #[default]
    Standard,
    Compensated,
}

pub const POLE_GUARD: f64 = 1e-8;
const F64_SERIES_MAX_X: f64 = 8.0;
const DD_SERIES_MAX_X: f64 = 18.0;
const CLASSICAL_TOL: f64 = 1e-13;

/// 2π√n/λ
pub fn bessel_x(sig: &HeckeSignature, n: u64) -> f64 {
    sig.scale() * (n as f64).sqrt()
}

fn pole_check(k: f64, u: C64) -> Result<()> {
    let d = u - k;
    let m = d.re.round();
    if m >= 0.0 && (d - m).norm() < POLE_GUARD {
        return Err(Error::PoleProximity(m as u32));
    }
    Ok(())
}

/// Quadrature that keeps a slightly-over-budget result instead of failing.
fn osc_lenient<F: Fn(f64) -> C64 + Sync>(f: &F, lo: f64, hi: f64, hint: f64, tol: f64) -> Result<QuadratureResult> {
    match osc_quadrature(f, lo, hi, hint, tol) {
        Err(Error::ToleranceNotMet { value, estimate }) if estimate < 1e3 * tol => {
            Ok(QuadratureResult { value, error_estimate: estimate, evaluations: 0 })
        }
        r => r,
    }
}

/// 2∫₀¹ s^{k−2u} J_{k−1}(2xs) ds to absolute tolerance `tol`, returning
/// the best value even when the tolerance is missed.
fn classical_abs(k: f64, x: f64, u: C64, tol: f64) -> QuadratureResult {
    let nu = k - 1.0;
    let c = 2.0 * x;
    let beta = 2.0 * k - 1.0 - 2.0 * u;
    let s1 = (1.0 / c).min(1.0);
    // s = s1·w^p makes the s^β endpoint behaviour vanish like w
    let p = 2.0 / (beta.re + 1.0);
    let pre = c.powf(nu) * 2.0 * p * (s1.ln() * (beta + 1.0)).exp();
    let expo = beta * p + p - 1.0;
    let head = move |w: f64| pre * (expo * w.ln()).exp() * bessel_j_scaled(nu, c * s1 * w.powf(p));
    let mut r = adaptive(&head, 0.0, 1.0, 0.5 * tol, 400);
    let s2 = (ibp_start(k, u) / c).min(1.0);
    if s2 < 1.0 {
        match ibp_bessel(C64::new(k, 0.0) - 2.0 * u, nu, c, s2, Some(1.0)) {
            Ok(v) => r.value += 2.0 * v,
            Err(_) => r.error_estimate = f64::INFINITY,
        }
    }
    if s1 < s2 {
        let body = move |s: f64| (s.ln() * (k - 2.0 * u)).exp() * (2.0 * bessel_j(nu, c * s));
        let b = match osc_quadrature(&body, s1, s2, PI / c, 0.5 * tol) {
            Ok(b) => b,
            Err(Error::ToleranceNotMet { value, estimate }) => {
                QuadratureResult { value, error_estimate: estimate, evaluations: 0 }
            }
            Err(_) => {
                QuadratureResult { value: C64::new(f64::NAN, 0.0), error_estimate: f64::INFINITY, evaluations: 0 }
            }
        };
        r.value += b.value;
        r.error_estimate += b.error_estimate;
        r.evaluations += b.evaluations;
    }
    r
}

/// 2∫₀¹ s^{k−2u} J_{k−1}(2xs) ds for Re u < k, to relative tolerance `tol`.
pub fn classical_at(k: f64, x: f64, u: C64, tol: f64) -> Result<QuadratureResult> {
    if u.re >= k {
        return Err(Error::Domain(format!("classical moment needs Re u < k = {k} (got {u})")));
    }
    let mut r = classical_abs(k, x, u, tol);
    if r.error_estimate > tol * (1.0 + r.value.norm()) && r.value.is_finite() {
        r = classical_abs(k, x, u, tol * (1.0 + r.value.norm()));
    }
    if !(r.error_estimate <= tol * (1.0 + r.value.norm())) {
        return Err(Error::ToleranceNotMet { value: r.value, estimate: r.error_estimate });
    }
    Ok(r)
}

/// Classical moment for the n-th term of a signature.
pub fn moment_classical(sig: &HeckeSignature, n: u64, u: C64, tol: f64) -> Result<QuadratureResult> {
    classical_at(sig.k, bessel_x(sig, n), u, tol)
}

/// Σ (−1)^m x^{2m+k−1} / (m! Γ(m+k) (m+k−u)), summed directly.
fn series_f64(k: f64, x: f64, u: C64) -> C64 {
    let x2 = x * x;
    let mut r = 1.0;
    let mut acc = NeumaierSum::new();
    let mut m = 0.0;
    loop {
        let t = C64::new(r, 0.0) / (C64::new(m + k, 0.0) - u);
        acc.add(t);
        if m > x && t.norm() <= 1e-20 * acc.value().norm().max(1e-300) {
            break;
        }
        r *= -x2 / ((m + 1.0) * (m + k));
        m += 1.0;
        if r == 0.0 {
            break;
        }
    }
    acc.value()
}

fn series_dd(k: f64, x: f64, u: C64) -> C64 {
    let x2 = DoubleDouble::from_f64(x) * DoubleDouble::from_f64(x);
    let mut r = DoubleDouble::ONE;
    let mut acc = DdComplex::ZERO;
    let mut m = 0.0;
    loop {
        let d =
            DdComplex::new(DoubleDouble::from_f64(m + k) - DoubleDouble::from_f64(u.re), DoubleDouble::from_f64(-u.im));
        let t = d.recip().scale(r);
        acc = acc + t;
        if m > x && t.norm_f64() <= 1e-34 * acc.norm_f64().max(1e-300) {
            break;
        }
        r = -(r * x2 / (DoubleDouble::from_f64(m + 1.0) * DoubleDouble::from_f64(m + k)));
        m += 1.0;
        if r.hi == 0.0 {
            break;
        }
    }
    acc.to_c64()
}

/// The regularized moment by its power series; `None` when x is past the
/// range where the cancellation is under control.
fn regularized_series(k: f64, x: f64, u: C64, precision: Precision) -> Option<C64> {
    let lead = (k - 1.0) * x.ln() - ln_gamma(C64::new(k, 0.0)).ok()?.re;
    let sum = if precision == Precision::Standard && x <= F64_SERIES_MAX_X {
        series_f64(k, x, u)
    } else if x <= DD_SERIES_MAX_X {
        series_dd(k, x, u)
    } else {
        return None;
    };
    Some(sum * lead.exp())
}

/// x^{2u−k−1} Γ(k−u)/Γ(u): the continued ∫₀^∞ part.
fn full_line_part(k: f64, x: f64, u: C64) -> Result<C64> {
    let l = (2.0 * u - k - 1.0) * x.ln() + ln_gamma(C64::new(k, 0.0) - u)? - ln_gamma(u)?;
    Ok(l.exp())
}

/// Bessel argument past which integration by parts replaces quadrature;
/// the recurrence coefficients grow like |2u + 2j| so large u and k start
/// later.
fn ibp_start(k: f64, u: C64) -> f64 {
    150.0 + 4.0 * (2.0 * u.norm() + k)
}

/// Forward recurrence J_{ν+1}, J_{ν+2}, … at z ≫ ν.
struct BesselRun {
    z: f64,
    nu: f64,
    prev: f64,
    cur: f64,
}

impl BesselRun {
    /// Starts at J_{ν+1}(z).
    fn new(nu: f64, z: f64) -> Self {
        BesselRun { z, nu: nu + 1.0, prev: bessel_j(nu, z), cur: bessel_j(nu + 1.0, z) }
    }

    fn step(&mut self) {
        let next = 2.0 * self.nu / self.z * self.cur - self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.nu += 1.0;
    }
}

/// ∫_a^b s^μ J_ν(cs) ds (b = None for ∞) by repeated integration by parts,
/// ∫ s^μ J_ν(cs) ds = s^μ J_{ν+1}(cs)/c − ((μ−ν−1)/c) ∫ s^{μ−1} J_{ν+1}(cs) ds.
/// Needs ca large; for b = ∞ also Re μ < 1/2.
fn ibp_bessel(mu0: C64, nu0: f64, c: f64, a: f64, b: Option<f64>) -> Result<C64> {
    let za = c * a;
    let mut ja = BesselRun::new(nu0, za);
    let mut jb = b.map(|b| BesselRun::new(nu0, c * b));
    let (ln_a, ln_b) = (a.ln(), b.map(f64::ln));
    let mut coef = C64::new(1.0, 0.0);
    let mut mu = mu0;
    let mut nu = nu0;
    let mut acc = NeumaierSum::new();
    for _ in 0..400 {
        let mut bracket = -(mu * ln_a).exp() * ja.cur;
        if let (Some(jb), Some(lb)) = (&jb, ln_b) {
            bracket += (mu * lb).exp() * jb.cur;
        }
        acc.add(coef * bracket / c);
        coef *= -(mu - nu - 1.0) / c;
        mu -= 1.0;
        nu += 1.0;
        // remainder ≤ |coef| ∫_a^∞ s^{Re μ} ds
        if mu.re < -1.0 {
            let rem = coef.norm() * a.powf(mu.re + 1.0) / (-mu.re - 1.0);
            if rem <= 1e-17 * acc.value().norm().max(1e-300) {
                return Ok(acc.value());
            }
        }
        if (mu - nu - 1.0).norm() >= za {
            break;
        }
        ja.step();
        if let Some(jb) = &mut jb {
            jb.step();
        }
    }
    Err(Error::TailBoundFailed(format!("integration by parts did not converge (μ = {mu0}, ν = {nu0}, ca = {za})")))
}

/// 2∫₁^∞ s^{k−2u} J_{k−1}(2xs) ds for Re u > k/2 − 1/4.
pub fn tail_integral(k: f64, x: f64, u: C64) -> Result<C64> {
    if u.re <= k / 2.0 - 0.25 {
        return Err(Error::Domain(format!("tail integral needs Re u > k/2 − 1/4 = {} (got {u})", k / 2.0 - 0.25)));
    }
    let c = 2.0 * x;
    let nu0 = k - 1.0;
    let mu0 = C64::new(k, 0.0) - 2.0 * u;
    let big_s = (ibp_start(k, u) / c).max(1.0);
    let mut acc = NeumaierSum::new();
    if big_s > 1.0 {
        let f = move |s: f64| (mu0 * s.ln()).exp() * bessel_j(nu0, c * s);
        let scale = (2.0 / (PI * c)).sqrt();
        let r = osc_lenient(&f, 1.0, big_s, PI / c, 1e-12 * scale)?;
        acc.add(r.value);
    }
    acc.add(ibp_bessel(mu0, nu0, c, big_s, None)?);
    Ok(acc.value() * 2.0)
}

/// Regularized moment with Bessel argument 2xs (upper limit t = 1).
pub fn regularized_at(k: f64, x: f64, u: C64, precision: Precision) -> Result<C64> {
    pole_check(k, u)?;
    if let Some(v) = regularized_series(k, x, u, precision) {
        return Ok(v);
    }
    if u.re > k / 2.0 - 0.25 {
        return Ok(full_line_part(k, x, u)? - tail_integral(k, x, u)?);
    }
    // here Re u < k, where the literal integral is the same function
    Ok(classical_at(k, x, u, CLASSICAL_TOL)?.value)
}

pub fn moment_regularized(sig: &HeckeSignature, n: u64, u: C64, precision: Precision) -> Result<C64> {
    regularized_at(sig.k, bessel_x(sig, n), u, precision)
}

/// Regularized moment with upper limit t = `upper`: ∫₀^upper t^{(k−1)/2−u} J_{k−1}(4π√(nt)/λ) dt.
pub fn moment_regularized_upto(sig: &HeckeSignature, n: u64, u: C64, upper: f64, precision: Precision) -> Result<C64> {
    let x = bessel_x(sig, n) * upper.sqrt();
    let f = ((sig.k + 1.0) / 2.0 - u) * upper.ln();
    Ok(f.exp() * regularized_at(sig.k, x, u, precision)?)
}

/// −2∫₁^∞ s^{k−2u} J_{k−1}(2xs) ds.
pub fn moment_tail(sig: &HeckeSignature, n: u64, u: C64) -> Result<C64> {
    Ok(-tail_integral(sig.k, bessel_x(sig, n), u)?)
}

/// Admissible contour abscissas: Re u − k < a < Re u − k/2, a ≠ 0.
pub fn abscissa_range(k: f64, u: C64) -> (f64, f64) {
    (u.re - k, u.re - k / 2.0)
}

pub fn default_abscissa(k: f64, u: C64) -> f64 {
    let (lo, hi) = abscissa_range(k, u);
    let mut a = lo + (0.25f64).min(k / 4.0).min((hi - lo) / 2.0);
    if a.abs() < 0.05 {
        // keep away from the pole of 1/z
        a = if lo < -0.1 { lo / 2.0 } else { (lo.max(0.0) + hi) / 2.0 };
    }
    a
}

fn check_abscissa(k: f64, u: C64, a: f64) -> Result<()> {
    let (lo, hi) = abscissa_range(k, u);
    let margin = 1e-3;
    if !(a > lo + margin && a < hi - margin) {
        return Err(Error::ContourTooClose(format!("a = {a} outside ({lo}, {hi}) with margin {margin}")));
    }
    if a.abs() < margin {
        return Err(Error::ContourTooClose(format!("a = {a} too close to the pole at z = 0")));
    }
    Ok(())
}

const MB_MAX_PANELS: usize = 20_000;

/// (1/2πi)∫_{(a)} Y^z Γ(k−u+z)/Γ(u−z) dz/z along Re z = a, without any
/// correction for the pole at z = 0.
fn mb_raw(k: f64, y: f64, u: C64, a: f64) -> Result<C64> {
    let ku = C64::new(k, 0.0) - u;
    let ln_y = y.ln();
    let g = move |t: f64| -> C64 {
        let z = C64::new(a, t);
        match (ln_gamma(ku + z), ln_gamma(u - z)) {
            (Ok(p), Ok(q)) => (z * ln_y + p - q).exp() / z,
            _ => C64::new(f64::NAN, 0.0),
        }
    };
    let scale = g(0.0).norm().max(g(1.0).norm()).max(1e-300);
    let tol = 1e-14 * scale;
    let t_star = y.powf(-0.5);
    let t0 = (2.0 * t_star).max(20.0);
    let mut total = NeumaierSum::new();
    for dir in [1.0, -1.0] {
        let h = move |t: f64| g(dir * t);
        // half-period panels, frequency from the Stirling phase derivative
        let omega = |t: f64| {
            let z = C64::new(a, dir * t);
            ln_y + (ku + z).norm().ln() + (u - z).norm().ln()
        };
        let mut body = NeumaierSum::new();
        let mut t = 0.0;
        while t < t0 {
            // three half-periods per rule
            let w = (3.0 * PI / omega(t).abs().max(0.25)).min(6.0).min(t0 - t);
            let (v0, e0) = gauss_kronrod_31(&h, t, t + w);
            let ptol = (1e-14 * v0.norm()).max(0.1 * tol);
            body.add(if e0 <= ptol { v0 } else { adaptive(&h, t, t + w, ptol, 50).value });
            t += w;
        }
        let body = body.value();
        if !body.is_finite() {
            return Err(Error::TailBoundFailed("non-finite contour integrand".into()));
        }
        let omega = |t: f64| omega(t).max(0.5);
        let mut t = t0;
        let mut partial = vec![body];
        let mut acc = body;
        let mut done = None;
        for i in 0..MB_MAX_PANELS {
            let w = PI / omega(t);
            let p = adaptive(&h, t, t + w, tol, 50);
            acc += p.value;
            partial.push(acc);
            t += w;
            if i >= 12 && i % 4 == 0 {
                let window = &partial[partial.len().saturating_sub(24)..];
                let (est, err) = wynn_epsilon(window);
                if err <= 1e-14 * est.norm().max(scale * 1e-3) {
                    done = Some(est);
                    break;
                }
            }
        }
        match done {
            Some(v) => total.add(v),
            None => {
                return Err(Error::TailBoundFailed(format!(
                    "contour tail did not settle within {MB_MAX_PANELS} panels"
                )))
            }
        }
    }
    Ok(total.value() / (2.0 * PI))
}

/// I_n(x) = (1/2πi)∫_{(a)} (λ²/(4π²n))^z Γ(k−u+z)/Γ(u−z) x^{−z} dz/z,
/// normalized to a contour right of z = 0 whatever `a` is used, so the
/// value does not depend on the abscissa.
pub fn mellin_barnes_moment(sig: &HeckeSignature, n: u64, u: C64, x: f64, a: Option<f64>) -> Result<C64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive (got {x})")));
    }
    let k = sig.k;
    let a = a.unwrap_or_else(|| default_abscissa(k, u));
    check_abscissa(k, u, a)?;
    let xx = bessel_x(sig, n);
    let y = 1.0 / (xx * xx * x);
    let raw = mb_raw(k, y, u, a)?;
    if a < 0.0 {
        Ok(raw + (ln_gamma(C64::new(k, 0.0) - u)? - ln_gamma(u)?).exp())
    } else {
        Ok(raw)
    }
}

/// The moment recovered from I_n(1) = Γ(k−u)/Γ(u) − X^{k+1−2u} M(u),
/// X = 2π√n/λ.
pub fn moment_mellin_barnes(sig: &HeckeSignature, n: u64, u: C64, a: Option<f64>) -> Result<C64> {
    let k = sig.k;
    pole_check(k, u)?;
    let a = a.unwrap_or_else(|| default_abscissa(k, u));
    check_abscissa(k, u, a)?;
    let xx = bessel_x(sig, n);
    let raw = mb_raw(k, 1.0 / (xx * xx), u, a)?;
    let scale = ((k + 1.0 - 2.0 * u) * xx.ln()).exp();
    if a < 0.0 {
        Ok(-raw / scale)
    } else {
        let g = (ln_gamma(C64::new(k, 0.0) - u)? - ln_gamma(u)?).exp();
        Ok((g - raw) / scale)
    }
}

/// I′_n(x) = −(1/x)(4π²nx/λ²)^{(k+1)/2−u} J_{k−1}(4π√(nx)/λ).
pub fn moment_derivative_closed_form(sig: &HeckeSignature, n: u64, u: C64, x: f64) -> Result<C64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive (got {x})")));
    }
    let xx = bessel_x(sig, n);
    let base = xx * xx * x;
    let p = (((sig.k + 1.0) / 2.0 - u) * base.ln()).exp();
    Ok(-p * bessel_j(sig.k - 1.0, 2.0 * xx * x.sqrt()) / x)
}

/// The moment under `mode`.
pub fn moment(sig: &HeckeSignature, n: u64, u: C64, mode: MomentMode, precision: Precision) -> Result<C64> {
    match mode {
        MomentMode::Classical => Ok(moment_classical(sig, n, u, CLASSICAL_TOL)?.value),
        MomentMode::Regularized => moment_regularized(sig, n, u, precision),
        MomentMode::MellinBarnes => moment_mellin_barnes(sig, n, u, None),
        MomentMode::Tail => moment_tail(sig, n, u),
    }
}

/// Whether `mode` is defined at theorem variable u.
pub fn mode_admits(k: f64, u: C64, mode: MomentMode) -> Result<()> {
    match mode {
        MomentMode::Classical if u.re >= k => {
            Err(Error::Domain(format!("classical mode needs Re u_theorem < k = {k} (got {u})")))
        }
        MomentMode::Tail if u.re <= k / 2.0 - 0.25 => {
            Err(Error::Domain(format!("tail mode needs Re u_theorem > k/2 − 1/4 = {} (got {u})", k / 2.0 - 0.25)))
        }
        MomentMode::Regularized | MomentMode::MellinBarnes => pole_check(k, u),
        _ => Ok(()),
    }
}
