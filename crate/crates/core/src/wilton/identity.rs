//! The product identity φ(u)ψ(v) = residue part + two Bessel-moment series,
//! assembled term by term for any registered signature.

use super::moments::{mode_admits, moment, MomentMode, Precision};
use super::series::{series_sum, window_len, window_mean_magnitude, SeriesSum, SumStrategy};
use crate::arithmetic::sequences::{eisenstein_normalizer, SeqKind};
use crate::arithmetic::{convolve_with, divisor_sigma, CoefficientSeq};
use crate::hecke::{lookup, residue_at_k, HeckeSignature, RegistryInstance, Side};
use crate::{Error, Result, C64};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Which of the two theorem series a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SeriesSide {
    /// −(2π/(λγ)) Σ σ_{α,k−u−v}(n) n^{(1−k)/2} M_n(v)
    AlphaSeries,
    /// −(2πγ/λ) Σ σ_{β,k−u−v}(n) n^{(1−k)/2} M_n(u)
    BetaSeries,
}

/// Term formula as typeset in the corollary, where it differs from the
/// generic theorem term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PrintedForm {
    Generic,
    /// (−1)^{1+k/2} 2π σ*(n) n^{(1−k)/2} M with
    /// σ*(n) = Σ_{d|n} σ_{k−1}(n) σ_{k−1}(n/d) d^z, against the
    /// ζζζζ-normalized left side.
    EisensteinTypeset,
    /// m^{−3/2} where the generic term has m^{1/2} (n = m²).
    OddDirichletTypeset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityInstance {
    pub name: String,
    pub signature: HeckeSignature,
    pub printed_form: PrintedForm,
    /// The Bessel series converge at best conditionally; block averaging is
    /// the automatic strategy.
    pub conditional_tail: bool,
    /// Growth exponent c of the coefficients, as used in the stated domain
    /// ℜu, ℜv > max(c+1, k) (theorem variables).
    pub growth_c: f64,
}

fn stated_c(seq: &CoefficientSeq, k: f64) -> f64 {
    match &seq.kind {
        SeqKind::RamanujanTau => k,
        SeqKind::Eisenstein { k } => *k as f64 - 1.0,
        SeqKind::RepCount { form } => form.dimension() as f64 / 2.0 - 1.0,
        SeqKind::CharacterSquaresWeighted { .. } => 0.5,
        SeqKind::Custom { .. } => seq.growth_exponent,
        _ => 0.0,
    }
}

impl IdentityInstance {
    pub fn from_registry(inst: &RegistryInstance) -> Self {
        let sig = &inst.signature;
        let printed_form = match &sig.alpha_seq.kind {
            SeqKind::Eisenstein { .. } => PrintedForm::EisensteinTypeset,
            SeqKind::CharacterSquaresWeighted { .. } => PrintedForm::OddDirichletTypeset,
            _ => PrintedForm::Generic,
        };
        let c = stated_c(&sig.alpha_seq, sig.k).max(stated_c(&sig.beta_seq, sig.k));
        IdentityInstance {
            name: inst.name.clone(),
            signature: sig.clone(),
            printed_form,
            conditional_tail: true,
            growth_c: c,
        }
    }

    pub fn lookup(name: &str) -> Result<Self> {
        Ok(Self::from_registry(lookup(name)?))
    }

    pub fn to_theorem(&self, u: C64) -> C64 {
        self.signature.variable_map.to_theorem(u)
    }

    /// ℜu, ℜv > max(c+1, k) in theorem variables.
    pub fn in_stated_domain(&self, u: C64, v: C64) -> bool {
        let b = (self.growth_c + 1.0).max(self.signature.k);
        self.to_theorem(u).re > b && self.to_theorem(v).re > b
    }

    /// Points where the identity or the chosen moment reading is undefined.
    /// Corollary variables in, theorem variables checked.
    pub fn check_domain(&self, u: C64, v: C64, mode: MomentMode) -> Result<()> {
        let sig = &self.signature;
        let k = sig.k;
        let (ut, vt) = (self.to_theorem(u), self.to_theorem(v));
        let near = |a: C64, b: f64| (a - b).norm() < 1e-8;
        for (name, w, wt) in [("u", u, ut), ("v", v, vt)] {
            if near(wt, k + 1.0) {
                return Err(Error::Precondition(format!(
                    "{name} = {w} maps to the excluded point {name}_theorem = k+1 = {}",
                    k + 1.0
                )));
            }
            if !(wt.re.is_finite() && wt.im.is_finite()) {
                return Err(Error::Precondition(format!("{name} is not finite")));
            }
        }
        let zero = C64::new(0.0, 0.0);
        let (rp, rq) = (residue_at_k(sig, Side::Phi), residue_at_k(sig, Side::Psi));
        if rp != zero && near(ut, k) {
            return Err(Error::Precondition(format!("φ has a pole at u_theorem = k = {k}")));
        }
        if rq != zero && near(vt, k) {
            return Err(Error::Precondition(format!("ψ has a pole at v_theorem = k = {k}")));
        }
        if (rp != zero || rq != zero) && near(ut + vt - k, k) {
            return Err(Error::Precondition("residue part has a pole at u+v = 2k (theorem variables)".to_string()));
        }
        for (name, wt) in [("u", ut), ("v", vt)] {
            mode_admits(k, wt, mode).map_err(|e| Error::Precondition(format!("{name}: {e}")))?;
        }
        Ok(())
    }
}

/// Global worker pool, sized by WILTONLAB_THREADS when set.
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var("WILTONLAB_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0);
        let n = n.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("cannot start worker pool")
    })
}

/// Coefficient source for σ_{·,z}; square-supported families are indexed by
/// m with n = m².
struct CoefSource<'a> {
    seq: &'a CoefficientSeq,
    square: bool,
    table: Option<Vec<C64>>,
}

impl<'a> CoefSource<'a> {
    fn new(seq: &'a CoefficientSeq, upto: Option<usize>) -> Result<Self> {
        let square = seq.is_square_supported();
        let table = match upto {
            Some(n) if !square => Some(seq.table(n)?),
            _ => None,
        };
        Ok(CoefSource { seq, square, table })
    }

    fn at(&self, n: u64) -> C64 {
        match &self.table {
            Some(t) => t[n as usize],
            None => self.seq.value_at(n),
        }
    }

    /// σ_{seq,z} at index j: n = j, or n = j² for square-supported families,
    /// where only square divisors contribute.
    fn sigma(&self, j: u64, z: C64) -> C64 {
        if self.square {
            convolve_with(j, 2.0 * z, |e| self.at(e * e), |e| self.at(e * e))
        } else {
            convolve_with(j, z, |d| self.at(d), |d| self.at(d))
        }
    }
}

fn theorem_index(square: bool, j: u64) -> u64 {
    if square {
        j * j
    } else {
        j
    }
}

fn side_parts(sig: &HeckeSignature, side: SeriesSide, ut: C64, vt: C64) -> (C64, &CoefficientSeq, C64) {
    let two_pi_l = 2.0 * PI / sig.lambda;
    match side {
        SeriesSide::BetaSeries => (-two_pi_l * sig.gamma, &sig.beta_seq, ut),
        SeriesSide::AlphaSeries => (-two_pi_l / sig.gamma, &sig.alpha_seq, vt),
    }
}

fn term_from(
    sig: &HeckeSignature,
    pref: C64,
    sigma: C64,
    n: u64,
    w: C64,
    mode: MomentMode,
    precision: Precision,
) -> Result<C64> {
    if sigma == C64::new(0.0, 0.0) {
        return Ok(sigma);
    }
    let m = moment(sig, n, w, mode, precision)?;
    Ok(pref * sigma * (n as f64).powf((1.0 - sig.k) / 2.0) * m)
}

/// The n-th term (theorem index n) of one series, generic form. u, v are
/// corollary variables.
pub fn theorem_term(
    inst: &IdentityInstance,
    side: SeriesSide,
    n: u64,
    u: C64,
    v: C64,
    mode: MomentMode,
) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("term index starts at 1".into()));
    }
    inst.check_domain(u, v, mode)?;
    let sig = &inst.signature;
    let (ut, vt) = (inst.to_theorem(u), inst.to_theorem(v));
    let (pref, seq, w) = side_parts(sig, side, ut, vt);
    let src = CoefSource::new(seq, None)?;
    let z = C64::new(sig.k, 0.0) - ut - vt;
    let sigma = if src.square {
        let r = (n as f64).sqrt().round() as u64;
        if r * r != n {
            return Ok(C64::new(0.0, 0.0));
        }
        src.sigma(r, z)
    } else {
        src.sigma(n, z)
    };
    term_from(sig, pref, sigma, n, w, mode, Precision::Standard)
}

/// The factor taking a generic term to the printed corollary's
/// normalization.
pub fn printed_normalization(inst: &IdentityInstance) -> f64 {
    match inst.printed_form {
        PrintedForm::EisensteinTypeset => {
            let k = inst.signature.k as u32;
            let c = eisenstein_normalizer(k).to_f64().unwrap_or(f64::NAN);
            1.0 / (c * c)
        }
        _ => 1.0,
    }
}

/// Σ_{d|n} σ_{k−1}(n) σ_{k−1}(n/d) d^z exactly as typeset, or with the
/// first factor read as σ_{k−1}(d).
pub fn eisenstein_sigma_star(k: u32, n: u64, z: C64, d_reading: bool) -> C64 {
    let e = C64::new(k as f64 - 1.0, 0.0);
    let sn = divisor_sigma(e, n);
    convolve_with(n, z, |d| if d_reading { divisor_sigma(e, d) } else { sn }, |d| divisor_sigma(e, d))
}

/// The n-th term as typeset in the corollary (theorem index n), in the
/// corollary's normalization.
pub fn printed_term(
    inst: &IdentityInstance,
    side: SeriesSide,
    n: u64,
    u: C64,
    v: C64,
    mode: MomentMode,
) -> Result<C64> {
    printed_term_reading(inst, side, n, u, v, mode, false)
}

/// As [`printed_term`]; `d_reading` selects σ_{k−1}(d) in the Eisenstein σ*.
pub fn printed_term_reading(
    inst: &IdentityInstance,
    side: SeriesSide,
    n: u64,
    u: C64,
    v: C64,
    mode: MomentMode,
    d_reading: bool,
) -> Result<C64> {
    match inst.printed_form {
        PrintedForm::Generic => theorem_term(inst, side, n, u, v, mode),
        PrintedForm::OddDirichletTypeset => {
            let g = theorem_term(inst, side, n, u, v, mode)?;
            // generic carries m^{1/2}; the typeset term m^{−3/2}
            Ok(g / n as f64)
        }
        PrintedForm::EisensteinTypeset => {
            inst.check_domain(u, v, mode)?;
            let sig = &inst.signature;
            let k = sig.k as u32;
            let (ut, vt) = (inst.to_theorem(u), inst.to_theorem(v));
            let w = if side == SeriesSide::BetaSeries { ut } else { vt };
            let sign = if (k / 2) % 2 == 1 { 1.0 } else { -1.0 };
            let pref = C64::new(sign * 2.0 * PI / sig.lambda, 0.0);
            let z = C64::new(sig.k, 0.0) - ut - vt;
            let s = eisenstein_sigma_star(k, n, z, d_reading);
            term_from(sig, pref, s, n, w, mode, Precision::Standard)
        }
    }
}

/// res φ(k)/(u−k)·ψ(u+v−k) + res ψ(k)/(v−k)·φ(u+v−k), theorem variables.
pub fn residue_part(sig: &HeckeSignature, ut: C64, vt: C64) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    let k = sig.k;
    let mut acc = zero;
    let rp = residue_at_k(sig, Side::Phi);
    if rp != zero {
        acc += rp / (ut - k) * sig.psi_ref.evaluate(ut + vt - k)?.value;
    }
    let rq = residue_at_k(sig, Side::Psi);
    if rq != zero {
        acc += rq / (vt - k) * sig.phi_ref.evaluate(ut + vt - k)?.value;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Converged,
    Conditional,
    DivergentSuspected,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Converged => "converged",
            Verdict::Conditional => "conditional",
            Verdict::DivergentSuspected => "divergentSuspected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TailDiagnostics {
    #[serde(with = "crate::report::json::real")]
    pub last_term_magnitude: f64,
    #[serde(with = "crate::report::json::real")]
    pub partial_sum_oscillation: f64,
    /// Residual with both series block-averaged.
    #[serde(with = "crate::report::json::real")]
    pub averaged_residual: f64,
    pub window: usize,
    /// Residual with the series taken to 2N.
    #[serde(with = "crate::report::json::real")]
    pub residual_at_2n: f64,
    /// Mean |term| over the √N window ending at N/10 and at N.
    #[serde(with = "crate::report::json::real")]
    pub early_window_magnitude: f64,
    #[serde(with = "crate::report::json::real")]
    pub late_window_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityReport {
    pub instance: String,
    #[serde(with = "crate::report::json::cplx")]
    pub u: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub v: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub u_theorem: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub v_theorem: C64,
    pub mode: MomentMode,
    pub strategy: SumStrategy,
    #[serde(rename = "N")]
    pub n: usize,
    /// What N counts: "n" or "m (n = m²)".
    pub index: String,
    #[serde(with = "crate::report::json::cplx")]
    pub lhs: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub residue_part: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub series_alpha: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub series_beta: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub rhs: C64,
    #[serde(with = "crate::report::json::real")]
    pub residual: f64,
    pub tail_diagnostics: TailDiagnostics,
    pub convergence_verdict: Verdict,
    pub in_stated_domain: bool,
    /// Numerical failures of individual terms; the affected series are NaN.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub mode: MomentMode,
    pub n: usize,
    pub strategy: SumStrategy,
    pub tol: f64,
    pub precision: Precision,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            mode: MomentMode::Regularized,
            n: 2000,
            strategy: SumStrategy::Auto,
            tol: 1e-6,
            precision: Precision::Standard,
        }
    }
}

pub(crate) fn residual_of(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm())
}

/// Terms 1..=count, computed on the worker pool; the first failing index
/// is reported and its term replaced by NaN.
pub(crate) fn par_terms(count: usize, f: impl Fn(u64) -> Result<C64> + Sync) -> (Vec<C64>, Option<String>) {
    let raw: Vec<Result<C64>> = pool().install(|| (1..=count as u64).into_par_iter().map(&f).collect());
    let mut first = None;
    let terms = raw
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.unwrap_or_else(|e| {
                first.get_or_insert_with(|| format!("term {}: {e}", i + 1));
                C64::new(f64::NAN, f64::NAN)
            })
        })
        .collect();
    (terms, first)
}

pub(crate) struct Assembled {
    pub n: SeriesSum,
    pub n2: SeriesSum,
    pub early: f64,
    pub late: f64,
}

pub(crate) fn assemble(terms: &[C64], n: usize, strategy: SumStrategy) -> Result<Assembled> {
    let at_n = series_sum(&terms[..n], strategy)?;
    let at_2n = series_sum(terms, strategy)?;
    let early = window_mean_magnitude(&terms[..n], (n / 10).max(window_len(n)));
    let late = window_mean_magnitude(&terms[..n], n);
    Ok(Assembled { n: at_n, n2: at_2n, early, late })
}

pub(crate) fn verdict(residual: f64, residual_2n: f64, oscillation: f64, early: f64, late: f64, tol: f64) -> Verdict {
    if !(residual.is_finite() && residual_2n.is_finite()) {
        return Verdict::Conditional;
    }
    if late > early {
        return Verdict::DivergentSuspected;
    }
    let stable = residual_2n <= 2.0 * residual && residual <= 2.0 * residual_2n;
    if oscillation < 10.0 * tol && (stable || residual.max(residual_2n) <= tol) {
        Verdict::Converged
    } else {
        Verdict::Conditional
    }
}

/// Evaluates both sides of the identity at corollary variables (u, v).
/// Domain violations are errors; numerical trouble ends up in the report.
pub fn evaluate_identity(inst: &IdentityInstance, u: C64, v: C64, opts: &EvalOptions) -> Result<IdentityReport> {
    inst.check_domain(u, v, opts.mode)?;
    let sig = &inst.signature;
    let (ut, vt) = (inst.to_theorem(u), inst.to_theorem(v));
    let strategy = opts.strategy.resolve(inst.conditional_tail);
    let n = opts.n;
    if n < 16 {
        return Err(Error::Precondition(format!("truncation N must be at least 16 (got {n})")));
    }
    let mut errors = Vec::new();
    let phi = sig.phi_ref.evaluate(ut).map_err(|e| Error::Precondition(format!("φ(u): {e}")))?;
    let psi = sig.psi_ref.evaluate(vt).map_err(|e| Error::Precondition(format!("ψ(v): {e}")))?;
    let lhs = phi.value * psi.value;
    let res = residue_part(sig, ut, vt).map_err(|e| Error::Precondition(format!("residue part: {e}")))?;
    let z = C64::new(sig.k, 0.0) - ut - vt;

    let mut sums = Vec::new();
    for side in [SeriesSide::AlphaSeries, SeriesSide::BetaSeries] {
        let (pref, seq, w) = side_parts(sig, side, ut, vt);
        let square = seq.is_square_supported();
        let src = CoefSource::new(seq, Some(2 * n))?;
        let (terms, err) = par_terms(2 * n, |j| {
            let nn = theorem_index(square, j);
            term_from(sig, pref, src.sigma(j, z), nn, w, opts.mode, opts.precision)
        });
        if let Some(e) = err {
            errors.push(format!("{}: {e}", if side == SeriesSide::AlphaSeries { "seriesAlpha" } else { "seriesBeta" }));
        }
        sums.push(assemble(&terms, n, strategy)?);
    }
    let (a, b) = (&sums[0], &sums[1]);
    let rhs = res + a.n.value + b.n.value;
    let residual = residual_of(lhs, rhs);
    let residual_2n = residual_of(lhs, res + a.n2.value + b.n2.value);
    let averaged_residual = residual_of(lhs, res + a.n.averaged + b.n.averaged);
    let oscillation = a.n.oscillation + b.n.oscillation;
    let early = a.early + b.early;
    let late = a.late + b.late;
    let square = sig.alpha_seq.is_square_supported();
    Ok(IdentityReport {
        instance: inst.name.clone(),
        u,
        v,
        u_theorem: ut,
        v_theorem: vt,
        mode: opts.mode,
        strategy,
        n,
        index: if square { "m (n = m²)".into() } else { "n".into() },
        lhs,
        residue_part: res,
        series_alpha: a.n.value,
        series_beta: b.n.value,
        rhs,
        residual,
        tail_diagnostics: TailDiagnostics {
            last_term_magnitude: a.n.last_term_magnitude.max(b.n.last_term_magnitude),
            partial_sum_oscillation: oscillation,
            averaged_residual,
            window: a.n.window,
            residual_at_2n: residual_2n,
            early_window_magnitude: early,
            late_window_magnitude: late,
        },
        convergence_verdict: verdict(residual, residual_2n, oscillation, early, late, opts.tol),
        in_stated_domain: inst.in_stated_domain(u, v),
        errors,
    })
}

/// The u = v specialization of the corollaries.
pub fn evaluate_identity_diagonal(inst: &IdentityInstance, u: C64, opts: &EvalOptions) -> Result<IdentityReport> {
    evaluate_identity(inst, u, u, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn theta_off_squares_vanish() {
        let inst = IdentityInstance::lookup("theta_riemann").unwrap();
        for n in [2, 3, 5, 8, 10] {
            let t = theorem_term(&inst, SeriesSide::BetaSeries, n, c(0.6), c(0.6), MomentMode::Regularized).unwrap();
            assert_eq!(t, c(0.0));
        }
    }

    #[test]
    fn theta_term_matches_riemann_corollary() {
        // −π σ_{1−u−v}(3) 3^{1/2} M_9(u/2) with u = v = 0.6
        let inst = IdentityInstance::lookup("theta_riemann").unwrap();
        let t = theorem_term(&inst, SeriesSide::BetaSeries, 9, c(0.6), c(0.6), MomentMode::Regularized).unwrap();
        let sigma = 1.0 + 3f64.powf(1.0 - 1.2);
        let m = moment(&inst.signature, 9, c(0.3), MomentMode::Regularized, Precision::Standard).unwrap();
        let hand = -PI * sigma * 3f64.sqrt() * m;
        assert!((t - hand).norm() <= 1e-14 * hand.norm(), "{t} vs {hand}");
    }

    #[test]
    fn excluded_points() {
        let inst = IdentityInstance::lookup("theta_riemann").unwrap();
        let e = evaluate_identity(&inst, c(3.0), c(3.0), &EvalOptions::default()).unwrap_err();
        assert!(e.is_domain_violation());
        let e = evaluate_identity(
            &inst,
            c(1.2),
            c(0.7),
            &EvalOptions { mode: MomentMode::Classical, ..Default::default() },
        );
        assert!(e.unwrap_err().is_domain_violation());
    }

    #[test]
    fn eisenstein_d_reading_is_the_convolution() {
        let inst = IdentityInstance::lookup("eisenstein_4").unwrap();
        let (u, v) = (c(2.3), c(2.6));
        for n in [1, 2, 6, 12] {
            let g = theorem_term(&inst, SeriesSide::BetaSeries, n, u, v, MomentMode::Regularized).unwrap();
            let d =
                printed_term_reading(&inst, SeriesSide::BetaSeries, n, u, v, MomentMode::Regularized, true).unwrap();
            let g = g * printed_normalization(&inst);
            assert!((g - d).norm() <= 1e-12 * g.norm(), "n={n}: {g} vs {d}");
        }
    }
}
