//! Gauss–Kronrod (15/31) adaptive quadrature and half-period panelling for
//! oscillatory integrands.

use super::summation::NeumaierSum;
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: C64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// QUADPACK qk31 abscissae (Kronrod), Gauss weights and Kronrod weights.
const XGK: [f64; 16] = [
    0.998002298693397060285172840152271,
    0.987992518020485428489565718586613,
    0.967739075679139134257347978784337,
    0.937273392400705904307758947710209,
    0.897264532344081900882509656454496,
    0.848206583410427216200648320774217,
    0.790418501442465932967649294817947,
    0.724417731360170047416186054613938,
    0.650996741297416970533735895313275,
    0.570972172608538847537226737253911,
    0.485081863640239680693655740232351,
    0.394151347077563369897207370981045,
    0.299180007153168812166780024266389,
    0.201194093997434522300628303394596,
    0.101142066918717499027074231447392,
    0.0,
];
const WG: [f64; 8] = [
    0.030753241996117268354628393577204,
    0.070366047488108124709267416450667,
    0.107159220467171935011869546685869,
    0.139570677926154314447804794511028,
    0.166269205816993933553200860481209,
    0.186161000015562211026800561866423,
    0.198431485327111576456118326443839,
    0.202578241925561272880620199967519,
];
const WGK: [f64; 16] = [
    0.005377479872923348987792051430128,
    0.015007947329316122538374763075807,
    0.025460847326715320186874001019653,
    0.035346360791375846222037948478360,
    0.044589751324764876608227299373280,
    0.053481524690928087265343147239430,
    0.062009567800670640285139230960803,
    0.069854121318728258709520077099147,
    0.076849680757720378894432777482659,
    0.083080502823133021038289247286104,
    0.088564443056211770647275443693774,
    0.093126598170825321225486872747346,
    0.096642726983623678505179907627589,
    0.099173598721791959332393173484603,
    0.100769845523875595044946662617570,
    0.101330007014791549017374792767493,
];

/// One application of the 31-point Kronrod rule with its embedded 15-point
/// Gauss rule. Returns (value, error estimate) using QUADPACK's rescaling.
pub fn gauss_kronrod_31<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = fc * WG[7];
    let mut resk = fc * WGK[15];
    let mut fv1 = [C64::new(0.0, 0.0); 15];
    let mut fv2 = [C64::new(0.0, 0.0); 15];
    for j in 0..15 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[15] * (fc - mean).norm();
    for j in 0..15 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    resasc *= half.abs();
    let value = resk * half;
    let mut err = ((resk - resg) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    // guard against the estimate dropping below rounding level
    let floor = 50.0 * f64::EPSILON * value.norm();
    (value, err.max(floor))
}

/// Globally adaptive bisection (QAG-style) on [a, b] until the summed error
/// estimate is ≤ `tol` or `max_intervals` is reached.
pub fn adaptive<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, tol: f64, max_intervals: usize) -> QuadratureResult {
    let (v, e) = gauss_kronrod_31(f, a, b);
    let mut intervals: Vec<(f64, f64, C64, f64)> = vec![(a, b, v, e)];
    let mut evaluations = 31;
    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if total_err <= tol || intervals.len() >= max_intervals {
            break;
        }
        // worst interval, lowest index on ties, keeps the order deterministic
        let (idx, _) =
            intervals
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |(bi, be), (i, iv)| if iv.3 > be { (i, iv.3) } else { (bi, be) });
        let (lo, hi, _, _) = intervals[idx];
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (v1, e1) = gauss_kronrod_31(f, lo, mid);
        let (v2, e2) = gauss_kronrod_31(f, mid, hi);
        evaluations += 62;
        intervals[idx] = (lo, mid, v1, e1);
        intervals.insert(idx + 1, (mid, hi, v2, e2));
    }
    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    for iv in &intervals {
        sum.add(iv.2);
        err += iv.3;
    }
    QuadratureResult { value: sum.value(), error_estimate: err, evaluations }
}

const MAX_PANELS: usize = 1 << 15;

/// ∫_lo^hi f over panels one half-period wide, each integrated adaptively,
/// panel values combined with compensated summation.
pub fn osc_quadrature<F: Fn(f64) -> C64 + Sync>(
    f: &F,
    lo: f64,
    hi: f64,
    half_period_hint: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(lo < hi) || !(tol > 0.0) || !(half_period_hint > 0.0) {
        return Err(Error::Domain(format!(
            "osc_quadrature needs lo < hi, tol > 0, hint > 0 (got {lo}, {hi}, {tol}, {half_period_hint})"
        )));
    }
    let width = (hi - lo) / half_period_hint;
    let panels = (width.ceil() as usize).clamp(1, MAX_PANELS);
    let h = (hi - lo) / panels as f64;
    let panel_tol = tol / panels as f64;
    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    let mut evaluations = 0;
    for p in 0..panels {
        let a = lo + p as f64 * h;
        let b = if p + 1 == panels { hi } else { lo + (p + 1) as f64 * h };
        let r = adaptive(f, a, b, panel_tol, 400);
        sum.add(r.value);
        err += r.error_estimate;
        evaluations += r.evaluations;
    }
    let value = sum.value();
    if err > tol {
        return Err(Error::ToleranceNotMet { value, estimate: err });
    }
    Ok(QuadratureResult { value, error_estimate: err, evaluations })
}
