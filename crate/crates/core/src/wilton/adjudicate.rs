//! Side-by-side comparison of the moment readings and of printed against
//! generic term formulas.

use super::identity::{
    printed_normalization, printed_term_reading, theorem_term, IdentityInstance, PrintedForm, SeriesSide,
};
use super::moments::{
    bessel_x, moment_classical, moment_mellin_barnes, moment_regularized, moment_tail, MomentMode, Precision,
};
use crate::{Result, C64};
use serde::{Deserialize, Serialize};

/// Relative agreement needed to call a printed reading a match.
pub const READING_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdjudicationRow {
    /// Series index: n, or m with n = m² for square-supported instances.
    pub index: u64,
    pub n: u64,
    #[serde(with = "crate::report::json::real")]
    pub x: f64,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub classical: Option<C64>,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub regularized: Option<C64>,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub mellin_barnes: Option<C64>,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub tail: Option<C64>,
    /// Largest pairwise |difference| over the tolerances allowed for it.
    #[serde(with = "crate::report::json::real")]
    pub max_discrepancy_ratio: f64,
    pub consistent: bool,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub generic_term: Option<C64>,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub printed_term: Option<C64>,
    #[serde(with = "crate::report::json::cplx::opt")]
    pub d_reading_term: Option<C64>,
    pub printed_rel_diff: Option<f64>,
    pub d_reading_rel_diff: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReadingVerdict {
    pub reading: String,
    #[serde(with = "crate::report::json::real")]
    pub max_rel_diff: f64,
    pub matches_generic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdjudicationTable {
    pub instance: String,
    #[serde(with = "crate::report::json::cplx")]
    pub u: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub v: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub u_theorem: C64,
    #[serde(with = "crate::report::json::cplx")]
    pub v_theorem: C64,
    pub printed_form: PrintedForm,
    pub rows: Vec<AdjudicationRow>,
    pub readings: Vec<ReadingVerdict>,
    pub all_consistent: bool,
}

fn rel(a: C64, b: C64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

fn keep(notes: &mut Vec<String>, label: &str, r: Result<C64>) -> Option<C64> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("{label}: {e}"));
            None
        }
    }
}

/// One row per grid index, moments taken at u_theorem (the β-series
/// argument), terms on the β series.
pub fn adjudicate_interpretations(inst: &IdentityInstance, grid: &[u64], u: C64, v: C64) -> Result<AdjudicationTable> {
    let sig = &inst.signature;
    let k = sig.k;
    let (ut, vt) = (inst.to_theorem(u), inst.to_theorem(v));
    let square = sig.beta_seq.is_square_supported();
    let norm = printed_normalization(inst);
    let mut rows = Vec::new();
    for &j in grid.iter().filter(|&&j| j > 0) {
        let n = if square { j * j } else { j };
        let mut notes = Vec::new();
        let mut classical_err = 0.0;
        let classical = if ut.re < k {
            match moment_classical(sig, n, ut, 1e-13) {
                Ok(r) => {
                    classical_err = r.error_estimate;
                    Some(r.value)
                }
                Err(e) => {
                    notes.push(format!("classical: {e}"));
                    None
                }
            }
        } else {
            None
        };
        let regularized = keep(&mut notes, "regularized", moment_regularized(sig, n, ut, Precision::Standard));
        let mellin_barnes = keep(&mut notes, "mellinBarnes", moment_mellin_barnes(sig, n, ut, None));
        let tail = if ut.re > k / 2.0 - 0.25 { keep(&mut notes, "tail", moment_tail(sig, n, ut)) } else { None };

        // tail differs from the others by the continued full-line part, so it
        // is reported but not compared
        let tols = [1e-12f64.max(classical_err), 1e-11, 1e-9];
        let vals = [classical, regularized, mellin_barnes];
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in a + 1..3 {
                if let (Some(x), Some(y)) = (vals[a], vals[b]) {
                    let allowed = (tols[a] + tols[b]) * (1.0 + x.norm());
                    worst = worst.max((x - y).norm() / allowed);
                }
            }
        }

        let mode = MomentMode::Regularized;
        let generic = keep(&mut notes, "generic term", theorem_term(inst, SeriesSide::BetaSeries, n, u, v, mode))
            .map(|g| g * norm);
        let printed = match inst.printed_form {
            PrintedForm::Generic => generic,
            _ => keep(
                &mut notes,
                "printed term",
                printed_term_reading(inst, SeriesSide::BetaSeries, n, u, v, mode, false),
            ),
        };
        let d_reading = match inst.printed_form {
            PrintedForm::EisensteinTypeset => keep(
                &mut notes,
                "d-reading term",
                printed_term_reading(inst, SeriesSide::BetaSeries, n, u, v, mode, true),
            ),
            _ => None,
        };
        let diff = |p: Option<C64>| Some(rel(generic?, p?));
        rows.push(AdjudicationRow {
            index: j,
            n,
            x: bessel_x(sig, n),
            classical,
            regularized,
            mellin_barnes,
            tail,
            max_discrepancy_ratio: worst,
            consistent: worst <= 1.0,
            generic_term: generic,
            printed_term: printed,
            d_reading_term: d_reading,
            printed_rel_diff: diff(printed),
            d_reading_rel_diff: diff(d_reading),
            notes,
        });
    }
    let verdict = |name: &str, pick: fn(&AdjudicationRow) -> Option<f64>| {
        let ds: Vec<f64> = rows.iter().filter_map(pick).collect();
        (!ds.is_empty()).then(|| {
            let m = ds.iter().copied().fold(0.0, f64::max);
            ReadingVerdict { reading: name.into(), max_rel_diff: m, matches_generic: m <= READING_MATCH_TOL }
        })
    };
    let mut readings = Vec::new();
    let printed_name = match inst.printed_form {
        PrintedForm::Generic => "printed (same as generic)",
        PrintedForm::EisensteinTypeset => "printed: σ_{k−1}(n) in σ*",
        PrintedForm::OddDirichletTypeset => "printed: m^{−3/2}",
    };
    readings.extend(verdict(printed_name, |r| r.printed_rel_diff));
    readings.extend(verdict("σ_{k−1}(d) in σ*", |r| r.d_reading_rel_diff));
    let all_consistent = rows.iter().all(|r| r.consistent);
    Ok(AdjudicationTable {
        instance: inst.name.clone(),
        u,
        v,
        u_theorem: ut,
        v_theorem: vt,
        printed_form: inst.printed_form,
        rows,
        readings,
        all_consistent,
    })
}
