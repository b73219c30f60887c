//! The self-test suite: the acceptance checks that can run in-process,
//! each reduced to one number against one bound.

use crate::arithmetic::{character_group, gauss_sum, ideal_count, q_expansion_eta24, ramanujan_tau, rep_count};
use crate::arithmetic::{DirichletCharacter, ImagQuadField, QuadraticForm};
use crate::hecke::{functional_equation_residual, lookup, modular_relation_residual, registry, residue_at_k, Side};
use crate::lfun_ref::dedekind::dedekind_zeta_value;
use crate::lfun_ref::{dedekind_coefficient_sum, dirichlet_l, epstein_z, riemann_zeta};
use crate::wilton::adjudicate::{adjudicate_interpretations, READING_MATCH_TOL};
use crate::wilton::{
    evaluate_wilton_classic, mellin_barnes_moment, moment_classical, moment_derivative_closed_form,
    moment_mellin_barnes, moment_regularized, IdentityInstance, Precision,
};
use crate::{Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Sample offsets (s − k/2) for the functional-equation check.
pub const FE_OFFSETS: [(f64, f64); 5] = [(0.15, 0.4), (-0.35, 1.1), (0.6, -0.7), (0.25, 2.3), (-0.1, -1.6)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub criterion: u32,
    /// Reported-only checks never fail the suite.
    pub asserted: bool,
    pub passed: bool,
    #[serde(with = "crate::report::json::real")]
    pub value: f64,
    /// What `value` is compared against, as text ("≤ 1e-4", "[0.3, 0.7]").
    pub bound: String,
    pub detail: String,
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn at_most(name: &str, criterion: u32, bound: f64, r: Result<(f64, String)>) -> Check {
    match r {
        Ok((value, detail)) => Check {
            name: name.into(),
            criterion,
            asserted: true,
            passed: value <= bound,
            value,
            bound: format!("<= {bound:e}"),
            detail,
        },
        Err(e) => Check {
            name: name.into(),
            criterion,
            asserted: true,
            passed: false,
            value: f64::NAN,
            bound: format!("<= {bound:e}"),
            detail: format!("error: {e}"),
        },
    }
}

fn wilton_classic_checks(out: &mut Vec<Check>) {
    let r = evaluate_wilton_classic(C64::new(2.0, 0.0), C64::new(3.0, 0.0), 4000);
    let (residual, ratio) = match &r {
        Ok(rep) => (Ok((rep.residual, format!("lhs {} rhs {}", rep.lhs.re, rep.rhs.re))), {
            let q = rep.tail_diagnostics.residual_at_2n / rep.residual;
            Ok((q, format!("residual(8000) = {:e}", rep.tail_diagnostics.residual_at_2n)))
        }),
        Err(e) => (Err(e.clone()), Err(e.clone())),
    };
    out.push(at_most("wilton_classic_residual", 1, 1e-4, residual));
    let mut c = at_most("wilton_classic_tail_ratio", 1, 0.7, ratio);
    c.passed = c.passed && c.value >= 0.3;
    c.bound = "in [0.3, 0.7]".into();
    out.push(c);
}

fn moment_agreement(out: &mut Vec<Check>) {
    let mut worst_rg = (0.0f64, String::new());
    let mut worst_mb = (0.0f64, String::new());
    let mut failure = None;
    for name in ["theta_riemann", "delta_ramanujan", "dirichlet_odd_q4"] {
        let sig = &lookup(name).expect("registered").signature;
        for du in [0.75, 0.25] {
            let u = C64::new(sig.k - du, 0.0);
            for n in [1u64, 5, 20] {
                let r = (|| {
                    let cl = moment_classical(sig, n, u, 1e-13)?.value;
                    Ok::<_, crate::Error>((
                        cl,
                        moment_regularized(sig, n, u, Precision::Standard)?,
                        moment_mellin_barnes(sig, n, u, None)?,
                    ))
                })();
                match r {
                    Ok((cl, rg, mb)) => {
                        let at = format!("{name} n={n} u={}", u.re);
                        if rel(cl, rg) > worst_rg.0 {
                            worst_rg = (rel(cl, rg), at.clone());
                        }
                        if rel(cl, mb) > worst_mb.0 {
                            worst_mb = (rel(cl, mb), at);
                        }
                    }
                    Err(e) => failure = Some(e),
                }
            }
        }
    }
    let wrap = |w: (f64, String)| match &failure {
        Some(e) => Err(e.clone()),
        None => Ok((w.0, format!("worst at {}", w.1))),
    };
    out.push(at_most("moments_classical_vs_regularized", 2, 1e-9, wrap(worst_rg)));
    out.push(at_most("moments_classical_vs_mellin_barnes", 2, 1e-8, wrap(worst_mb)));
}

fn hecke_checks(out: &mut Vec<Check>) {
    for inst in registry() {
        let sig = &inst.signature;
        let r = FE_OFFSETS.iter().try_fold(0.0f64, |m, &(dr, di)| {
            Ok::<_, crate::Error>(m.max(functional_equation_residual(sig, C64::new(sig.k / 2.0 + dr, di))?))
        });
        out.push(at_most(
            &format!("functional_equation_{}", inst.name),
            3,
            1e-7,
            r.map(|v| (v, "max over 5 points".into())),
        ));
    }
    for name in ["theta_riemann", "delta_ramanujan", "eisenstein_4", "epstein_selfdual"] {
        let sig = &lookup(name).expect("registered").signature;
        let r = [0.5, 1.0, 2.0]
            .iter()
            .try_fold(0.0f64, |m, &y| Ok::<_, crate::Error>(m.max(modular_relation_residual(sig, y, None)?)));
        out.push(at_most(
            &format!("modular_relation_{name}"),
            4,
            1e-10,
            r.map(|v| (v, "max over y = 1/2, 1, 2".into())),
        ));
    }
}

fn exact_arithmetic(out: &mut Vec<Check>) {
    let tau = (|| {
        let oracle = q_expansion_eta24(100)?;
        let mut bad = 0usize;
        for n in 1..=100u64 {
            bad += (ramanujan_tau(n)? != oracle[n as usize - 1]) as usize;
        }
        Ok((bad as f64, "mismatches for n <= 100".into()))
    })();
    out.push(at_most("tau_vs_q_expansion", 5, 0.0, tau));
    let ideals = (|| {
        let qi = ImagQuadField::new(-4)?;
        let form = QuadraticForm::sum_of_squares(2);
        let mut bad = 0usize;
        for n in 1..=500u64 {
            bad += (4 * ideal_count(&qi, n) != rep_count(&form, n)?) as usize;
        }
        Ok((bad as f64, "mismatches of 4 v_Q(i)(n) = r_2(n) for n <= 500".into()))
    })();
    out.push(at_most("ideal_count_vs_two_squares", 5, 0.0, ideals));
    let mut worst = 0.0f64;
    let mut count = 0;
    for q in 2..=20u64 {
        for chi in character_group(q).into_iter().filter(|c| c.primitive) {
            worst = worst.max((gauss_sum(&chi).norm_sqr() - q as f64).abs());
            count += 1;
        }
    }
    out.push(at_most("gauss_sum_modulus", 5, 1e-12, Ok((worst, format!("{count} primitive characters, q <= 20")))));
}

fn reference_engines(out: &mut Vec<Check>) {
    let zeta = |s: f64, closed: f64| {
        riemann_zeta(C64::new(s, 0.0)).map(|z| ((z.re - closed).abs() + z.im.abs(), format!("{}", z.re)))
    };
    out.push(at_most("zeta2_closed_form", 6, 1e-12, zeta(2.0, PI * PI / 6.0)));
    out.push(at_most("zeta4_closed_form", 6, 1e-12, zeta(4.0, PI.powi(4) / 90.0)));
    let l = dirichlet_l(&DirichletCharacter::from_kronecker(-4), C64::new(2.0, 0.0))
        .map(|z| ((z - CATALAN).norm(), format!("{}", z.re)));
    out.push(at_most("dirichlet_l2_catalan", 6, 1e-10, l));
    let dk = (|| {
        let qi = ImagQuadField::new(-4)?;
        let s = C64::new(2.0, 0.0);
        let a = dedekind_zeta_value(&qi, s)?;
        let b = dedekind_coefficient_sum(&qi, s, 20_000)?;
        let bound = a.error_estimate + b.error_estimate;
        Ok((
            (a.value - b.value).norm() / bound,
            format!("|diff| {:e}, combined bound {bound:e}", (a.value - b.value).norm()),
        ))
    })();
    out.push(at_most("dedekind_qi_factorization_vs_sum", 6, 1.0, dk));
    let ep = (|| {
        let q = QuadraticForm::sum_of_squares(2);
        let beta = DirichletCharacter::from_kronecker(-4);
        let mut worst = 0.0f64;
        for s in [2.0, 3.0, 4.0] {
            let s = C64::new(s, 0.0);
            let z = epstein_z(&q, s, 1e-9)?;
            worst = worst.max((z.value - riemann_zeta(s)? * dirichlet_l(&beta, s)? * 4.0).norm());
        }
        Ok((worst, "max over s = 2, 3, 4".into()))
    })();
    out.push(at_most("epstein_two_squares_factorization", 6, 1e-8, ep));
}

fn residue_layer(out: &mut Vec<Check>) {
    let sig = &lookup("dedekind_qi").expect("registered").signature;
    let r = residue_at_k(sig, Side::Phi);
    out.push(at_most("dedekind_qi_residue_formula", 7, 1e-15, Ok(((r - PI / 4.0).norm(), format!("{}", r.re)))));
    // (s−1)ζ_K(s) averaged over s = 1 ± h cancels the linear term
    let h = 1e-3;
    let ex = (|| {
        let f = |d: f64| Ok::<_, crate::Error>(sig.phi_ref.evaluate(C64::new(sig.k + d, 0.0))?.value * d);
        let v = (f(h)? + f(-h)?) / 2.0;
        Ok(((v - r).norm(), format!("extrapolated {}", v.re)))
    })();
    out.push(at_most("dedekind_qi_residue_extrapolation", 7, 1e-4, ex));
}

fn derivative_law(out: &mut Vec<Check>) {
    let h = 1e-4;
    for (name, u) in [("theta_riemann", 1.25), ("delta_ramanujan", 11.25), ("dirichlet_odd_q4", 1.3)] {
        let sig = &lookup(name).expect("registered").signature;
        let u = C64::new(u, 0.0);
        let r = (|| {
            let mut worst = 0.0f64;
            for n in [1u64, 2] {
                let fd = (mellin_barnes_moment(sig, n, u, 1.0 + h, None)?
                    - mellin_barnes_moment(sig, n, u, 1.0 - h, None)?)
                    / (2.0 * h);
                let cf = moment_derivative_closed_form(sig, n, u, 1.0)?;
                worst = worst.max((fd - cf).norm() / (1.0 + cf.norm()));
            }
            Ok((worst, format!("u = {}, n = 1, 2, x = 1", u.re)))
        })();
        out.push(at_most(&format!("derivative_law_{name}"), 8, 1e-5, r));
    }
}

fn reported(name: &str, r: Result<(f64, String)>) -> Check {
    let mut c = at_most(name, 9, READING_MATCH_TOL, r);
    c.asserted = false;
    c
}

fn adjudication_readings(out: &mut Vec<Check>) {
    let c = |x| C64::new(x, 0.0);
    let cases = [
        ("eisenstein_4", vec![2u64, 4, 6, 12], c(5.5), c(5.3)),
        ("dirichlet_odd_q4", vec![1u64, 3, 5, 7], c(2.6), c(2.3)),
    ];
    for (name, grid, u, v) in cases {
        let t = IdentityInstance::lookup(name).and_then(|inst| adjudicate_interpretations(&inst, &grid, u, v));
        match t {
            Ok(t) => {
                for (i, r) in t.readings.iter().enumerate() {
                    let verdict =
                        if r.matches_generic { "matches the generic term" } else { "differs from the generic term" };
                    let label = if i == 0 { "printed" } else { "alternative" };
                    out.push(reported(
                        &format!("reading_{name}_{label}"),
                        Ok((r.max_rel_diff, format!("{}: {verdict}", r.reading))),
                    ));
                }
            }
            Err(e) => out.push(reported(&format!("reading_{name}"), Err(e))),
        }
    }
}

/// Runs every check in a fixed order.
pub fn run_suite() -> Vec<Check> {
    let mut out = Vec::new();
    wilton_classic_checks(&mut out);
    moment_agreement(&mut out);
    hecke_checks(&mut out);
    exact_arithmetic(&mut out);
    reference_engines(&mut out);
    residue_layer(&mut out);
    derivative_law(&mut out);
    adjudication_readings(&mut out);
    out
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.asserted)
}
