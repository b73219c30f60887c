use proptest::prelude::*;
use wiltonlab::hecke::{lookup, registry};
use wiltonlab::numerics::{bessel_j, ln_gamma};
use wiltonlab::wilton::adjudicate::adjudicate_interpretations;
use wiltonlab::wilton::moments::{classical_at, regularized_at};
use wiltonlab::wilton::*;
use wiltonlab::C64;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + a.norm())
}

#[test]
fn modes_agree_in_the_classical_strip() {
    for inst in registry() {
        let sig = &inst.signature;
        for du in [0.75, 0.25] {
            let u = c(sig.k - du);
            for n in [1u64, 2, 5, 20] {
                let cl = moment_classical(sig, n, u, 1e-13).unwrap().value;
                let rg = moment_regularized(sig, n, u, Precision::Standard).unwrap();
                let mb = moment_mellin_barnes(sig, n, u, None).unwrap();
                assert!(rel(cl, rg) <= 1e-9, "{} n={n} u={u}: {cl} vs {rg}", inst.name);
                assert!(rel(cl, mb) <= 1e-8, "{} n={n} u={u}: {cl} vs {mb}", inst.name);
            }
        }
    }
}

#[test]
fn classical_examples() {
    // k = 2, λ = 4π, n = 1 and λ = 8π, n = 4 share x = 1/2
    let x1 = 2.0 * std::f64::consts::PI * 1.0 / (4.0 * std::f64::consts::PI);
    let x2 = 2.0 * std::f64::consts::PI * 2.0 / (8.0 * std::f64::consts::PI);
    let a = classical_at(2.0, x1, c(0.0), 1e-14).unwrap().value;
    let b = classical_at(2.0, x2, c(0.0), 1e-14).unwrap().value;
    assert!((a.re - 2.0 * bessel_j(2.0, 1.0)).abs() < 1e-13);
    assert_eq!(a, b);
    // (2/π)∫₀¹ s^{−1/2} cos 2πs ds (mpmath)
    let theta = &lookup("theta_riemann").unwrap().signature;
    let f = moment_classical(theta, 1, c(0.25), 1e-13).unwrap().value;
    assert!((f.re - 0.310_831_772_233_379_7).abs() < 1e-13, "{f}");
    let cl = moment_classical(theta, 1, c(-0.25), 1e-13).unwrap().value;
    let rg = moment_regularized(theta, 1, c(-0.25), Precision::Standard).unwrap();
    assert!(rel(cl, rg) < 1e-9);
}

#[test]
fn regularized_against_high_precision_series() {
    // 80-digit series sums (mpmath)
    let theta = &lookup("theta_riemann").unwrap().signature;
    let v = moment_regularized(theta, 100, C64::new(1.25, 0.5), Precision::Standard).unwrap();
    let want = C64::new(33.636_742_069_977_48, 52.494_394_535_178_27);
    assert!((v - want).norm() <= 1e-11 * want.norm(), "{v}");

    let delta = &lookup("delta_ramanujan").unwrap().signature;
    let v = moment_regularized(delta, 50, C64::new(13.5, -0.7), Precision::Standard).unwrap();
    let want = C64::new(-40_179_343_467_252.94, -5_310_843_768_404.233);
    assert!((v - want).norm() <= 1e-11 * want.norm(), "{v}");

    let odd = &lookup("dirichlet_odd_q4").unwrap().signature;
    for p in [Precision::Standard, Precision::Compensated] {
        let v = moment_regularized(odd, 49, c(2.2), p).unwrap();
        assert!((v.re + 98.856_122_664_861_2).abs() <= 1e-11 * 98.9, "{v}");
    }
}

#[test]
fn pole_guard() {
    let theta = &lookup("theta_riemann").unwrap().signature;
    for m in 0..4u32 {
        let u = c(0.5 + m as f64 + 1e-9);
        let e = moment_regularized(theta, 3, u, Precision::Standard).unwrap_err();
        assert_eq!(e, wiltonlab::Error::PoleProximity(m));
    }
}

/// I_n(x) = Γ(k−u)/Γ(u) − (2π/λ)^{k+1−2u} n^{(k+1)/2−u} M(u; x)
#[test]
fn contour_integral_matches_bessel_series() {
    for name in ["theta_riemann", "delta_ramanujan", "dirichlet_odd_q4", "dedekind_q3"] {
        let sig = &lookup(name).unwrap().signature;
        let k = sig.k;
        for du in [0.75, 0.25] {
            let u = c(k - du);
            let g = (ln_gamma(c(k) - u).unwrap() - ln_gamma(u).unwrap()).exp();
            for n in [1u64, 3] {
                for x in [0.5, 1.0] {
                    let i = mellin_barnes_moment(sig, n, u, x, None).unwrap();
                    let scale = ((k + 1.0 - 2.0 * u) * (sig.scale() * (n as f64).sqrt()).ln()).exp();
                    let m = moment_regularized_upto(sig, n, u, x, Precision::Standard).unwrap();
                    let other = g - scale * m;
                    assert!(rel(i, other) <= 1e-8, "{name} n={n} x={x}: {i} vs {other}");
                }
            }
        }
    }
    // u_theorem = 1.25 on theta, outside the classical strip
    let theta = &lookup("theta_riemann").unwrap().signature;
    let u = c(1.25);
    let i = mellin_barnes_moment(theta, 1, u, 1.0, None).unwrap();
    let g = (ln_gamma(c(0.5) - u).unwrap() - ln_gamma(u).unwrap()).exp();
    let m = moment_regularized(theta, 1, u, Precision::Standard).unwrap();
    let other = g - std::f64::consts::PI.powf(1.5 - 2.5) * m;
    assert!(rel(i, other) <= 1e-8, "{i} vs {other}");
}

#[test]
fn contour_abscissa_independent() {
    let theta = &lookup("theta_riemann").unwrap().signature;
    let delta = &lookup("delta_ramanujan").unwrap().signature;
    // admissible range (−0.75, 5.25) straddles the pole at z = 0
    let u = c(11.25);
    let a = mellin_barnes_moment(delta, 2, u, 1.0, Some(0.5)).unwrap();
    let b = mellin_barnes_moment(delta, 2, u, 1.0, Some(3.0)).unwrap();
    let d = mellin_barnes_moment(delta, 2, u, 1.0, Some(-0.5)).unwrap();
    assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
    assert!((a - d).norm() <= 1e-10 * (1.0 + a.norm()), "{a} vs {d}");
    let bad = mellin_barnes_moment(delta, 2, u, 1.0, Some(5.5)).unwrap_err();
    assert!(matches!(bad, wiltonlab::Error::ContourTooClose(_)));
    assert!(mellin_barnes_moment(delta, 2, u, 1.0, Some(0.0)).is_err());
    // conjugate symmetry
    let w = C64::new(1.1, 0.4);
    let p = mellin_barnes_moment(theta, 2, w, 0.7, None).unwrap();
    let q = mellin_barnes_moment(theta, 2, w.conj(), 0.7, None).unwrap();
    assert!((p - q.conj()).norm() <= 1e-10 * (1.0 + p.norm()));
}

#[test]
fn derivative_law() {
    let h = 1e-4;
    for (name, u) in [("theta_riemann", 1.25), ("delta_ramanujan", 11.25), ("dirichlet_odd_q4", 1.3)] {
        let sig = &lookup(name).unwrap().signature;
        for n in [1u64, 2] {
            let u = c(u);
            let fd = (mellin_barnes_moment(sig, n, u, 1.0 + h, None).unwrap()
                - mellin_barnes_moment(sig, n, u, 1.0 - h, None).unwrap())
                / (2.0 * h);
            let cf = moment_derivative_closed_form(sig, n, u, 1.0).unwrap();
            assert!((fd - cf).norm() <= 1e-5 * (1.0 + cf.norm()), "{name} n={n}: {fd} vs {cf}");
        }
    }
    // J_{−1/2}(z) ∝ cos z vanishes at z = π/2, i.e. 2π√x = π/2
    let theta = &lookup("theta_riemann").unwrap().signature;
    let d = moment_derivative_closed_form(theta, 1, c(0.3), 1.0 / 16.0).unwrap();
    assert!(d.norm() < 1e-14, "{d}");
    let before = moment_derivative_closed_form(theta, 1, c(0.3), 0.05).unwrap();
    let after = moment_derivative_closed_form(theta, 1, c(0.3), 0.08).unwrap();
    assert!(before.re < 0.0 && after.re > 0.0);
}

#[test]
fn sine_tail_second_mean_value_bound() {
    for u in [1.5, 2.0, 3.0] {
        for n in 1..=100u64 {
            let t = sine_tail(c(u), n).unwrap();
            let bound = 2.0 * (2.0 * std::f64::consts::PI * n as f64).powf(-u - 1.0);
            assert!(t.norm() <= bound, "u={u} n={n}: {t} > {bound}");
        }
    }
}

#[test]
fn wilton_classic_reproduces_theorem_one() {
    let r = evaluate_wilton_classic(c(2.0), c(3.0), 4000).unwrap();
    // ζ(2)ζ(3) − 1.5ζ(4) and the truncated right side, both mpmath
    assert!((r.lhs.re - 0.35381949973058883).abs() < 1e-13, "{}", r.lhs);
    assert!((r.rhs.re - 0.35375384400110078).abs() < 1e-13, "{}", r.rhs);
    assert!(r.residual <= 1e-4);
    let ratio = r.tail_diagnostics.residual_at_2n / r.residual;
    assert!((0.3..=0.7).contains(&ratio), "{ratio}");
    let s = evaluate_wilton_classic(c(3.0), c(2.0), 4000).unwrap();
    assert_eq!(r.rhs, s.rhs);
    assert!(evaluate_wilton_classic(c(0.7), c(1.3), 100).unwrap_err().is_domain_violation());
}

fn opts(mode: MomentMode, n: usize) -> EvalOptions {
    EvalOptions { mode, n, ..Default::default() }
}

#[test]
fn identity_reports() {
    let theta = IdentityInstance::lookup("theta_riemann").unwrap();
    let r = evaluate_identity(&theta, c(0.8), c(0.7), &opts(MomentMode::Classical, 400)).unwrap();
    assert!(r.residual.is_finite() && r.errors.is_empty());
    assert_eq!(r.u_theorem, c(0.4));
    // residue part is the closed form, same arithmetic
    assert_eq!(r.residue_part, residue_part(&theta.signature, c(0.4), c(0.35)).unwrap());
    assert_eq!(r.lhs - r.residue_part, r.lhs - residue_part(&theta.signature, r.u_theorem, r.v_theorem).unwrap());

    let a = evaluate_identity_diagonal(&theta, c(0.8), &opts(MomentMode::Regularized, 200)).unwrap();
    let b = evaluate_identity(&theta, c(0.8), c(0.8), &opts(MomentMode::Regularized, 200)).unwrap();
    assert_eq!(a, b);

    let delta = IdentityInstance::lookup("delta_ramanujan").unwrap();
    let o = EvalOptions { strategy: SumStrategy::BlockAveraged, ..opts(MomentMode::Regularized, 2000) };
    let r = evaluate_identity(&delta, c(14.5), c(14.5), &o).unwrap();
    assert_ne!(r.convergence_verdict, Verdict::Converged);
    assert!(r.tail_diagnostics.last_term_magnitude > 0.0);
    assert_eq!(r, evaluate_identity(&delta, c(14.5), c(14.5), &o).unwrap());
}

#[test]
fn tail_reading_converges_on_theta() {
    let theta = IdentityInstance::lookup("theta_riemann").unwrap();
    let o = EvalOptions { strategy: SumStrategy::Direct, ..opts(MomentMode::Tail, 2000) };
    for (u, v) in [(0.8, 0.7), (2.5, 2.2)] {
        let r = evaluate_identity(&theta, c(u), c(v), &o).unwrap();
        assert!(r.residual < 1e-4, "({u},{v}): {:e}", r.residual);
        let ratio = r.tail_diagnostics.residual_at_2n / r.residual;
        assert!((0.3..=0.7).contains(&ratio), "{ratio}");
    }
}

#[test]
fn domain_exclusions() {
    let theta = IdentityInstance::lookup("theta_riemann").unwrap();
    // corollary u = 3 is theorem u = k + 1
    assert!(evaluate_identity(&theta, c(3.0), c(3.0), &EvalOptions::default()).unwrap_err().is_domain_violation());
    assert!(evaluate_identity(&theta, c(1.5), c(0.7), &opts(MomentMode::Classical, 100))
        .unwrap_err()
        .is_domain_violation());
    assert!(evaluate_identity(&theta, c(0.8), c(0.7), &opts(MomentMode::Regularized, 8))
        .unwrap_err()
        .is_domain_violation());
    assert!(theta.in_stated_domain(c(2.5), c(2.2)));
    assert!(!theta.in_stated_domain(c(1.5), c(2.2)));
}

#[test]
fn theorem_terms() {
    let delta = IdentityInstance::lookup("delta_ramanujan").unwrap();
    let t = theorem_term(&delta, SeriesSide::BetaSeries, 2, c(14.5), c(14.5), MomentMode::Regularized).unwrap();
    let p = printed_term(&delta, SeriesSide::BetaSeries, 2, c(14.5), c(14.5), MomentMode::Regularized).unwrap();
    assert!(t.is_finite() && t.norm() > 0.0);
    assert!((t - p).norm() <= 1e-10 * t.norm());
}

#[test]
fn adjudication_tables() {
    let theta = IdentityInstance::lookup("theta_riemann").unwrap();
    let t = adjudicate_interpretations(&theta, &[1, 2, 5], c(0.6), c(0.7)).unwrap();
    assert!(t.all_consistent);
    assert!(t.rows.iter().all(|r| r.classical.is_some() && r.mellin_barnes.is_some()));

    let e = IdentityInstance::lookup("eisenstein_4").unwrap();
    let t = adjudicate_interpretations(&e, &[2, 4, 6, 12], c(5.5), c(5.3)).unwrap();
    let printed = &t.readings[0];
    let d = &t.readings[1];
    assert!(!printed.matches_generic);
    assert!(d.matches_generic, "{d:?}");

    let odd = IdentityInstance::lookup("dirichlet_odd_q4").unwrap();
    let t = adjudicate_interpretations(&odd, &[1, 3, 5], c(2.6), c(2.3)).unwrap();
    // m = 1 cannot tell the exponents apart
    assert_eq!(t.rows[0].printed_rel_diff, Some(0.0));
    assert!(!t.readings[0].matches_generic);
}

#[test]
fn series_strategies() {
    let basel = series_sum_fn(|n| c(1.0 / (n * n) as f64), 10_000, SumStrategy::Direct).unwrap();
    assert!((basel.value.re - 1.6448340718).abs() < 1e-10);
    let alt = |n: u64| c(if n.is_multiple_of(2) { 1.0 } else { -1.0 } / n as f64);
    let d = series_sum_fn(alt, 1000, SumStrategy::Direct).unwrap();
    let b = series_sum_fn(alt, 1000, SumStrategy::BlockAveraged).unwrap();
    let ln2 = std::f64::consts::LN_2;
    assert!((b.value.re + ln2).abs() < (d.value.re + ln2).abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classical_equals_regularized(du in 0.05f64..1.4, im in -1.0f64..1.0, n in 1u64..40) {
        for name in ["theta_riemann", "dirichlet_odd_q5_complex", "dedekind_q7"] {
            let sig = &lookup(name).unwrap().signature;
            let u = C64::new(sig.k - du, im);
            let cl = moment_classical(sig, n, u, 1e-13).unwrap().value;
            let rg = moment_regularized(sig, n, u, Precision::Standard).unwrap();
            prop_assert!(rel(cl, rg) <= 1e-9, "{name} n={n} u={u}: {cl} vs {rg}");
        }
    }

    #[test]
    fn regularized_conjugate_symmetric(re in -1.0f64..6.0, im in 0.01f64..3.0, x in 0.1f64..60.0) {
        let u = C64::new(re, im);
        let a = regularized_at(2.0, x, u, Precision::Standard).unwrap();
        let b = regularized_at(2.0, x, u.conj(), Precision::Standard).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn precisions_agree(re in -0.5f64..4.0, im in -2.0f64..2.0, x in 0.5f64..8.0) {
        let u = C64::new(re, im);
        prop_assume!((u - 1.5).norm() > 1e-3 && (u - 2.5).norm() > 1e-3 && (u - 3.5).norm() > 1e-3);
        let a = regularized_at(1.5, x, u, Precision::Standard).unwrap();
        let b = regularized_at(1.5, x, u, Precision::Compensated).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
    }
}
