use proptest::prelude::*;
use wiltonlab::hecke::{
    completed_transform, functional_equation_residual, lookup, modular_relation_residual, registry, residue_at_k, Side,
};
use wiltonlab::C64;

const FE_OFFSETS: [(f64, f64); 5] = [(0.15, 0.4), (-0.35, 1.1), (0.6, -0.7), (0.25, 2.3), (-0.1, -1.6)];

#[test]
fn functional_equation_every_instance() {
    for inst in registry() {
        let k = inst.signature.k;
        for (dr, di) in FE_OFFSETS {
            let s = C64::new(k / 2.0 + dr, di);
            let r = functional_equation_residual(&inst.signature, s).unwrap();
            assert!(r <= 1e-7, "{} at {s}: {r:e}", inst.name);
        }
    }
}

#[test]
fn modular_relation_every_instance() {
    for inst in registry() {
        for y in [0.5, 1.0, 2.0] {
            let r = modular_relation_residual(&inst.signature, y, None).unwrap();
            assert!(r <= 1e-10, "{} at y={y}: {r:e}", inst.name);
        }
    }
}

/// (s−k)φ(s) averaged over s = k ± h cancels the linear term.
fn extrapolated_residue(name: &str) -> (C64, C64) {
    let sig = &lookup(name).unwrap().signature;
    let h = 1e-3;
    let f = |d: f64| {
        let s = C64::new(sig.k + d, 0.0);
        sig.phi_ref.evaluate(s).unwrap().value * d
    };
    ((f(h) + f(-h)) / 2.0, residue_at_k(sig, Side::Phi))
}

#[test]
fn residue_matches_extrapolation() {
    for name in ["theta_riemann", "dedekind_qi", "dedekind_q7", "epstein_selfdual", "eisenstein_4"] {
        let (num, closed) = extrapolated_residue(name);
        assert!((num - closed).norm() <= 1e-4, "{name}: {num} vs {closed}");
    }
    let (_, qi) = extrapolated_residue("dedekind_qi");
    assert!((qi.re - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn registry_round_trip_is_bit_identical() {
    for inst in registry() {
        let json = serde_json::to_string(inst).unwrap();
        let back: wiltonlab::hecke::RegistryInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, inst);
        let s = C64::new(inst.signature.k / 2.0 + 0.3, 0.7);
        let a = completed_transform(&inst.signature, Side::Phi, s).unwrap();
        let b = completed_transform(&back.signature, Side::Phi, s).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}

#[test]
fn lookup_normalizes_names() {
    assert_eq!(lookup("Theta-Riemann").unwrap().name, "theta_riemann");
    assert!(lookup("nope").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_functional_equation_anywhere(re in -1.5f64..2.0, im in -20.0f64..20.0) {
        let sig = &lookup("theta_riemann").unwrap().signature;
        let s = C64::new(re, im);
        prop_assume!((s - 0.5).norm() > 0.05 && s.norm() > 0.05 && (s + 1.0).norm() > 0.05);
        let r = functional_equation_residual(sig, s).unwrap();
        prop_assert!(r <= 1e-7, "{s}: {r:e}");
    }

    #[test]
    fn completed_transform_is_real_on_the_axis(s in 0.1f64..5.0) {
        for name in ["theta_riemann", "dedekind_q3", "epstein_sum4"] {
            let sig = &lookup(name).unwrap().signature;
            prop_assume!((s - sig.k).abs() > 1e-3);
            let v = completed_transform(sig, Side::Phi, C64::new(s, 0.0)).unwrap();
            prop_assert!(v.im.abs() <= 1e-13 * v.re.abs().max(1.0));
        }
    }

    #[test]
    fn modular_relation_for_random_y(y in 0.25f64..4.0) {
        for name in ["theta_riemann", "dirichlet_odd_q5_complex", "dedekind_q7"] {
            let sig = &lookup(name).unwrap().signature;
            let r = modular_relation_residual(sig, y, None).unwrap();
            prop_assert!(r <= 1e-10, "{name} y={y}: {r:e}");
        }
    }
}
