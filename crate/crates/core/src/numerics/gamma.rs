//! Gamma function via a Lanczos approximation with reflection.

use crate::{Error, Result, C64};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const POLE_RADIUS: f64 = 1e-12;

/// Index of the gamma pole within `POLE_RADIUS` of `s`, if any.
fn pole_index(s: C64) -> Option<i64> {
    if s.re > 0.5 {
        return None;
    }
    let r = s.re.round();
    if (s - C64::new(r, 0.0)).norm() < POLE_RADIUS {
        Some(r as i64)
    } else {
        None
    }
}

fn ln_gamma_lanczos(s: C64) -> C64 {
    let z = s - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + acc.ln() + LN_SQRT_2PI
}

fn ln_gamma_lanczos_real(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + acc.ln() + LN_SQRT_2PI
}

/// ln sin(πs) on the principal branch, stable for large |Im s|.
fn ln_sin_pi(s: C64) -> C64 {
    if s.im.abs() < 10.0 {
        return (s * PI).sin().ln();
    }
    if s.im < 0.0 {
        return ln_sin_pi(s.conj()).conj();
    }
    // sin(πs) = (i/2) e^{-iπs} (1 - e^{2πis}), and e^{2πis} is tiny here
    let i = C64::i();
    C64::new(0.5f64.ln(), PI / 2.0) - i * PI * s + (C64::new(1.0, 0.0) - (i * 2.0 * PI * s).exp()).ln()
}

/// ln Γ(s), continuous in Im s away from the negative real axis.
pub fn ln_gamma(s: C64) -> Result<C64> {
    if pole_index(s).is_some() {
        return Err(Error::PoleAt(s));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_lanczos(s))
    } else {
        Ok(C64::new(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_lanczos(1.0 - s))
    }
}

const FACTORIALS: [f64; 23] = {
    let mut f = [1.0; 23];
    let mut i = 1;
    while i < 23 {
        f[i] = f[i - 1] * i as f64;
        i += 1;
    }
    f
};

/// Γ(x) for real x.
pub fn gamma_real(x: f64) -> Result<f64> {
    if pole_index(C64::new(x, 0.0)).is_some() {
        return Err(Error::PoleAt(C64::new(x, 0.0)));
    }
    if (1.0..=23.0).contains(&x) && x.fract() == 0.0 {
        return Ok(FACTORIALS[x as usize - 1]);
    }
    if x >= 0.5 {
        Ok(ln_gamma_lanczos_real(x).exp())
    } else {
        Ok(PI / ((PI * x).sin() * ln_gamma_lanczos_real(1.0 - x).exp()))
    }
}

/// Γ(s) for complex s.
pub fn gamma(s: C64) -> Result<C64> {
    if s.im == 0.0 {
        return gamma_real(s.re).map(|g| C64::new(g, 0.0)).map_err(|_| Error::PoleAt(s));
    }
    Ok(ln_gamma(s)?.exp())
}

/// 1/Γ(s), entire; exactly zero at the poles of Γ.
pub fn rgamma(s: C64) -> C64 {
    if pole_index(s).is_some() {
        return C64::new(0.0, 0.0);
    }
    if s.im == 0.0 {
        return C64::new(1.0 / gamma_real(s.re).unwrap_or(f64::INFINITY), 0.0);
    }
    (-ln_gamma(s).expect("pole excluded above")).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Stirling series for ln Γ after shifting the argument past 30.
    fn stirling_ln_gamma(s: C64) -> C64 {
        let mut z = s;
        let mut shift = C64::new(0.0, 0.0);
        while z.norm() < 30.0 {
            shift += z.ln();
            z += 1.0;
        }
        let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
        let mut series = C64::new(0.0, 0.0);
        let mut zp = z;
        let z2 = z * z;
        for (j, bj) in b.iter().enumerate() {
            let n = 2.0 * (j + 1) as f64;
            series += *bj / (n * (n - 1.0) * zp);
            zp *= z2;
        }
        (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series - shift
    }

    #[test]
    fn closed_forms() {
        let g = gamma(C64::new(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma(C64::new(5.0, 0.0)).unwrap().re, 24.0);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn matches_stirling_oracle() {
        for s in
            [C64::new(2.5, 1.0), C64::new(0.7, -3.2), C64::new(12.0, 20.0), C64::new(-3.3, 0.4), C64::new(40.0, -5.0)]
        {
            let a = gamma(s).unwrap();
            let b = stirling_ln_gamma(s).exp();
            assert!((a - b).norm() <= 1e-12 * b.norm(), "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn poles_rejected() {
        assert!(matches!(gamma(C64::new(0.0, 0.0)), Err(Error::PoleAt(_))));
        assert!(matches!(gamma(C64::new(-3.0, 1e-13)), Err(Error::PoleAt(_))));
        assert_eq!(rgamma(C64::new(-2.0, 0.0)), C64::new(0.0, 0.0));
    }

    #[test]
    fn large_imaginary_reflection() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let t = 40.0;
        let g = ln_gamma(C64::new(-0.5, t)).unwrap();
        let direct = stirling_ln_gamma(C64::new(-0.5, t));
        assert!((g.re - direct.re).abs() < 1e-12);
        let h = ln_gamma(C64::new(0.5, t)).unwrap();
        assert!((2.0 * h.re - (PI.ln() - (PI * t).cosh().ln())).abs() < 1e-11);
    }
}
