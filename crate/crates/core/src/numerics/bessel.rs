//! Bessel function of the first kind for real order ν ≥ −1/2 and real x ≥ 0.
//!
//! Three regimes: the power series where it does not cancel, Hankel's
//! asymptotic expansion for x ≥ 25 + ν²/2, and Miller's backward recurrence
//! (normalized by the Neumann sum for (x/2)^ν₀) in between. Half-integer
//! orders with moderate ν²/x use the terminating trigonometric closed form.

use super::gamma::gamma_real;
use super::summation::NeumaierSum;
use crate::C64;
use std::f64::consts::PI;

fn series_sum(nu: f64, x: f64) -> f64 {
    // Σ (−x²/4)^m / (m! Γ(m+ν+1)) · Γ(ν+1)
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(C64::new(term, 0.0));
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + nu));
        acc.add(C64::new(term, 0.0));
        if term.abs() < 1e-18 * acc.value().re.abs() || m > 500.0 {
            break;
        }
    }
    acc.value().re
}

fn use_series(nu: f64, x: f64) -> bool {
    x <= 2.0 || 0.25 * x * x <= nu + 1.0
}

fn hankel(nu: f64, x: f64, terminating: bool) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0f64;
    let mut q = 0.0f64;
    let mut a = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    loop {
        let mag = a.abs();
        if !terminating && (mag > prev || mag < 1e-17 * p.abs().max(q.abs()).max(1e-300)) {
            break;
        }
        if terminating && a == 0.0 {
            break;
        }
        let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        if k.is_multiple_of(2) {
            p += sign * a;
        } else {
            q += sign * a;
        }
        prev = mag;
        k += 1;
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if k > 400 {
            break;
        }
    }
    // χ = x − (2ν+1)π/4, expanded so the large x enters only through sin/cos
    let phi = (2.0 * nu + 1.0) * PI / 4.0;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn half_integer_index(nu: f64) -> Option<i64> {
    let t = 2.0 * nu;
    if t.fract() == 0.0 && (t as i64).rem_euclid(2) == 1 {
        Some(((t - 1.0) / 2.0) as i64)
    } else {
        None
    }
}

fn miller(nu: f64, x: f64) -> f64 {
    let (nu0, target) = if nu >= 0.0 { (nu - nu.floor(), nu.floor() as usize) } else { (nu, 0) };
    let top = 1.1 * x.max(target as f64) + 60.0 + 4.0 * x.max(target as f64).sqrt();
    let mut m_start = top.ceil() as usize;
    if m_start % 2 == 1 {
        m_start += 1;
    }
    // g_k = Γ(ν₀+k)/k!, c_0 = Γ(ν₀+1), c_k = (ν₀+2k) g_k
    let ck = |k: usize, g: f64| if k == 0 { gamma_real(nu0 + 1.0).unwrap_or(1.0) } else { (nu0 + 2.0 * k as f64) * g };
    let mut weights = vec![0.0; m_start / 2 + 1];
    let mut g = gamma_real(nu0 + 1.0).unwrap_or(1.0); // g_1 = Γ(ν₀+1)/1!
    weights[0] = ck(0, 0.0);
    for (k, w) in weights.iter_mut().enumerate().skip(1) {
        *w = ck(k, g);
        g *= (nu0 + k as f64) / (k as f64 + 1.0);
    }
    let mut f_next = 0.0;
    let mut f = 1e-300;
    let mut norm = 0.0;
    let mut saved = 0.0;
    let mut j = m_start;
    loop {
        if j == target {
            saved = f;
        }
        if j.is_multiple_of(2) {
            norm += weights[j / 2] * f;
        }
        if j == 0 {
            break;
        }
        let f_prev = 2.0 * (nu0 + j as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        j -= 1;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            saved *= 1e-250;
        }
    }
    saved * (0.5 * x).powf(nu0) / norm
}

/// J_ν(x). Returns NaN outside ν ≥ −1/2, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if !(nu >= -0.5) || !(x >= 0.0) {
        return f64::NAN;
    }
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu == -0.5 {
            f64::INFINITY
        } else {
            0.0
        };
    }
    if let Some(n) = half_integer_index(nu) {
        let nf = n as f64;
        if n <= 0 || x >= (nf * (nf + 1.0)).max(1.0) {
            return hankel(nu, x, true);
        }
    }
    if use_series(nu, x) {
        return (0.5 * x).powf(nu) / gamma_real(nu + 1.0).unwrap_or(f64::INFINITY) * series_sum(nu, x);
    }
    if x >= 25.0 + 0.5 * nu * nu {
        return hankel(nu, x, false);
    }
    miller(nu, x)
}

/// J_ν(x)/x^ν, continuous at x = 0 with value 2^{−ν}/Γ(ν+1).
pub fn bessel_j_scaled(nu: f64, x: f64) -> f64 {
    if !(nu >= -0.5) || !(x >= 0.0) {
        return f64::NAN;
    }
    if use_series(nu, x) {
        return 0.5f64.powf(nu) / gamma_real(nu + 1.0).unwrap_or(f64::INFINITY) * series_sum(nu, x);
    }
    bessel_j(nu, x) / x.powf(nu)
}
