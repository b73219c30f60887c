//! Dedekind zeta of imaginary quadratic fields.

use super::dirichlet::dirichlet_l_value;
use super::zeta::riemann_zeta_with;
use super::LValue;
use crate::arithmetic::fields::ideal_count_table;
use crate::arithmetic::ImagQuadField;
use crate::numerics::NeumaierSum;
use crate::{Error, Result, C64};
use std::f64::consts::PI;

/// ζ_K(s) = ζ(s)·L(s, χ_{d_K}).
pub fn dedekind_zeta_value(k: &ImagQuadField, s: C64) -> Result<LValue> {
    let z = riemann_zeta_with(s, super::zeta::DEFAULT_CUTOFF, super::zeta::DEFAULT_TERMS)?;
    let l = dirichlet_l_value(&k.character(), s)?;
    Ok(LValue {
        value: z.value * l.value,
        error_estimate: z.error_estimate * l.value.norm() + l.error_estimate * z.value.norm(),
    })
}

pub fn dedekind_zeta(k: &ImagQuadField, s: C64) -> Result<C64> {
    dedekind_zeta_value(k, s).map(|v| v.value)
}

/// L(1, χ_d) = 2πh/(w√|d|), the leading coefficient of Σ_{n≤x} v_K(n).
pub fn ideal_density(k: &ImagQuadField) -> f64 {
    2.0 * PI * k.class_number as f64 / (k.unit_count as f64 * (k.discriminant.unsigned_abs() as f64).sqrt())
}

/// Σ_{n≤N} v_K(n) n^{−s} plus the main-term tail c·N^{1−s}/(s−1) − R(N)N^{−s},
/// where R(N) = Σ_{n≤N} v_K(n) − cN. The remaining error is bounded through
/// |R(x)| ≤ (1 + 4·max|Σχ|)√x by |s|(1+4S)N^{1/2−σ}/(σ−1/2).
pub fn dedekind_coefficient_sum(k: &ImagQuadField, s: C64, n: usize) -> Result<LValue> {
    if s.re <= 0.5 {
        return Err(Error::Domain(format!("coefficient route needs Re s > 1/2 (got {s})")));
    }
    let v = ideal_count_table(k, n);
    let mut acc = NeumaierSum::new();
    let mut count = 0u64;
    for (i, &c) in v.iter().enumerate() {
        count += c;
        if c != 0 {
            acc.add((-s * ((i + 1) as f64).ln()).exp() * c as f64);
        }
    }
    let c = ideal_density(k);
    let nf = n as f64;
    let n_s = (-s * nf.ln()).exp();
    let remainder = count as f64 - c * nf;
    acc.add(n_s * nf * c / (s - 1.0));
    acc.add(-n_s * remainder);
    let chi = k.character();
    let mut partial = C64::new(0.0, 0.0);
    let mut s_max = 0.0f64;
    for a in 0..chi.modulus {
        partial += chi.eval_u(a);
        s_max = s_max.max(partial.norm());
    }
    let bound = s.norm() * (1.0 + 4.0 * s_max) * nf.powf(0.5 - s.re) / (s.re - 0.5);
    Ok(LValue { value: acc.value(), error_estimate: bound + 1e-15 * acc.value().norm() * nf.log2() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_at_two() {
        let k = ImagQuadField::new(-4).unwrap();
        let v = dedekind_zeta(&k, C64::new(2.0, 0.0)).unwrap();
        assert!((v.re - 1.5067030099229850308).abs() < 1e-14, "{v}");
        let c = dedekind_coefficient_sum(&k, C64::new(2.0, 0.0), 10_000).unwrap();
        assert!((c.value - v).norm() <= c.error_estimate);
    }

    #[test]
    fn routes_agree_at_three() {
        for d in [-3, -4, -7, -23, -163] {
            let k = ImagQuadField::new(d).unwrap();
            let a = dedekind_zeta(&k, C64::new(3.0, 0.0)).unwrap();
            let b = dedekind_coefficient_sum(&k, C64::new(3.0, 0.0), 20_000).unwrap();
            assert!((a - b.value).norm() < 1e-6, "d={d}");
        }
    }

    #[test]
    fn remainder_bound_holds_empirically() {
        for d in [-3, -4, -7, -23] {
            let k = ImagQuadField::new(d).unwrap();
            let v = ideal_count_table(&k, 100_000);
            let chi = k.character();
            let mut p = C64::new(0.0, 0.0);
            let mut s_max = 0.0f64;
            for a in 0..chi.modulus {
                p += chi.eval_u(a);
                s_max = s_max.max(p.norm());
            }
            let c = ideal_density(&k);
            let mut count = 0u64;
            for (i, &x) in v.iter().enumerate() {
                count += x;
                let n = (i + 1) as f64;
                assert!((count as f64 - c * n).abs() <= (1.0 + 4.0 * s_max) * n.sqrt());
            }
        }
    }
}
