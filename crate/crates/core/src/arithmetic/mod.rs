//! Exact coefficient families and divisor convolutions.

pub mod characters;
pub mod fields;
pub mod forms;
pub mod sequences;
pub mod tau;

pub use characters::{character_group, gauss_sum, kronecker, DirichletCharacter, Parity};
pub use fields::{ideal_count, ImagQuadField};
pub use forms::{rep_count, QuadraticForm};
pub use sequences::{CoefficientSeq, SeqKind};
pub use tau::{q_expansion_eta24, ramanujan_tau};

use crate::numerics::NeumaierSum;
use crate::C64;

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// d^z computed as exp(z ln d); exact 1 for d = 1.
pub fn pow_c(d: u64, z: C64) -> C64 {
    if d == 1 {
        return C64::new(1.0, 0.0);
    }
    if z.im == 0.0 {
        return C64::new((d as f64).powf(z.re), 0.0);
    }
    (z * (d as f64).ln()).exp()
}

/// σ_z(n) = Σ_{d|n} d^z via the multiplicative product formula.
pub fn divisor_sigma(z: C64, n: u64) -> C64 {
    assert!(n >= 1, "divisor_sigma needs n ≥ 1");
    let mut prod = C64::new(1.0, 0.0);
    for (p, e) in factorize(n) {
        let pz = pow_c(p, z);
        let mut acc = C64::new(1.0, 0.0);
        let mut pw = C64::new(1.0, 0.0);
        for _ in 0..e {
            pw *= pz;
            acc += pw;
        }
        prod *= acc;
    }
    prod
}

/// Σ_{d|n} a(d)·b(n/d)·d^z over increasing divisors, compensated.
pub fn convolve_with(n: u64, z: C64, a: impl Fn(u64) -> C64, b: impl Fn(u64) -> C64) -> C64 {
    let mut acc = NeumaierSum::new();
    for d in divisors(n) {
        let ad = a(d);
        if ad == C64::new(0.0, 0.0) {
            continue;
        }
        let be = b(n / d);
        if be == C64::new(0.0, 0.0) {
            continue;
        }
        acc.add(ad * be * pow_c(d, z));
    }
    acc.value()
}

/// σ_{a,b,z}(n) = Σ_{d|n} a_d b_{n/d} d^z.
pub fn divisor_convolution(a: &CoefficientSeq, b: &CoefficientSeq, z: C64, n: u64) -> C64 {
    assert!(n >= 1, "divisor_convolution needs n ≥ 1");
    convolve_with(n, z, |d| a.value_at(d), |e| b.value_at(e))
}
