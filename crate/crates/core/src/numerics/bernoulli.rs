//! Exact Bernoulli numbers.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;

const MAX_INDEX: usize = 60;

fn exact_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut b: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        for m in 1..=MAX_INDEX {
            let mut binom = BigInt::from(1); // C(m+1, 0)
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// B_k for even k in [2, 60].
pub fn bernoulli(k: u32) -> Result<BigRational> {
    if k < 2 || k % 2 == 1 || k as usize > MAX_INDEX {
        return Err(Error::OutOfRange(format!("bernoulli index {k} (need even 2..=60)")));
    }
    Ok(exact_table()[k as usize].clone())
}

static FAULT: AtomicBool = AtomicBool::new(false);

/// Corrupt the floating-point Bernoulli table used by the zeta engines.
/// Exists only so the self-test can demonstrate that it catches the fault.
#[doc(hidden)]
pub fn inject_fault(on: bool) {
    FAULT.store(on, Ordering::SeqCst);
}

/// B_k as f64 for even k in [2, 60]; panics outside that range.
pub fn bernoulli_f64(k: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| exact_table().iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect());
    let v = t[k as usize];
    if k == 2 && FAULT.load(Ordering::Relaxed) {
        v * 1.001
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Akiyama–Tanigawa algorithm (yields B_1 = +1/2, irrelevant for even k).
    fn akiyama_tanigawa(n: usize) -> BigRational {
        let mut a: Vec<BigRational> = Vec::new();
        for m in 0..=n {
            a.push(BigRational::new(1.into(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(2).unwrap(), BigRational::new(1.into(), 6.into()));
        assert_eq!(bernoulli(4).unwrap(), BigRational::new((-1).into(), 30.into()));
        assert_eq!(bernoulli(12).unwrap(), BigRational::new((-691).into(), 2730.into()));
    }

    #[test]
    fn recurrence_matches_akiyama_tanigawa() {
        for k in (2..=40).step_by(2) {
            assert_eq!(bernoulli(k).unwrap(), akiyama_tanigawa(k as usize), "k={k}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(62).is_err());
    }
}
