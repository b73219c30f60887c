//! Imaginary quadratic fields with a built-in class-number table.

use super::characters::{kronecker, DirichletCharacter};
use super::divisors;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// (d_K, h_K, w_K) for every fundamental discriminant −200 ≤ d_K ≤ −3.
pub const CLASS_NUMBERS: [(i64, u32, u32); 62] = [
    (-3, 1, 6),
    (-4, 1, 4),
    (-7, 1, 2),
    (-8, 1, 2),
    (-11, 1, 2),
    (-15, 2, 2),
    (-19, 1, 2),
    (-20, 2, 2),
    (-23, 3, 2),
    (-24, 2, 2),
    (-31, 3, 2),
    (-35, 2, 2),
    (-39, 4, 2),
    (-40, 2, 2),
    (-43, 1, 2),
    (-47, 5, 2),
    (-51, 2, 2),
    (-52, 2, 2),
    (-55, 4, 2),
    (-56, 4, 2),
    (-59, 3, 2),
    (-67, 1, 2),
    (-68, 4, 2),
    (-71, 7, 2),
    (-79, 5, 2),
    (-83, 3, 2),
    (-84, 4, 2),
    (-87, 6, 2),
    (-88, 2, 2),
    (-91, 2, 2),
    (-95, 8, 2),
    (-103, 5, 2),
    (-104, 6, 2),
    (-107, 3, 2),
    (-111, 8, 2),
    (-115, 2, 2),
    (-116, 6, 2),
    (-119, 10, 2),
    (-120, 4, 2),
    (-123, 2, 2),
    (-127, 5, 2),
    (-131, 5, 2),
    (-132, 4, 2),
    (-136, 4, 2),
    (-139, 3, 2),
    (-143, 10, 2),
    (-148, 2, 2),
    (-151, 7, 2),
    (-152, 6, 2),
    (-155, 4, 2),
    (-159, 10, 2),
    (-163, 1, 2),
    (-164, 8, 2),
    (-167, 11, 2),
    (-168, 4, 2),
    (-179, 5, 2),
    (-183, 8, 2),
    (-184, 4, 2),
    (-187, 2, 2),
    (-191, 13, 2),
    (-195, 4, 2),
    (-199, 9, 2),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImagQuadField {
    pub discriminant: i64,
    pub class_number: u32,
    pub unit_count: u32,
}

impl ImagQuadField {
    /// Field of fundamental discriminant d, −200 ≤ d ≤ −3.
    pub fn new(d: i64) -> Result<Self> {
        CLASS_NUMBERS
            .iter()
            .find(|e| e.0 == d)
            .map(|&(d, h, w)| ImagQuadField { discriminant: d, class_number: h, unit_count: w })
            .ok_or_else(|| Error::OutOfRange(format!("{d} is not a fundamental discriminant in [-200, -3]")))
    }

    pub fn character(&self) -> DirichletCharacter {
        DirichletCharacter::from_kronecker(self.discriminant)
    }
}

/// v_K(n) = Σ_{d|n} (d_K/d).
pub fn ideal_count(k: &ImagQuadField, n: u64) -> u64 {
    let s: i64 = divisors(n).into_iter().map(|d| kronecker(k.discriminant, d as i64) as i64).sum();
    s as u64
}

/// v_K(1..=n) by a divisor sieve; index 0 holds v_K(1).
pub fn ideal_count_table(k: &ImagQuadField, n: usize) -> Vec<u64> {
    let mut t = vec![0i64; n];
    for d in 1..=n {
        let c = kronecker(k.discriminant, d as i64) as i64;
        if c != 0 {
            let mut m = d;
            while m <= n {
                t[m - 1] += c;
                m += d;
            }
        }
    }
    t.into_iter().map(|x| x as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers() {
        let k = ImagQuadField::new(-4).unwrap();
        assert_eq!(ideal_count(&k, 5), 2);
        assert_eq!(ideal_count(&k, 3), 0);
        assert_eq!(ideal_count(&k, 1), 1);
        assert!(ImagQuadField::new(-12).is_err());
    }

    #[test]
    fn sieve_matches_direct() {
        for d in [-3, -4, -7, -163] {
            let k = ImagQuadField::new(d).unwrap();
            let t = ideal_count_table(&k, 300);
            for n in 1..=300u64 {
                assert_eq!(t[n as usize - 1], ideal_count(&k, n));
            }
        }
    }
}
