//! Positive definite integral quadratic forms and representation numbers.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Q(v) = vᵀMv/2 with M the symmetric even-diagonal integer matrix stored in
/// `gram`. So x²+y² has gram [[2,0],[0,2]]. The discriminant is det(M/2),
/// which is 1 for x²+y².
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub gram: Vec<Vec<i64>>,
}

/// Budget of lattice points visited by a single enumeration.
pub const POINT_BUDGET: f64 = 3.0e7;

fn rational_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

/// Determinant and inverse by Gauss–Jordan over the rationals.
fn det_and_inverse(m: &[Vec<i64>]) -> (BigRational, Option<Vec<Vec<BigRational>>>) {
    let n = m.len();
    let mut a = rational_matrix(m);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return (BigRational::zero(), None);
        };
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    (det, Some(inv))
}

impl QuadraticForm {
    #[allow(clippy::needless_range_loop)]
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let m = gram.len();
        if m == 0 || gram.iter().any(|r| r.len() != m) {
            return Err(Error::Domain("gram matrix must be square and non-empty".into()));
        }
        for i in 0..m {
            if gram[i][i] % 2 != 0 {
                return Err(Error::Domain("gram matrix must have even diagonal (Q(v) = vᵀMv/2)".into()));
            }
            for j in 0..m {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Domain("gram matrix must be symmetric".into()));
                }
            }
        }
        for k in 1..=m {
            let minor: Vec<Vec<i64>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !det_and_inverse(&minor).0.is_positive() {
                return Err(Error::Domain("gram matrix must be positive definite".into()));
            }
        }
        Ok(QuadraticForm { gram })
    }

    /// x₁² + … + x_m².
    pub fn sum_of_squares(m: usize) -> Self {
        let gram = (0..m).map(|i| (0..m).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
        QuadraticForm { gram }
    }

    pub fn dimension(&self) -> usize {
        self.gram.len()
    }

    /// det(M/2) exactly.
    pub fn discriminant_exact(&self) -> BigRational {
        let m = self.dimension() as u32;
        det_and_inverse(&self.gram).0 / BigRational::from_integer(BigInt::from(2).pow(m))
    }

    pub fn discriminant(&self) -> f64 {
        self.discriminant_exact().to_f64().unwrap_or(f64::NAN)
    }

    /// The dual form vᵀ(M/2)⁻¹v, provided it is again integer valued.
    pub fn inverse(&self) -> Result<QuadraticForm> {
        let (_, inv) = det_and_inverse(&self.gram);
        let inv = inv.ok_or_else(|| Error::Domain("singular gram matrix".into()))?;
        // gram of the dual is 2·(M/2)⁻¹ = 4M⁻¹
        let four = BigRational::from_integer(BigInt::from(4));
        let mut out = Vec::new();
        for row in &inv {
            let mut r = Vec::new();
            for x in row {
                let y = x * &four;
                if !y.is_integer() {
                    return Err(Error::Domain("dual form is not integral".into()));
                }
                r.push(y.to_integer().to_i64().ok_or_else(|| Error::Domain("dual form overflow".into()))?);
            }
            out.push(r);
        }
        QuadraticForm::new(out)
    }

    /// 2Q(v) = vᵀMv in exact integer arithmetic.
    pub fn eval2(&self, v: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                s += g as i128 * v[i] as i128 * v[j] as i128;
            }
        }
        s
    }

    /// Euclidean unit-ball volume π^{m/2}/Γ(m/2+1); the ellipsoid {Q ≤ 1}
    /// has volume this over √D.
    pub fn unit_ball_volume(&self) -> f64 {
        let m = self.dimension() as f64;
        std::f64::consts::PI.powf(m / 2.0) / crate::numerics::gamma_real(m / 2.0 + 1.0).unwrap_or(f64::NAN)
    }

    /// Upper bound ½√(Σ|A_ij|) on the Q-norm of any point of the centred
    /// unit cube, A = M/2.
    pub fn cube_radius(&self) -> f64 {
        let s: f64 = self.gram.iter().flatten().map(|&x| (x as f64 / 2.0).abs()).sum();
        0.5 * s.sqrt()
    }

    fn is_diagonal(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
    }

    /// Diagonal forms: convolve the one-variable counts #{x : a·x² = n}.
    fn diagonal_table(&self, n: usize) -> Vec<u64> {
        let mut acc = vec![0u64; n + 1];
        acc[0] = 1;
        for (i, row) in self.gram.iter().enumerate() {
            let a = (row[i] / 2) as usize;
            let mut next = vec![0u64; n + 1];
            for (j, &c) in acc.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                next[j] += c;
                let mut x = 1usize;
                while j + a * x * x <= n {
                    next[j + a * x * x] += 2 * c;
                    x += 1;
                }
            }
            acc = next;
        }
        acc
    }

    /// Fincke–Pohst coefficients: Q(v) = Σ_i q_ii (v_i + Σ_{j>i} q_ij v_j)².
    fn pohst(&self) -> Vec<Vec<f64>> {
        let m = self.dimension();
        let mut q: Vec<Vec<f64>> = self.gram.iter().map(|r| r.iter().map(|&x| x as f64 / 2.0).collect()).collect();
        for i in 0..m {
            for j in i + 1..m {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..m {
                for l in k..m {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        q
    }

    /// Estimated number of lattice points with Q(v) ≤ n.
    pub fn point_estimate(&self, n: f64) -> f64 {
        let m = self.dimension() as f64;
        let rho = self.cube_radius();
        self.unit_ball_volume() / self.discriminant().sqrt() * (n.sqrt() + rho).powf(m)
    }

    /// r_Q(0..=n_max) by a single ellipsoid enumeration. Entry 0 is r_Q(0) = 1.
    pub fn rep_count_table(&self, n_max: u64) -> Result<Vec<u64>> {
        if self.is_diagonal() {
            return Ok(self.diagonal_table(n_max as usize));
        }
        if self.point_estimate(n_max as f64) > POINT_BUDGET {
            return Err(Error::OutOfRange(format!(
                "enumerating Q ≤ {n_max} needs ~{:.2e} lattice points (budget {POINT_BUDGET:.0e})",
                self.point_estimate(n_max as f64)
            )));
        }
        let m = self.dimension();
        let q = self.pohst();
        let mut counts = vec![0u64; n_max as usize + 1];
        let mut v = vec![0i64; m];
        self.enumerate(&q, m - 1, n_max as f64, n_max, &mut v, &mut counts);
        Ok(counts)
    }

    fn enumerate(&self, q: &[Vec<f64>], i: usize, budget: f64, n_max: u64, v: &mut [i64], counts: &mut [u64]) {
        let m = self.dimension();
        let center: f64 = -(i + 1..m).map(|j| q[i][j] * v[j] as f64).sum::<f64>();
        let slack = 1e-9 * (1.0 + budget);
        let radius = ((budget + slack).max(0.0) / q[i][i]).sqrt() + 1e-9;
        let lo = (center - radius).ceil() as i64;
        let hi = (center + radius).floor() as i64;
        for x in lo..=hi {
            v[i] = x;
            let t = x as f64 - center;
            let rest = budget - q[i][i] * t * t;
            if i == 0 {
                let two_q = self.eval2(v);
                if two_q <= 2 * n_max as i128 {
                    counts[(two_q / 2) as usize] += 1;
                }
            } else if rest > -slack {
                self.enumerate(q, i - 1, rest, n_max, v, counts);
            }
        }
        v[i] = 0;
    }
}

/// r_Q(n): number of v ∈ Z^m with Q(v) = n.
pub fn rep_count(q: &QuadraticForm, n: u64) -> Result<u64> {
    let limit = 1_000_000 / q.dimension() as u64;
    if n > limit {
        return Err(Error::OutOfRange(format!("repCount argument {n} exceeds 10⁶/m = {limit}")));
    }
    Ok(q.rep_count_table(n)?[n as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(q: &QuadraticForm, n: u64, box_r: i64) -> u64 {
        let m = q.dimension();
        let mut count = 0;
        let mut v = vec![-box_r; m];
        loop {
            if q.eval2(&v) == 2 * n as i128 {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return count;
                }
                v[i] += 1;
                if v[i] <= box_r {
                    break;
                }
                v[i] = -box_r;
                i += 1;
            }
        }
    }

    #[test]
    fn two_squares() {
        let q = QuadraticForm::sum_of_squares(2);
        assert_eq!(rep_count(&q, 1).unwrap(), 4);
        assert_eq!(rep_count(&q, 3).unwrap(), 0);
        assert_eq!(rep_count(&q, 5).unwrap(), 8);
        assert_eq!(q.discriminant(), 1.0);
        assert_eq!(q.inverse().unwrap(), q);
    }

    #[test]
    fn enumeration_matches_box_for_skew_forms() {
        // x² + xy + 3y², and a ternary form with off-diagonal terms
        let forms = [
            QuadraticForm::new(vec![vec![2, 1], vec![1, 6]]).unwrap(),
            QuadraticForm::new(vec![vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap(),
        ];
        for q in &forms {
            let t = q.rep_count_table(40).unwrap();
            for n in 0..=40u64 {
                assert_eq!(t[n as usize], brute(q, n, 12), "n={n}");
            }
        }
    }

    #[test]
    fn diagonal_shortcut_matches_enumeration() {
        let q = QuadraticForm::new(vec![vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 6]]).unwrap();
        let fast = q.rep_count_table(60).unwrap();
        let mut counts = vec![0u64; 61];
        let mut v = vec![0i64; 3];
        q.enumerate(&q.pohst(), 2, 60.0, 60, &mut v, &mut counts);
        assert_eq!(fast, counts);
    }

    #[test]
    fn rejects_bad_gram() {
        assert!(QuadraticForm::new(vec![vec![1, 0], vec![0, 2]]).is_err());
        assert!(QuadraticForm::new(vec![vec![2, 3], vec![3, 2]]).is_err());
    }
}
