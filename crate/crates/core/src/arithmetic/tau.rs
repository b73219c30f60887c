//! Ramanujan's τ via the q-expansion of Δ.

use crate::{Error, Result};
use std::sync::{Arc, RwLock};

pub const TAU_LIMIT: usize = 100_000;

/// Coefficients 1..=n of q∏(1−qⁿ)²⁴ (index 0 holds τ(1)), computed as the
/// eighth power of Jacobi's cube ∏(1−qⁿ)³ = Σ (−1)^k (2k+1) q^{k(k+1)/2}
/// with sparse multiplications.
fn tau_fast(n: usize) -> Vec<i128> {
    let mut jacobi: Vec<(usize, i128)> = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < n {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        jacobi.push((k * (k + 1) / 2, sign * (2 * k as i128 + 1)));
        k += 1;
    }
    let mut cur = vec![0i128; n];
    cur[0] = 1;
    for _ in 0..8 {
        let mut next = vec![0i128; n];
        for &(shift, c) in &jacobi {
            for (j, v) in cur[..n - shift].iter().enumerate() {
                if *v != 0 {
                    next[j + shift] += c * v;
                }
            }
        }
        cur = next;
    }
    cur
}

fn table_upto(n: usize) -> Arc<Vec<i128>> {
    static TABLE: RwLock<Option<Arc<Vec<i128>>>> = RwLock::new(None);
    if let Some(t) = TABLE.read().expect("tau table lock").as_ref() {
        if t.len() >= n {
            return Arc::clone(t);
        }
    }
    let mut guard = TABLE.write().expect("tau table lock");
    if let Some(t) = guard.as_ref() {
        if t.len() >= n {
            return Arc::clone(t);
        }
    }
    let size = n.next_power_of_two().clamp(1024, TAU_LIMIT);
    let t = Arc::new(tau_fast(size.max(n)));
    *guard = Some(Arc::clone(&t));
    t
}

/// τ(n) for 1 ≤ n ≤ 10⁵.
pub fn ramanujan_tau(n: u64) -> Result<i128> {
    if n == 0 || n as usize > TAU_LIMIT {
        return Err(Error::OutOfRange(format!("tau index {n} (need 1..=100000)")));
    }
    Ok(table_upto(n as usize)[n as usize - 1])
}

/// τ(1..=n) as a shared slice-backed table (index 0 holds τ(1)).
pub fn tau_table(n: usize) -> Result<Arc<Vec<i128>>> {
    if n > TAU_LIMIT {
        return Err(Error::OutOfRange(format!("tau table size {n} (limit 100000)")));
    }
    Ok(table_upto(n.max(1)))
}

/// The first N coefficients of q∏(1−qⁿ)²⁴ by naive factor-by-factor
/// multiplication. Quadratic in N; this is the independent oracle for τ.
pub fn q_expansion_eta24(n: usize) -> Result<Vec<i128>> {
    if n == 0 || n > TAU_LIMIT {
        return Err(Error::OutOfRange(format!("q-expansion length {n} (need 1..=100000)")));
    }
    // series for ∏(1−q^j)^24 truncated at q^{n−1}
    let mut c = vec![0i128; n];
    c[0] = 1;
    for j in 1..n {
        for _ in 0..24 {
            for i in (j..n).rev() {
                c[i] -= c[i - j];
            }
        }
    }
    Ok(c)
}
