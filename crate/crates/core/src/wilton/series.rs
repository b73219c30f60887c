//! Truncated sums of the theorem's series, with tail diagnostics.

use crate::numerics::NeumaierSum;
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SumStrategy {
    Direct,
    BlockAveraged,
    /// Block averaging for instances whose series converge only
    /// conditionally, direct summation otherwise.
    #[default]
    Auto,
}

impl SumStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SumStrategy::Direct => "direct",
            SumStrategy::BlockAveraged => "blockAveraged",
            SumStrategy::Auto => "auto",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "direct" => Some(SumStrategy::Direct),
            "blockaveraged" | "block" => Some(SumStrategy::BlockAveraged),
            "auto" => Some(SumStrategy::Auto),
            _ => None,
        }
    }

    pub fn resolve(self, conditional: bool) -> SumStrategy {
        match self {
            SumStrategy::Auto if conditional => SumStrategy::BlockAveraged,
            SumStrategy::Auto => SumStrategy::Direct,
            s => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesSum {
    /// The value under the requested strategy.
    pub value: C64,
    pub direct: C64,
    pub averaged: C64,
    pub last_term_magnitude: f64,
    /// max |S_j − mean| over the final window of partial sums.
    pub oscillation: f64,
    pub window: usize,
}

pub fn window_len(n: usize) -> usize {
    (n as f64).sqrt().ceil() as usize
}

/// Sums terms[0..] (term n at index n−1) in index order.
pub fn series_sum(terms: &[C64], strategy: SumStrategy) -> Result<SeriesSum> {
    let n = terms.len();
    if n < 16 {
        return Err(Error::Precondition(format!("series truncation must be at least 16 (got {n})")));
    }
    let w = window_len(n);
    let mut acc = NeumaierSum::new();
    let mut tail = Vec::with_capacity(w);
    for (i, t) in terms.iter().enumerate() {
        acc.add(*t);
        if i + w >= n {
            tail.push(acc.value());
        }
    }
    let direct = acc.value();
    let mut avg = NeumaierSum::new();
    for s in &tail {
        avg.add(*s);
    }
    let averaged = avg.value() / w as f64;
    let oscillation = tail.iter().map(|s| (s - averaged).norm()).fold(0.0, f64::max);
    let value = match strategy {
        SumStrategy::BlockAveraged => averaged,
        _ => direct,
    };
    Ok(SeriesSum { value, direct, averaged, last_term_magnitude: terms[n - 1].norm(), oscillation, window: w })
}

/// Generator form: terms f(1), …, f(n).
pub fn series_sum_fn(f: impl Fn(u64) -> C64, n: usize, strategy: SumStrategy) -> Result<SeriesSum> {
    let terms: Vec<C64> = (1..=n as u64).map(f).collect();
    series_sum(&terms, strategy)
}

/// Mean |t| over the √N window ending at index `end` (exclusive).
pub fn window_mean_magnitude(terms: &[C64], end: usize) -> f64 {
    let w = window_len(terms.len()).min(end).max(1);
    terms[end - w..end].iter().map(|t| t.norm()).sum::<f64>() / w as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basel_truncated() {
        let r = series_sum_fn(|n| C64::new(1.0 / (n * n) as f64, 0.0), 10_000, SumStrategy::Direct).unwrap();
        assert!((r.value.re - 1.6448340718).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn finite_support_same_for_both() {
        let f = |n: u64| C64::new(if n <= 5 { n as f64 } else { 0.0 }, 0.0);
        let a = series_sum_fn(f, 100, SumStrategy::Direct).unwrap();
        let b = series_sum_fn(f, 100, SumStrategy::BlockAveraged).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn alternating_averaging_helps() {
        let f = |n: u64| C64::new(if n.is_multiple_of(2) { 1.0 } else { -1.0 } / n as f64, 0.0);
        let a = series_sum_fn(f, 1000, SumStrategy::Direct).unwrap();
        let b = series_sum_fn(f, 1000, SumStrategy::BlockAveraged).unwrap();
        let t = -std::f64::consts::LN_2;
        assert!((b.value.re - t).abs() < (a.value.re - t).abs());
        assert!(series_sum_fn(f, 10, SumStrategy::Direct).is_err());
    }
}
