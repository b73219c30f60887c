//! Sequence acceleration for oscillatory tails.

use crate::C64;

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the extrapolated limit and an error estimate taken from the
/// disagreement of the two most recent entries in the highest even column.
pub fn wynn_epsilon(partial: &[C64]) -> (C64, f64) {
    let n = partial.len();
    match n {
        0 => return (C64::new(0.0, 0.0), f64::INFINITY),
        1 => return (partial[0], f64::INFINITY),
        2 => return (partial[1], (partial[1] - partial[0]).norm()),
        _ => {}
    }
    // columns[c][j] = ε_c^{(j)}; ε_{-1} = 0, ε_0 = S_j
    let mut prev = vec![C64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<C64> = partial.to_vec();
    let mut best = (partial[n - 1], (partial[n - 1] - partial[n - 2]).norm());
    let mut col = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        let mut broke = false;
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            if d.norm() == 0.0 || !d.norm().is_finite() {
                broke = true;
                break;
            }
            next.push(prev[j + 1] + d.inv());
        }
        if broke {
            break;
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 && cur.len() >= 2 {
            let m = cur.len();
            let est = cur[m - 1];
            let err = (cur[m - 1] - cur[m - 2]).norm();
            if est.re.is_finite() && est.im.is_finite() && err <= best.1 {
                best = (est, err);
            }
        }
    }
    best
}
