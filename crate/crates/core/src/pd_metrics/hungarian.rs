//! Minimum-cost perfect assignment on a dense square cost matrix.
//!
//! Shortest augmenting paths with row/column potentials, O(n^3).

use alloc::vec::Vec;

/// Returns `(total_cost, assignment)` where `assignment[row] = column`.
/// `costs` is row-major `n x n`.
pub fn solve(n: usize, costs: &[f64]) -> (f64, Vec<usize>) {
    assert_eq!(costs.len(), n * n);
    if n == 0 {
        return (0.0, Vec::new());
    }
    // 1-based internally; index 0 is the virtual source column.
    let mut u = alloc::vec![0.0f64; n + 1];
    let mut v = alloc::vec![0.0f64; n + 1];
    let mut row_of = alloc::vec![0usize; n + 1];
    let mut way = alloc::vec![0usize; n + 1];
    let mut minv = alloc::vec![0.0f64; n + 1];
    let mut used = alloc::vec![false; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        minv.iter_mut().for_each(|m| *m = f64::INFINITY);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let row = &costs[(i0 - 1) * n..i0 * n];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = row[j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = alloc::vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().map(|(r, &c)| costs[r * n + c]).sum();
    (total, assignment)
}
