//! Bottleneck and p-Wasserstein distances between persistence diagrams.
//!
//! Both diagrams are augmented with the diagonal projections of the other's
//! points, giving an `(n1 + n2)`-square assignment problem under the L-inf
//! ground metric. A point `(b, d)` projects to `((b+d)/2, (b+d)/2)` at cost
//! `|d - b| / 2`; diagonal-to-diagonal pairs cost nothing.

pub mod hopcroft_karp;
pub mod hungarian;

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::diagram::PersistenceDiagram;
use crate::error::{invalid, Error, Result};

/// How essential (capped) classes take part in matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Essentials {
    /// Drop essential points before matching.
    #[default]
    Exclude,
    /// Match essential points like finite ones; caps must agree.
    Include,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DistanceMode {
    Bottleneck,
    Wasserstein(f64),
}

/// A diagram point in the plane, `[birth, death]`.
type Pt = [f64; 2];

fn linf(a: Pt, b: Pt) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

fn to_diagonal(a: Pt) -> f64 {
    (a[1] - a[0]).abs() / 2.0
}

fn matched_points(x: &PersistenceDiagram, y: &PersistenceDiagram, essentials: Essentials) -> Result<(Vec<Pt>, Vec<Pt>)> {
    let include = essentials == Essentials::Include;
    if include && (x.has_essential() || y.has_essential()) && x.cap != y.cap {
        return Err(Error::CapMismatch(x.cap, y.cap));
    }
    let dims = x.points.iter().chain(&y.points).map(|p| p.dim);
    let mut first = None;
    for d in dims {
        match first {
            None => first = Some(d),
            Some(f) if f != d => return Err(Error::DimensionMismatch(f as usize, d as usize)),
            _ => {}
        }
    }
    let pick = |d: &PersistenceDiagram| -> Vec<Pt> {
        d.points
            .iter()
            .filter(|p| include || !p.essential)
            .map(|p| [p.birth, p.death])
            .collect()
    };
    Ok((pick(x), pick(y)))
}

/// The augmented cost matrix, row-major. Rows are `x` then one diagonal slot
/// per `y` point; columns are `y` then one diagonal slot per `x` point.
fn cost_matrix(x: &[Pt], y: &[Pt]) -> (usize, Vec<f64>) {
    let (n1, n2) = (x.len(), y.len());
    let n = n1 + n2;
    let mut c = alloc::vec![0.0; n * n];
    for i in 0..n1 {
        let row = &mut c[i * n..(i + 1) * n];
        for j in 0..n2 {
            row[j] = linf(x[i], y[j]);
        }
        let diag = to_diagonal(x[i]);
        row[n2..].iter_mut().for_each(|v| *v = diag);
    }
    for j in 0..n2 {
        let row = &mut c[(n1 + j) * n..(n1 + j + 1) * n];
        for (k, v) in row[..n2].iter_mut().enumerate() {
            *v = to_diagonal(y[k]);
        }
    }
    (n, c)
}

/// Bottleneck distance, excluding essential classes.
pub fn bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> Result<f64> {
    bottleneck_with(x, y, Essentials::Exclude)
}

/// Exact bottleneck distance: binary search over the sorted candidate costs,
/// testing each threshold for a perfect matching with Hopcroft-Karp.
pub fn bottleneck_with(x: &PersistenceDiagram, y: &PersistenceDiagram, essentials: Essentials) -> Result<f64> {
    let (xp, yp) = matched_points(x, y, essentials)?;
    Ok(bottleneck_points(&xp, &yp))
}

fn bottleneck_points(x: &[Pt], y: &[Pt]) -> f64 {
    let (n, costs) = cost_matrix(x, y);
    if n == 0 {
        return 0.0;
    }
    let mut candidates = costs.clone();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let feasible = |t: f64| -> bool {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|r| (0..n).filter(|&c| costs[r * n + c] <= t).collect())
            .collect();
        hopcroft_karp::max_matching(&adj, n) == n
    };
    // The largest candidate always admits a perfect matching.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// p-Wasserstein distance, excluding essential classes.
pub fn wasserstein(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> Result<f64> {
    wasserstein_with(x, y, p, Essentials::Exclude)
}

/// Exact p-Wasserstein distance via the Hungarian algorithm on the
/// augmented matrix of `cost^p`.
pub fn wasserstein_with(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64, essentials: Essentials) -> Result<f64> {
    check_p(p)?;
    let (xp, yp) = matched_points(x, y, essentials)?;
    let (n, mut costs) = cost_matrix(&xp, &yp);
    if p != 1.0 {
        costs.iter_mut().for_each(|c| *c = libm::pow(*c, p));
    }
    let (total, _) = hungarian::solve(n, &costs);
    Ok(root(total.max(0.0), p))
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid!("Wasserstein order p must be finite and >= 1, got {p}"));
    }
    Ok(())
}

fn root(total: f64, p: f64) -> f64 {
    if p == 1.0 {
        total
    } else if p == 2.0 {
        libm::sqrt(total)
    } else {
        libm::pow(total, 1.0 / p)
    }
}

pub fn distance(x: &PersistenceDiagram, y: &PersistenceDiagram, mode: DistanceMode, essentials: Essentials) -> Result<f64> {
    match mode {
        DistanceMode::Bottleneck => bottleneck_with(x, y, essentials),
        DistanceMode::Wasserstein(p) => wasserstein_with(x, y, p, essentials),
    }
}

/// Maximum `|X| + |Y|` accepted by [`brute_force_distance`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Reference distance by enumerating every partial matching between the
/// finite points of `x` and `y`; unmatched points go to the diagonal.
pub fn brute_force_distance(x: &PersistenceDiagram, y: &PersistenceDiagram, mode: DistanceMode) -> Result<f64> {
    if let DistanceMode::Wasserstein(p) = mode {
        check_p(p)?;
    }
    let (xp, yp) = matched_points(x, y, Essentials::Exclude)?;
    let total = xp.len() + yp.len();
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleTooLarge {
            got: total,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut used = alloc::vec![false; yp.len()];
    let mut costs = Vec::with_capacity(total);
    let mut best = f64::INFINITY;
    enumerate(&xp, &yp, 0, &mut used, &mut costs, &mut |c: &[f64]| {
        let v = match mode {
            DistanceMode::Bottleneck => c.iter().copied().fold(0.0, f64::max),
            DistanceMode::Wasserstein(p) => root(c.iter().map(|&v| libm::pow(v, p)).sum(), p),
        };
        if v < best {
            best = v;
        }
    });
    Ok(best)
}

fn enumerate(
    x: &[Pt],
    y: &[Pt],
    i: usize,
    used: &mut [bool],
    costs: &mut Vec<f64>,
    visit: &mut impl FnMut(&[f64]),
) {
    if i == x.len() {
        let base = costs.len();
        for (j, &u) in used.iter().enumerate() {
            if !u {
                costs.push(to_diagonal(y[j]));
            }
        }
        visit(costs);
        costs.truncate(base);
        return;
    }
    costs.push(to_diagonal(x[i]));
    enumerate(x, y, i + 1, used, costs, visit);
    costs.pop();
    for j in 0..y.len() {
        if !used[j] {
            used[j] = true;
            costs.push(linf(x[i], y[j]));
            enumerate(x, y, i + 1, used, costs, visit);
            costs.pop();
            used[j] = false;
        }
    }
}
