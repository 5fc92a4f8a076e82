#![allow(dead_code)]

use nalgebra::DMatrix;
use pts_core::grassmann::GrassmannPoint;
use pts_core::{PersistenceDiagram, PersistencePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite diagram with `n` points, births in `[0, 1)` and lifetimes in `[0, 1)`.
pub fn random_diagram(rng: &mut ChaCha8Rng, n: usize) -> PersistenceDiagram {
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let b: f64 = rng.random();
            let l: f64 = rng.random();
            (b, b + l)
        })
        .collect();
    PersistenceDiagram::from_pairs(&pairs, 1).unwrap()
}

/// Orthonormal basis of a random `p`-dimensional subspace of `R^n`.
pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, p: usize) -> GrassmannPoint {
    let m = DMatrix::from_fn(n, p, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = m.qr().q();
    GrassmannPoint::new(q.columns(0, p).into_owned(), 0).unwrap()
}

pub fn random_orthogonal(rng: &mut ChaCha8Rng, p: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(p, p, |_, _| rng.sample::<f64, _>(StandardNormal));
    m.qr().q()
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn finite(d: &PersistenceDiagram) -> Vec<[f64; 2]> {
    d.finite().map(|p| [p.birth, p.death]).collect()
}

/// Matching cost by exhaustive search over bijections of the diagonal
/// augmented point sets: each diagram gains the diagonal projections of the
/// other's points, and projection-to-projection pairs cost nothing.
/// Returns `(bottleneck, sum of cost^p)` minima for the given `p`.
pub fn exhaustive_matching(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> (f64, f64) {
    let (a, b) = (finite(x), finite(y));
    // an augmented slot is a diagram point or the diagonal projection of one
    #[derive(Clone, Copy)]
    enum Slot {
        Pt([f64; 2]),
        Diag([f64; 2]),
    }
    let left: Vec<Slot> = a.iter().map(|&q| Slot::Pt(q)).chain(b.iter().map(|&q| Slot::Diag(q))).collect();
    let right: Vec<Slot> = b.iter().map(|&q| Slot::Pt(q)).chain(a.iter().map(|&q| Slot::Diag(q))).collect();
    let proj = |q: [f64; 2]| {
        let m = (q[0] + q[1]) / 2.0;
        [m, m]
    };
    let cost = |l: Slot, r: Slot| -> f64 {
        let linf = |u: [f64; 2], v: [f64; 2]| (u[0] - v[0]).abs().max((u[1] - v[1]).abs());
        match (l, r) {
            (Slot::Pt(u), Slot::Pt(v)) => linf(u, v),
            (Slot::Pt(u), Slot::Diag(_)) => linf(u, proj(u)),
            (Slot::Diag(_), Slot::Pt(v)) => linf(proj(v), v),
            (Slot::Diag(_), Slot::Diag(_)) => 0.0,
        }
    };
    let n = left.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let c: Vec<Vec<f64>> = left.iter().map(|&l| right.iter().map(|&r| cost(l, r)).collect()).collect();
    let mut best_max = f64::INFINITY;
    let mut best_sum = f64::INFINITY;
    for_each_permutation(n, |perm| {
        let mut mx = 0.0_f64;
        let mut sum = 0.0;
        for (i, &j) in perm.iter().enumerate() {
            mx = mx.max(c[i][j]);
            sum += c[i][j].powf(p);
        }
        best_max = best_max.min(mx);
        best_sum = best_sum.min(sum);
    });
    (best_max, best_sum)
}

pub fn oracle_bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> f64 {
    exhaustive_matching(x, y, 1.0).0
}

pub fn oracle_wasserstein(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> f64 {
    exhaustive_matching(x, y, p).1.powf(1.0 / p)
}

/// Fractional ranks (ties share the mean rank).
pub fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let mean = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = mean;
        }
        i = j + 1;
    }
    r
}

pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    pearson(&ranks(a), &ranks(b))
}

/// Points of a diagram as sorted `(dim, birth, death, essential)` tuples.
pub fn sorted_points(d: &PersistenceDiagram) -> Vec<(u32, f64, f64, bool)> {
    let mut v: Vec<_> = d.points.iter().map(|p: &PersistencePoint| (p.dim, p.birth, p.death, p.essential)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Lifetimes of all points, essential ones included, descending.
pub fn all_lifetimes_desc(d: &PersistenceDiagram) -> Vec<f64> {
    let mut v: Vec<f64> = d.points.iter().map(|p| p.lifetime()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Random diagram whose size is drawn from `sizes`.
pub fn sized_diagram(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>) -> PersistenceDiagram {
    let n = rng.random_range(sizes);
    random_diagram(rng, n)
}
