//! Vietoris-Rips persistence in dimensions 0 and 1.
//!
//! H0 comes from Kruskal-style union-find over the sorted edges. H1 reduces
//! the triangle boundary columns over Z/2; rows are edges in filtration
//! order, so a triangle's initial pivot is its longest edge.

use alloc::vec::Vec;

use super::cloud::PointCloud;
use super::complex::xor_sorted;
use super::union_find::UnionFind;
use crate::diagram::{PersistenceDiagram, PersistencePoint};
use crate::error::{invalid, Error, Result};

const NO_EDGE: u32 = u32::MAX;

/// Persistence diagrams of the Vietoris-Rips filtration of `cloud` for
/// dimensions `0..=max_dim`.
///
/// An edge enters at exactly the Euclidean distance between its endpoints.
/// Classes still alive at `max_eps` are reported as essential with death
/// `max_eps`. Every H0 bar is kept (including zero-length bars from
/// coincident points) so H0 always has one point per input point.
pub fn vr_persistence(cloud: &PointCloud, max_dim: usize, max_eps: f64) -> Result<Vec<PersistenceDiagram>> {
    if max_dim > 1 {
        return Err(Error::UnsupportedDimension(max_dim));
    }
    if cloud.is_empty() {
        return Err(Error::Empty("point cloud"));
    }
    if !(max_eps > 0.0) || !max_eps.is_finite() {
        return Err(invalid!("max_eps must be positive and finite, got {max_eps}"));
    }
    let n = cloud.len();
    let edges = sorted_edges(cloud, max_eps);

    let mut uf = UnionFind::new(n);
    let mut h0 = Vec::with_capacity(n);
    let mut positive = alloc::vec![false; edges.len()];
    for (pos, e) in edges.iter().enumerate() {
        if uf.union(e.u as usize, e.v as usize).is_some() {
            h0.push(PersistencePoint::new(0.0, e.value, 0));
        } else {
            positive[pos] = true;
        }
    }
    let components = n - h0.len();
    h0.extend((0..components).map(|_| PersistencePoint::essential(0.0, max_eps, 0)));
    let mut out = alloc::vec![PersistenceDiagram { points: h0, cap: max_eps }];

    if max_dim >= 1 {
        let mut h1 = h1_points(n, &edges, &positive, max_eps);
        h1.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        out.push(PersistenceDiagram { points: h1, cap: max_eps });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    value: f64,
    u: u32,
    v: u32,
}

fn sorted_edges(cloud: &PointCloud, max_eps: f64) -> Vec<Edge> {
    let n = cloud.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = cloud.distance(i, j);
            if d <= max_eps {
                edges.push(Edge {
                    value: d,
                    u: i as u32,
                    v: j as u32,
                });
            }
        }
    }
    edges.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)));
    edges
}

fn h1_points(n: usize, edges: &[Edge], positive: &[bool], cap: f64) -> Vec<PersistencePoint> {
    let mut pos_of = alloc::vec![NO_EDGE; n * n];
    for (pos, e) in edges.iter().enumerate() {
        pos_of[e.u as usize * n + e.v as usize] = pos as u32;
        pos_of[e.v as usize * n + e.u as usize] = pos as u32;
    }

    // Each triangle as its three edge positions, descending. Since edge
    // positions follow filtration order, sorting these keys lexicographically
    // orders triangles by value with deterministic tie-breaking.
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ij = pos_of[i * n + j];
            if ij == NO_EDGE {
                continue;
            }
            for k in j + 1..n {
                let ik = pos_of[i * n + k];
                let jk = pos_of[j * n + k];
                if ik == NO_EDGE || jk == NO_EDGE {
                    continue;
                }
                let mut t = [ij, ik, jk];
                t.sort_unstable_by(|a, b| b.cmp(a));
                triangles.push(t);
            }
        }
    }
    triangles.sort_unstable();

    let mut pivot_owner: Vec<u32> = alloc::vec![NO_EDGE; edges.len()];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    let mut killed_by: Vec<Option<u32>> = alloc::vec![None; edges.len()];
    let unpaired_total = positive.iter().filter(|&&p| p).count();
    let mut paired = 0usize;
    for t in &triangles {
        if paired == unpaired_total {
            break;
        }
        let mut col = alloc::vec![t[2], t[1], t[0]];
        loop {
            let low = *col.last().unwrap() as usize;
            let owner = pivot_owner[low];
            if owner == NO_EDGE {
                pivot_owner[low] = reduced.len() as u32;
                killed_by[low] = Some(t[0]);
                paired += 1;
                reduced.push(col);
                break;
            }
            xor_sorted(&mut col, &reduced[owner as usize]);
            if col.is_empty() {
                break;
            }
        }
    }

    let mut points = Vec::new();
    for (pos, e) in edges.iter().enumerate() {
        if !positive[pos] {
            continue;
        }
        match killed_by[pos] {
            Some(t) => {
                let death = edges[t as usize].value;
                if death > e.value {
                    points.push(PersistencePoint::new(e.value, death, 1));
                }
            }
            None => points.push(PersistencePoint::essential(e.value, cap, 1)),
        }
    }
    points
}
