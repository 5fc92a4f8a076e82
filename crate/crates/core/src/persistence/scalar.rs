//! H0 persistence of a scalar function on graph vertices.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::union_find::UnionFind;
use crate::diagram::{PersistenceDiagram, PersistencePoint};
use crate::error::{invalid, Error, Result};

/// A graph with one real value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGraph {
    values: Vec<f64>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Sublevel,
    Superlevel,
}

impl ScalarGraph {
    pub fn new(values: Vec<f64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("scalar graph"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid!("vertex {i} has a non-finite value"));
        }
        for &(u, v) in &edges {
            if u >= values.len() || v >= values.len() {
                return Err(Error::MissingVertex(u, v));
            }
            if u == v {
                return Err(invalid!("self-loop at vertex {u}"));
            }
        }
        Ok(Self { values, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Union-find sweep over the vertices in value order (ties by vertex index).
///
/// An edge becomes active once both endpoints are. When two components
/// meet, the one born later dies at the current vertex's value. Zero-length
/// bars are dropped. Each surviving component yields an essential bar
/// capped at the last value of the sweep (the maximum for sublevel sets, the
/// minimum for superlevel sets).
pub fn scalar_field_h0(graph: &ScalarGraph, direction: Direction) -> PersistenceDiagram {
    let n = graph.vertex_count();
    let values = graph.values();
    let mut order: Vec<usize> = (0..n).collect();
    match direction {
        Direction::Sublevel => order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b))),
        Direction::Superlevel => order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b))),
    }
    let mut rank = alloc::vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut adjacency: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for &(u, v) in graph.edges() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }

    let cap = values[*order.last().unwrap()];
    let mut uf = UnionFind::new(n);
    // Earliest-ranked vertex of each component, indexed by root.
    let mut oldest: Vec<usize> = (0..n).collect();
    let mut points = Vec::new();
    for &v in &order {
        for &u in &adjacency[v] {
            if rank[u] > rank[v] {
                continue;
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                continue;
            }
            let (elder, younger) = if rank[oldest[ru]] < rank[oldest[rv]] {
                (oldest[ru], oldest[rv])
            } else {
                (oldest[rv], oldest[ru])
            };
            let birth = values[younger];
            if birth != values[v] {
                points.push(PersistencePoint::new(birth, values[v], 0));
            }
            let root = uf.union(ru, rv).unwrap();
            oldest[root] = elder;
        }
    }
    for v in 0..n {
        if uf.find(v) == v {
            points.push(PersistencePoint::essential(values[oldest[v]], cap, 0));
        }
    }
    let mut d = PersistenceDiagram { points, cap };
    d.sort();
    d
}
