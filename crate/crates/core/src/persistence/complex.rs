//! Generic filtered simplicial complexes and Z/2 boundary-matrix reduction.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::cloud::PointCloud;
use crate::diagram::{PersistenceDiagram, PersistencePoint};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    /// Sorted vertex indices.
    pub vertices: Vec<u32>,
    pub value: f64,
}

impl Simplex {
    pub fn new(mut vertices: Vec<u32>, value: f64) -> Self {
        vertices.sort_unstable();
        Self { vertices, value }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, each with one vertex removed.
    pub fn facets(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let n = self.vertices.len();
        (0..if n > 1 { n } else { 0 }).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

/// A simplicial complex whose simplices carry filtration values.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    max_dim: usize,
}

/// A persistence pairing in filtration order. `death` is `None` for
/// classes that survive the whole filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairing {
    pub birth: usize,
    pub death: Option<usize>,
}

impl FilteredComplex {
    /// Builds a complex from arbitrary simplices, sorted by
    /// `(value, dimension, vertices)`, and checks that it is a filtration.
    pub fn new(mut simplices: Vec<Simplex>) -> Result<Self> {
        if simplices.is_empty() {
            return Err(Error::Empty("filtered complex"));
        }
        if simplices.iter().any(|s| s.vertices.is_empty() || !s.value.is_finite()) {
            return Err(invalid!("simplices need at least one vertex and a finite value"));
        }
        simplices.sort_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then(a.dim().cmp(&b.dim()))
                .then(a.vertices.cmp(&b.vertices))
        });
        let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
        let complex = Self { simplices, max_dim };
        complex.check_monotone()?;
        Ok(complex)
    }

    /// The Vietoris-Rips complex up to simplices of dimension `max_simplex_dim`,
    /// with every simplex entering at the largest pairwise distance among its
    /// vertices. Only simplices with value `<= max_eps` are kept.
    pub fn vietoris_rips(cloud: &PointCloud, max_simplex_dim: usize, max_eps: f64) -> Result<Self> {
        let n = cloud.len();
        if n == 0 {
            return Err(Error::Empty("point cloud"));
        }
        let mut dist = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = cloud.distance(i, j);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let mut simplices: Vec<Simplex> = (0..n as u32).map(|v| Simplex::new(alloc::vec![v], 0.0)).collect();
        // Grow cliques one vertex at a time, only appending larger vertex ids.
        let mut frontier: Vec<(Vec<u32>, f64)> = (0..n as u32).map(|v| (alloc::vec![v], 0.0)).collect();
        for _ in 0..max_simplex_dim {
            let mut next = Vec::new();
            for (verts, value) in &frontier {
                let last = *verts.last().unwrap() as usize;
                for w in last + 1..n {
                    let mut v = *value;
                    for &u in verts {
                        v = v.max(dist[u as usize * n + w]);
                    }
                    if v <= max_eps {
                        let mut nv = verts.clone();
                        nv.push(w as u32);
                        next.push((nv, v));
                    }
                }
            }
            simplices.extend(next.iter().map(|(v, val)| Simplex::new(v.clone(), *val)));
            frontier = next;
        }
        Self::new(simplices)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Verifies that every face of every simplex is present with a value no
    /// larger than the simplex's, and appears earlier in the order.
    pub fn check_monotone(&self) -> Result<()> {
        let index = self.index();
        for (pos, s) in self.simplices.iter().enumerate() {
            for face in s.facets() {
                match index.get(&face) {
                    None => return Err(invalid!("face {:?} of {:?} is missing", face, s.vertices)),
                    Some(&fpos) => {
                        let f = &self.simplices[fpos];
                        if f.value > s.value || fpos >= pos {
                            return Err(invalid!(
                                "face {:?} (value {}) enters after {:?} (value {})",
                                face,
                                f.value,
                                s.vertices,
                                s.value
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn index(&self) -> BTreeMap<Vec<u32>, usize> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.clone(), i))
            .collect()
    }

    /// Standard left-to-right column reduction of the boundary matrix over Z/2.
    pub fn reduce(&self) -> Vec<Pairing> {
        let index = self.index();
        let m = self.simplices.len();
        let mut pivot_owner: Vec<Option<usize>> = alloc::vec![None; m];
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(m);
        let mut death_of: Vec<Option<usize>> = alloc::vec![None; m];
        let mut positive = alloc::vec![false; m];
        for (j, s) in self.simplices.iter().enumerate() {
            let mut col: Vec<u32> = s.facets().map(|f| index[&f] as u32).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match pivot_owner[low as usize] {
                    Some(other) => xor_sorted(&mut col, &columns[other]),
                    None => break,
                }
            }
            match col.last() {
                Some(&low) => {
                    pivot_owner[low as usize] = Some(j);
                    death_of[low as usize] = Some(j);
                }
                None => positive[j] = true,
            }
            columns.push(col);
        }
        (0..m)
            .filter(|&i| positive[i])
            .map(|i| Pairing {
                birth: i,
                death: death_of[i],
            })
            .collect()
    }

    /// Persistence diagrams for dimensions `0..=max_dim`, truncating
    /// surviving classes at `cap`. Zero-persistence pairs are dropped except
    /// in dimension 0.
    pub fn diagrams(&self, max_dim: usize, cap: f64) -> Vec<PersistenceDiagram> {
        let mut out: Vec<Vec<PersistencePoint>> = alloc::vec![Vec::new(); max_dim + 1];
        for pair in self.reduce() {
            let b = &self.simplices[pair.birth];
            let dim = b.dim();
            if dim > max_dim {
                continue;
            }
            let point = match pair.death {
                Some(d) => {
                    let dv = self.simplices[d].value;
                    if dim > 0 && dv == b.value {
                        continue;
                    }
                    PersistencePoint::new(b.value, dv, dim as u32)
                }
                None => PersistencePoint::essential(b.value, cap, dim as u32),
            };
            out[dim].push(point);
        }
        out.into_iter()
            .map(|points| {
                let mut d = PersistenceDiagram { points, cap };
                d.sort();
                d
            })
            .collect()
    }
}

/// Symmetric difference of two ascending index lists, written into `acc`.
pub(crate) fn xor_sorted(acc: &mut Vec<u32>, other: &[u32]) {
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            core::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    *acc = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn xor_cancels_shared_entries() {
        let mut a = vec![1, 3, 5];
        xor_sorted(&mut a, &[3, 4]);
        assert_eq!(a, vec![1, 4, 5]);
    }

    #[test]
    fn missing_face_is_rejected() {
        let s = vec![Simplex::new(vec![0], 0.0), Simplex::new(vec![0, 1], 1.0)];
        assert!(FilteredComplex::new(s).is_err());
    }

    #[test]
    fn face_entering_late_is_rejected() {
        let s = vec![
            Simplex::new(vec![0], 0.0),
            Simplex::new(vec![1], 2.0),
            Simplex::new(vec![0, 1], 1.0),
        ];
        assert!(FilteredComplex::new(s).is_err());
    }

    #[test]
    fn hollow_triangle_has_one_loop() {
        let s = vec![
            Simplex::new(vec![0], 0.0),
            Simplex::new(vec![1], 0.0),
            Simplex::new(vec![2], 0.0),
            Simplex::new(vec![0, 1], 1.0),
            Simplex::new(vec![1, 2], 1.0),
            Simplex::new(vec![0, 2], 1.0),
        ];
        let c = FilteredComplex::new(s).unwrap();
        let d = c.diagrams(1, 5.0);
        assert_eq!(d[0].len(), 3);
        assert_eq!(d[1].points, vec![PersistencePoint::essential(1.0, 5.0, 1)]);
    }

    #[test]
    fn rips_complex_is_monotone() {
        let cloud = PointCloud::new(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let c = FilteredComplex::vietoris_rips(&cloud, 3, 10.0).unwrap();
        // 4 vertices, 6 edges, 4 triangles, 1 tetrahedron
        assert_eq!(c.simplices().len(), 15);
        c.check_monotone().unwrap();
    }
}
