use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

/// Points in `R^dim`, stored row-major in one flat buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("point cloud"))?;
        let dim = first.len();
        let mut coords = Vec::with_capacity(dim * points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(invalid!(
                    "point {i} has dimension {} but point 0 has {dim}",
                    p.len()
                ));
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid!("point dimension must be at least 1"));
        }
        if coords.is_empty() {
            return Err(Error::Empty("point cloud"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(invalid!(
                "{} coordinates do not divide into points of dimension {dim}",
                coords.len()
            ));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(invalid!("non-finite coordinate in point {}", i / dim));
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let sq: f64 = self
            .point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        libm::sqrt(sq)
    }

    /// Applies `f` to every point, keeping the dimension.
    pub fn map_points(&self, mut f: impl FnMut(&[f64], &mut [f64])) -> Self {
        let mut coords = alloc::vec![0.0; self.coords.len()];
        for (src, dst) in self
            .coords
            .chunks_exact(self.dim)
            .zip(coords.chunks_exact_mut(self.dim))
        {
            f(src, dst);
        }
        Self {
            dim: self.dim,
            coords,
        }
    }

    /// Drops every point lying within `tol` (Euclidean) of an earlier kept point.
    pub fn dedup(&self, tol: f64) -> Self {
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..self.len() {
            let dup = kept.iter().any(|&j| {
                let sq: f64 = self
                    .point(i)
                    .iter()
                    .zip(self.point(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                libm::sqrt(sq) <= tol
            });
            if !dup {
                kept.push(i);
            }
        }
        let mut coords = Vec::with_capacity(kept.len() * self.dim);
        for i in kept {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            dim: self.dim,
            coords,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(PointCloud::new(&[]).is_err());
        assert!(PointCloud::new(&[vec![0.0, 1.0], vec![1.0]]).is_err());
        assert!(PointCloud::new(&[vec![f64::INFINITY]]).is_err());
        assert!(PointCloud::new(&[vec![]]).is_err());
    }

    #[test]
    fn dedup_collapses_near_duplicates() {
        let c = PointCloud::new(&[vec![0.0], vec![1e-13], vec![1.0], vec![0.0]]).unwrap();
        assert_eq!(c.dedup(1e-12).len(), 2);
    }
}
