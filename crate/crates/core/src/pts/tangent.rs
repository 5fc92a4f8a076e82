use alloc::vec::Vec;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::surface::{surface_gradients, PersistenceSurface};
use crate::error::Result;
use crate::grassmann::{leading_left_singular_vectors_above, GrassmannPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationModel {
    /// Rigid shifts `(u, v)`: span of `[rho_x, rho_y]`.
    Translation,
    /// Affine maps: span of `[rho_x, rho_y, x rho_x, x rho_y, y rho_x, y rho_y]`.
    Affine,
}

impl PerturbationModel {
    pub fn dim(self) -> usize {
        match self {
            Self::Translation => 2,
            Self::Affine => 6,
        }
    }
}

/// Raw first-order columns of the perturbation model, before orthonormalization.
pub fn tangent_columns(surface: &PersistenceSurface, model: PerturbationModel) -> DMatrix<f64> {
    let k = surface.k();
    let (dx, dy) = surface_gradients(surface);
    let mut cols: Vec<Vec<f64>> = alloc::vec![dx.clone(), dy.clone()];
    if model == PerturbationModel::Affine {
        let x = |idx: usize| surface.center(idx / k);
        let y = |idx: usize| surface.center(idx % k);
        cols.push(dx.iter().enumerate().map(|(i, v)| x(i) * v).collect());
        cols.push(dy.iter().enumerate().map(|(i, v)| x(i) * v).collect());
        cols.push(dx.iter().enumerate().map(|(i, v)| y(i) * v).collect());
        cols.push(dy.iter().enumerate().map(|(i, v)| y(i) * v).collect());
    }
    DMatrix::from_fn(k * k, cols.len(), |r, c| cols[c][r])
}

/// Orthonormal basis of the first-order perturbation subspace of `surface`.
/// Fails with the achieved rank when the columns are numerically dependent,
/// for example on a constant surface.
pub fn analytic_tangent_subspace(surface: &PersistenceSurface, model: PerturbationModel) -> Result<GrassmannPoint> {
    let cols = tangent_columns(surface, model);
    // Derivatives scale like |rho| * k; anything far below that is rounding.
    let scale: f64 = libm::sqrt(surface.values().iter().map(|v| v * v).sum::<f64>());
    let floor = 1e-9 * scale * surface.k() as f64;
    let basis = leading_left_singular_vectors_above(cols, model.dim(), floor)?;
    GrassmannPoint::new(basis, surface.k() as u32)
}
