use alloc::vec::Vec;
use nalgebra::DMatrix;

use super::config::PtsConfig;
use super::perturb::perturb_copy;
use super::scaling::{transform_axes, Scaling, TransformedDiagram};
use super::surface::kde_surface_with;
use crate::diagram::PersistenceDiagram;
use crate::error::{invalid, Error, Result};
use crate::grassmann::{leading_left_singular_vectors, GrassmannPoint};

/// The perturbed topological signature of `pd`: the `subspace_p` leading
/// left singular vectors of the stacked surfaces of `pd` and its
/// `perturb_m` perturbed copies.
pub fn pts_embed(pd: &PersistenceDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Result<GrassmannPoint> {
    pts_embed_transformed(&transform_axes(pd), cfg, scaling)
}

pub fn pts_embed_transformed(pd: &TransformedDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Result<GrassmannPoint> {
    let stack = surface_stack(pd, cfg, scaling)?;
    let basis = leading_left_singular_vectors(stack, cfg.subspace_p)?;
    GrassmannPoint::new(basis, cfg.grid_k as u32)
}

/// `N x (m + 1)` matrix (times the number of bandwidths) whose columns are
/// the vectorized surfaces: for each bandwidth, the unperturbed diagram
/// first, then copies `0..m`.
pub fn surface_stack(pd: &TransformedDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Result<DMatrix<f64>> {
    cfg.validate()?;
    if pd.is_empty() {
        return Err(Error::Empty("diagram has no points; insert a zero-lifetime sentinel"));
    }
    let copies: Vec<TransformedDiagram> = (0..cfg.perturb_m).map(|j| perturb_copy(pd, cfg, scaling, j)).collect();
    let sigmas = cfg.sigmas();
    let n = cfg.cells();
    let mut stack = DMatrix::zeros(n, cfg.stack_width());
    let mut col = 0;
    for &sigma in &sigmas {
        for d in core::iter::once(pd).chain(copies.iter()) {
            let s = kde_surface_with(d, sigma, cfg.grid_k, scaling)?;
            stack.column_mut(col).copy_from_slice(s.values());
            col += 1;
        }
    }
    Ok(stack)
}

/// Leading left singular vectors of the perturbation differences
/// `rho_j - rho` (per bandwidth). For small displacements this estimates
/// the tangent subspace spanned by the surface's partial derivatives.
pub fn perturbation_tangent_embed(pd: &PersistenceDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Result<GrassmannPoint> {
    let stack = surface_stack(&transform_axes(pd), cfg, scaling)?;
    let per = cfg.perturb_m + 1;
    let groups = stack.ncols() / per;
    let mut diffs = DMatrix::zeros(stack.nrows(), groups * cfg.perturb_m);
    for g in 0..groups {
        let base = stack.column(g * per);
        for j in 0..cfg.perturb_m {
            let d = stack.column(g * per + 1 + j) - base;
            diffs.set_column(g * cfg.perturb_m + j, &d);
        }
    }
    let basis = leading_left_singular_vectors(diffs, cfg.subspace_p)?;
    GrassmannPoint::new(basis, cfg.grid_k as u32)
}

/// Stacks the first `leading` columns of every point and keeps the `out_p`
/// leading left singular vectors of the result.
pub fn aggregate_embeddings(points: &[GrassmannPoint], leading: usize, out_p: usize) -> Result<GrassmannPoint> {
    let first = points.first().ok_or(Error::Empty("no embeddings to aggregate"))?;
    let n = first.ambient_dim();
    if leading == 0 || out_p == 0 {
        return Err(invalid!("leading and out_p must be at least 1"));
    }
    for p in points {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch(n, p.ambient_dim()));
        }
        if p.dim() < leading {
            return Err(invalid!("leading = {leading} exceeds an input dimension {}", p.dim()));
        }
    }
    let total = leading * points.len();
    if out_p > total {
        return Err(invalid!("out_p = {out_p} exceeds the {total} stacked columns"));
    }
    let mut stack = DMatrix::zeros(n, total);
    for (i, p) in points.iter().enumerate() {
        stack.columns_mut(i * leading, leading).copy_from(&p.basis().columns(0, leading));
    }
    let basis = leading_left_singular_vectors(stack, out_p)?;
    GrassmannPoint::new(basis, first.grid_k())
}
