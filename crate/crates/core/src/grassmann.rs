//! Distances and kernels between linear subspaces of `R^N`.
//!
//! A subspace is carried by any column-orthonormal basis; every function
//! here is invariant under right-multiplying a basis by an orthogonal matrix.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Maximum tolerated `|B^T B - I|` entry for a basis to count as orthonormal.
pub const ORTHONORMAL_TOL: f64 = 1e-8;

/// A point on the Grassmann manifold: an `N x p` column-orthonormal basis.
///
/// `grid_k` records the surface resolution the basis was computed on
/// (`N = grid_k^2`), or 0 for subspaces not tied to a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint {
    basis: DMatrix<f64>,
    grid_k: u32,
}

impl GrassmannPoint {
    pub fn new(basis: DMatrix<f64>, grid_k: u32) -> Result<Self> {
        if basis.ncols() == 0 || basis.nrows() == 0 {
            return Err(Error::Empty("subspace basis"));
        }
        if basis.ncols() > basis.nrows() {
            return Err(invalid!("basis has {} columns in R^{}", basis.ncols(), basis.nrows()));
        }
        if grid_k != 0 && (grid_k as usize) * (grid_k as usize) != basis.nrows() {
            return Err(invalid!("grid_k {grid_k} does not match N = {}", basis.nrows()));
        }
        let err = orthonormality_error(&basis);
        if !(err <= ORTHONORMAL_TOL) {
            return Err(invalid!("basis is not orthonormal (max |B^T B - I| = {err:e})"));
        }
        Ok(Self { basis, grid_k })
    }

    /// Orthonormalizes the columns of `m` (via SVD) and wraps the result.
    pub fn from_span(m: &DMatrix<f64>, grid_k: u32) -> Result<Self> {
        let basis = leading_left_singular_vectors(m.clone(), m.ncols())?;
        Self::new(basis, grid_k)
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn into_basis(self) -> DMatrix<f64> {
        self.basis
    }

    pub fn grid_k(&self) -> u32 {
        self.grid_k
    }

    /// Ambient dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Subspace dimension `p`.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The same subspace with basis `B * q` for an orthogonal `q`.
    pub fn rotated(&self, q: &DMatrix<f64>) -> Result<Self> {
        if q.nrows() != self.dim() || q.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(q.nrows(), self.dim()));
        }
        Self::new(&self.basis * q, self.grid_k)
    }
}

/// `max |B^T B - I|`.
pub fn orthonormality_error(b: &DMatrix<f64>) -> f64 {
    let g = b.tr_mul(b);
    let mut err = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            err = err.max((g[(i, j)] - target).abs());
        }
    }
    err
}

/// The `p` leading left singular vectors of `m`, each column signed so its
/// first clearly nonzero entry is positive.
///
/// Fails with [`Error::RankDeficient`] when `m` has numerical rank below `p`.
pub fn leading_left_singular_vectors(m: DMatrix<f64>, p: usize) -> Result<DMatrix<f64>> {
    leading_left_singular_vectors_above(m, p, 0.0)
}

/// As [`leading_left_singular_vectors`], also treating singular values at
/// or below `floor` as zero when counting the rank.
pub fn leading_left_singular_vectors_above(m: DMatrix<f64>, p: usize, floor: f64) -> Result<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    if p == 0 || rows == 0 || cols == 0 {
        return Err(Error::Empty("matrix for SVD"));
    }
    let svd = m.svd(true, false);
    let u = svd.u.as_ref().expect("U requested");
    let s = &svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
    let s_max = s[order[0]];
    let tol = (s_max * (rows.max(cols) as f64) * f64::EPSILON).max(floor);
    let rank = order.iter().filter(|&&i| s[i] > tol).count();
    if rank < p {
        return Err(Error::RankDeficient { requested: p, rank });
    }
    let mut out = DMatrix::zeros(rows, p);
    for (c, &idx) in order.iter().take(p).enumerate() {
        let col = u.column(idx);
        let max_abs = col.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let sign = col
            .iter()
            .find(|v| v.abs() > 1e-10 * max_abs)
            .map_or(1.0, |v| if *v < 0.0 { -1.0 } else { 1.0 });
        out.set_column(c, &(col * sign));
    }
    Ok(out)
}

/// Principal angles in `[0, pi/2]`, ascending, `min(p1, p2)` of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalAngles(Vec<f64>);

impl PrincipalAngles {
    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn cosines(&self) -> Vec<f64> {
        self.0.iter().map(|&t| libm::cos(t)).collect()
    }

    pub fn max(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }
}

fn check_ambient(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<()> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::DimensionMismatch(x.ambient_dim(), y.ambient_dim()));
    }
    Ok(())
}

/// Orders a pair so the first has the larger subspace dimension.
fn wide_first<'a>(x: &'a GrassmannPoint, y: &'a GrassmannPoint) -> (&'a DMatrix<f64>, &'a DMatrix<f64>) {
    if x.dim() >= y.dim() {
        (&x.basis, &y.basis)
    } else {
        (&y.basis, &x.basis)
    }
}

fn singular_values_desc(m: DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Angles from the singular values of `X^T Y` (cosines, clamped to `[0, 1]`).
/// Angles whose cosine exceeds `1/sqrt(2)` are recomputed from the sines,
/// the singular values of `Y - X X^T Y`, where `arccos` loses precision.
pub fn principal_angles(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<PrincipalAngles> {
    check_ambient(x, y)?;
    let (a, b) = wide_first(x, y);
    let cross = a.tr_mul(b);
    let cos: Vec<f64> = singular_values_desc(cross.clone())
        .into_iter()
        .map(|c| c.clamp(0.0, 1.0))
        .collect();
    let need_sines = cos.iter().any(|&c| c * c >= 0.5);
    let mut angles: Vec<f64> = if need_sines {
        let residual = b - a * &cross;
        let mut sin: Vec<f64> = singular_values_desc(residual)
            .into_iter()
            .map(|s| s.clamp(0.0, 1.0))
            .collect();
        sin.reverse();
        cos.iter()
            .zip(&sin)
            .map(|(&c, &s)| if c * c < 0.5 { libm::acos(c) } else { libm::asin(s) })
            .collect()
    } else {
        cos.iter().map(|&c| libm::acos(c)).collect()
    };
    angles.iter_mut().for_each(|t| *t = t.clamp(0.0, FRAC_PI_2));
    angles.sort_by(f64::total_cmp);
    Ok(PrincipalAngles(angles))
}

/// Geodesic distance `sqrt(sum theta_i^2)` between equal-dimension subspaces.
pub fn geodesic_distance(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::UnequalSubspaceDims(x.dim(), y.dim()));
    }
    let angles = principal_angles(x, y)?;
    Ok(libm::sqrt(angles.0.iter().map(|t| t * t).sum()))
}

/// Largest possible geodesic distance between `p`-dimensional subspaces.
pub fn max_geodesic(p: usize) -> f64 {
    FRAC_PI_2 * libm::sqrt(p as f64)
}

/// Geodesic distance divided by `(pi/2) sqrt(p)`, in `[0, 1]`.
pub fn normalized_geodesic(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
    let d = geodesic_distance(x, y)?;
    Ok((d / max_geodesic(x.dim())).min(1.0))
}

fn frobenius_sq(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|v| v * v).sum()
}

/// Symmetric directional distance `sqrt(max(k, l) - |X^T Y|_F^2)`, defined
/// for subspaces of different dimensions. For nearly coincident subspaces
/// the deficit is recomputed as `(k - l) + |Y - X X^T Y|_F^2` to avoid
/// cancellation.
pub fn chordal_distance(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
    check_ambient(x, y)?;
    let (a, b) = wide_first(x, y);
    let cross = a.tr_mul(b);
    let wide = a.ncols() as f64;
    let mut deficit = wide - frobenius_sq(&cross);
    if deficit < 1e-6 {
        let residual = b - a * &cross;
        deficit = (a.ncols() - b.ncols()) as f64 + frobenius_sq(&residual);
    }
    Ok(libm::sqrt(deficit.max(0.0)))
}

/// Projection kernel `|X^T Y|_F^2`, in `[0, min(k, l)]`.
pub fn projection_kernel(x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
    check_ambient(x, y)?;
    Ok(frobenius_sq(&x.basis.tr_mul(&y.basis)))
}

/// Which exponent the Grassmann RBF kernel uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RbfForm {
    /// `exp(-beta |X^T Y|_F^2)`.
    #[default]
    Projection,
    /// `exp(-beta d_chordal^2)`.
    Conventional,
}

pub fn rbf_kernel(x: &GrassmannPoint, y: &GrassmannPoint, beta: f64, form: RbfForm) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(invalid!("RBF beta must be positive, got {beta}"));
    }
    let e = match form {
        RbfForm::Projection => projection_kernel(x, y)?,
        RbfForm::Conventional => {
            let d = chordal_distance(x, y)?;
            d * d
        }
    };
    Ok(libm::exp(-beta * e))
}

/// Distance selector over Grassmann points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubspaceMetric {
    Geodesic,
    NormalizedGeodesic,
    Chordal,
}

impl SubspaceMetric {
    pub fn eval(self, x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
        match self {
            Self::Geodesic => geodesic_distance(x, y),
            Self::NormalizedGeodesic => normalized_geodesic(x, y),
            Self::Chordal => chordal_distance(x, y),
        }
    }
}

/// Kernel selector over Grassmann points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SubspaceKernel {
    Projection,
    Rbf { beta: f64, form: RbfForm },
}

impl SubspaceKernel {
    pub fn eval(self, x: &GrassmannPoint, y: &GrassmannPoint) -> Result<f64> {
        match self {
            Self::Projection => projection_kernel(x, y),
            Self::Rbf { beta, form } => rbf_kernel(x, y, beta, form),
        }
    }
}

/// Symmetric Gram matrix of `kernel` over `points`.
pub fn gram_matrix(points: &[GrassmannPoint], kernel: SubspaceKernel) -> Result<DMatrix<f64>> {
    let n = points.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = kernel.eval(&points[i], &points[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(sym: &DMatrix<f64>) -> f64 {
    if sym.is_empty() {
        return 0.0;
    }
    sym.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
