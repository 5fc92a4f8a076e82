use alloc::vec::Vec;

use super::config::PtsConfig;
use super::scaling::{Scaling, TransformedDiagram};
use crate::error::{invalid, Error, Result};

/// A discretized 2D density on `[0, 1]^2`: `k x k` nonnegative cell masses
/// summing to 1. Cell `(i, j)` has centre `((i + 0.5) / k, (j + 0.5) / k)`,
/// `i` along the mean axis and `j` along the lifetime axis, and is stored
/// at `values[i * k + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceSurface {
    k: usize,
    values: Vec<f64>,
}

impl PersistenceSurface {
    pub fn new(k: usize, values: Vec<f64>) -> Result<Self> {
        if k < 2 || values.len() != k * k {
            return Err(invalid!("surface needs k >= 2 and k*k values"));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(invalid!("surface values must be finite and nonnegative"));
        }
        Ok(Self { k, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    pub fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) / self.k as f64
    }

    /// Discrete L1 distance: the sum of absolute cell-mass differences.
    pub fn l1_distance(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).sum()
    }
}

/// Gaussian KDE of `pd` on a `grid_k x grid_k` grid with bandwidth `cfg.sigma`.
pub fn kde_surface(pd: &TransformedDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Result<PersistenceSurface> {
    kde_surface_with(pd, cfg.sigma, cfg.grid_k, scaling)
}

/// Sums an unweighted isotropic Gaussian at every point (after mapping it
/// into `[0, 1]^2`), samples the sum at the cell centres and divides by
/// the grid total.
///
/// The kernel factorizes over the axes, so the grid is a sum of rank-one
/// outer products. Exponents are shifted by their global maximum before
/// exponentiating; the shift cancels in the normalization and keeps very
/// narrow bandwidths from underflowing to an all-zero grid.
pub fn kde_surface_with(pd: &TransformedDiagram, sigma: f64, k: usize, scaling: &Scaling) -> Result<PersistenceSurface> {
    if pd.is_empty() {
        return Err(Error::Empty("diagram has no points; no surface is defined"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(invalid!("sigma must be positive, got {sigma}"));
    }
    if k < 2 {
        return Err(invalid!("grid_k must be at least 2"));
    }
    let inv = 1.0 / (2.0 * sigma * sigma);
    let centers: Vec<f64> = (0..k).map(|i| (i as f64 + 0.5) / k as f64).collect();

    let n = pd.len();
    let mut log_x = alloc::vec![0.0; n * k];
    let mut log_y = alloc::vec![0.0; n * k];
    let mut peak = alloc::vec![0.0; n];
    for (p, pt) in pd.points.iter().enumerate() {
        let u = scaling.to_unit(*pt);
        let (lx, ly) = (&mut log_x[p * k..(p + 1) * k], &mut log_y[p * k..(p + 1) * k]);
        for (c, (ex, ey)) in centers.iter().zip(lx.iter_mut().zip(ly.iter_mut())) {
            *ex = -(c - u[0]) * (c - u[0]) * inv;
            *ey = -(c - u[1]) * (c - u[1]) * inv;
        }
        let mx = lx.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let my = ly.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        lx.iter_mut().for_each(|v| *v -= mx);
        ly.iter_mut().for_each(|v| *v -= my);
        peak[p] = mx + my;
    }
    let top = peak.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut values = alloc::vec![0.0; k * k];
    let mut ay = alloc::vec![0.0; k];
    for p in 0..n {
        let w = libm::exp(peak[p] - top);
        if w == 0.0 {
            continue;
        }
        for (a, l) in ay.iter_mut().zip(&log_y[p * k..(p + 1) * k]) {
            *a = libm::exp(*l);
        }
        for i in 0..k {
            let ax = w * libm::exp(log_x[p * k + i]);
            if ax == 0.0 {
                continue;
            }
            let row = &mut values[i * k..(i + 1) * k];
            for (v, a) in row.iter_mut().zip(&ay) {
                *v += ax * a;
            }
        }
    }
    let total: f64 = values.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(invalid!("surface total is {total}"));
    }
    values.iter_mut().for_each(|v| *v /= total);
    PersistenceSurface::new(k, values)
}

/// First derivative of `f` sampled at spacing `h`: the widest centred
/// stencil that fits (sixth, fourth, then second order), one-sided
/// differences at the two ends.
pub fn derivative_1d(f: &[f64], h: f64, out: &mut [f64]) {
    let n = f.len();
    debug_assert!(n >= 2 && out.len() == n);
    for i in 0..n {
        let from_edge = i.min(n - 1 - i);
        out[i] = match from_edge {
            0 if i == 0 => (f[1] - f[0]) / h,
            0 => (f[n - 1] - f[n - 2]) / h,
            1 => (f[i + 1] - f[i - 1]) / (2.0 * h),
            2 => (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h),
            _ => {
                (f[i + 3] - 9.0 * f[i + 2] + 45.0 * f[i + 1] - 45.0 * f[i - 1] + 9.0 * f[i - 2] - f[i - 3])
                    / (60.0 * h)
            }
        };
    }
}

/// Partial derivatives `(rho_x, rho_y)` with respect to the normalized
/// coordinates, in the surface's cell layout.
pub fn surface_gradients(s: &PersistenceSurface) -> (Vec<f64>, Vec<f64>) {
    let k = s.k;
    let h = 1.0 / k as f64;
    let mut dx = alloc::vec![0.0; k * k];
    let mut dy = alloc::vec![0.0; k * k];
    let mut line = alloc::vec![0.0; k];
    let mut d = alloc::vec![0.0; k];
    for j in 0..k {
        for i in 0..k {
            line[i] = s.values[i * k + j];
        }
        derivative_1d(&line, h, &mut d);
        for i in 0..k {
            dx[i * k + j] = d[i];
        }
    }
    for i in 0..k {
        derivative_1d(&s.values[i * k..(i + 1) * k], h, &mut dy[i * k..(i + 1) * k]);
    }
    (dx, dy)
}
