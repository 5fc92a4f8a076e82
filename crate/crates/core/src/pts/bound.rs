use core::f64::consts::PI;

use super::surface::{surface_gradients, PersistenceSurface};
use crate::error::{invalid, Result};

/// Upper bound on the normalized geodesic distance between the translation
/// subspaces of two surfaces whose diagrams are `d1` apart in 1-Wasserstein:
///
/// `(k_max / sqrt(g)) * sqrt((10/pi) (2/sigma^6) d1^2 + 2 (K^2/sigma^4) k_max^2 N)`
///
/// with `K = 1 / (2 pi sigma^2)`. `g_value` bounds the smallest eigenvalue
/// of the structure tensor and must be supplied by the caller.
pub fn stability_bound(d1: f64, sigma: f64, k_max: usize, n: usize, g_value: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(invalid!("sigma must be positive, got {sigma}"));
    }
    if !(g_value > 0.0) {
        return Err(invalid!("g_value must be positive, got {g_value}"));
    }
    if !(d1 >= 0.0) || k_max == 0 || n == 0 {
        return Err(invalid!("d1 must be nonnegative and k_max, N positive"));
    }
    let kappa = 1.0 / (2.0 * PI * sigma * sigma);
    let s2 = sigma * sigma;
    let km = k_max as f64;
    let wasserstein_term = (10.0 / PI) * (2.0 / (s2 * s2 * s2)) * d1 * d1;
    let grid_term = 2.0 * (kappa * kappa / (s2 * s2)) * km * km * n as f64;
    Ok(km / libm::sqrt(g_value) * libm::sqrt(wasserstein_term + grid_term))
}

/// Smallest eigenvalue of `X^T X` for `X = [rho_x, rho_y]`.
pub fn structure_tensor_min_eigenvalue(surface: &PersistenceSurface) -> f64 {
    let (dx, dy) = surface_gradients(surface);
    let a: f64 = dx.iter().map(|v| v * v).sum();
    let b: f64 = dx.iter().zip(&dy).map(|(u, v)| u * v).sum();
    let c: f64 = dy.iter().map(|v| v * v).sum();
    let mean = (a + c) / 2.0;
    let radius = libm::sqrt(((a - c) / 2.0) * ((a - c) / 2.0) + b * b);
    // (a c - b^2) / lambda_max avoids cancellation in mean - radius.
    let lmax = mean + radius;
    if lmax == 0.0 {
        0.0
    } else {
        ((a * c - b * b) / lmax).max(0.0)
    }
}
