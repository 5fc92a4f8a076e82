use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Hyperparameters of the signature pipeline. Lengths (`sigma`,
/// `perturb_r`) are in normalized units, where the dataset bounding box
/// maps onto `[0, 1]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PtsConfig {
    /// Gaussian bandwidth.
    pub sigma: f64,
    /// Surface resolution per axis; surfaces have `grid_k^2` cells.
    pub grid_k: usize,
    /// Number of perturbed copies.
    pub perturb_m: usize,
    /// Maximum per-axis displacement of a perturbed point.
    pub perturb_r: f64,
    /// Dimension of the output subspace.
    pub subspace_p: usize,
    pub seed: u64,
    /// Fraction of the data extent added on each side of the bounding box.
    pub margin: f64,
    /// Multi-scale bandwidths; when non-empty, replaces `sigma` and stacks
    /// the surfaces of every bandwidth before the SVD.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_list: Option<Vec<f64>>,
}

impl Default for PtsConfig {
    fn default() -> Self {
        Self {
            sigma: 0.0004,
            grid_k: 50,
            perturb_m: 40,
            perturb_r: 0.02,
            subspace_p: 10,
            seed: 0,
            margin: 0.05,
            sigma_list: None,
        }
    }
}

impl PtsConfig {
    pub fn sigmas(&self) -> Vec<f64> {
        match &self.sigma_list {
            Some(l) if !l.is_empty() => l.clone(),
            _ => alloc::vec![self.sigma],
        }
    }

    /// Number of columns in the stacked surface matrix.
    pub fn stack_width(&self) -> usize {
        (self.perturb_m + 1) * self.sigmas().len()
    }

    pub fn cells(&self) -> usize {
        self.grid_k * self.grid_k
    }

    pub fn validate(&self) -> Result<()> {
        for s in self.sigmas() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(invalid!("sigma must be positive and finite, got {s}"));
            }
        }
        if self.grid_k < 2 {
            return Err(invalid!("grid_k must be at least 2, got {}", self.grid_k));
        }
        if self.perturb_m < 1 {
            return Err(invalid!("perturb_m must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.perturb_r) {
            return Err(invalid!("perturb_r must lie in [0, 1), got {}", self.perturb_r));
        }
        let max_p = self.stack_width().min(self.cells());
        if self.subspace_p < 1 || self.subspace_p > max_p {
            return Err(invalid!("subspace_p must lie in [1, {max_p}], got {}", self.subspace_p));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(invalid!("margin must lie in [0, 0.5), got {}", self.margin));
        }
        Ok(())
    }
}
