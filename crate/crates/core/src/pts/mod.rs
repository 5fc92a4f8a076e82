//! Perturbed topological signatures: persistence diagrams embedded as
//! points on a Grassmann manifold.
//!
//! Pipeline: `(b, d) -> (mean, lifetime)`, dataset-level rescaling onto
//! `[0, 1]^2`, `m` randomly perturbed copies, a Gaussian KDE surface per
//! copy on a `k x k` grid, and the leading left singular vectors of the
//! stacked surfaces.

mod bound;
mod config;
mod embed;
mod perturb;
mod scaling;
mod surface;
mod tangent;

pub use bound::{stability_bound, structure_tensor_min_eigenvalue};
pub use config::PtsConfig;
pub use embed::{aggregate_embeddings, perturbation_tangent_embed, pts_embed, pts_embed_transformed, surface_stack};
pub use perturb::{perturb, perturb_copy};
pub use scaling::{fit_scaling, transform_axes, Scaling, TransformedDiagram};
pub use surface::{derivative_1d, kde_surface, kde_surface_with, surface_gradients, PersistenceSurface};
pub use tangent::{analytic_tangent_subspace, tangent_columns, PerturbationModel};

#[cfg(test)]
mod tests;
