//! Persistence diagrams from point clouds, vertex-weighted graphs and
//! delay-embedded time series.

mod cloud;
mod complex;
mod delay;
mod scalar;
mod union_find;
mod vr;

pub use cloud::PointCloud;
pub use complex::{FilteredComplex, Pairing, Simplex};
pub use delay::delay_embed;
pub use scalar::{scalar_field_h0, Direction, ScalarGraph};
pub use union_find::UnionFind;
pub use vr::vr_persistence;
