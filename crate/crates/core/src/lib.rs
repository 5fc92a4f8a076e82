//! Topological signatures of persistence diagrams.
//!
//! This crate is `no_std` (it needs `alloc`). It computes persistence
//! diagrams, the classical matching distances between them, perturbed
//! topological signatures (subspaces spanned by kernel-density surfaces of
//! randomly perturbed diagrams) and Grassmann metrics and kernels between
//! those subspaces.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod datasets;
pub mod diagram;
pub mod error;
pub mod grassmann;
pub mod learn;
pub mod pd_metrics;
pub mod persistence;
pub mod pts;
pub mod seed;

pub use diagram::{PersistenceDiagram, PersistencePoint};
pub use error::{Error, Result};
