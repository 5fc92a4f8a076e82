//! File formats, experiment drivers and the command-line front end built on
//! [`pts_core`].

pub mod error;
pub mod bench;
pub mod cli;
pub mod experiment;
pub mod io;
pub mod report;

pub use error::{Error, Result};
