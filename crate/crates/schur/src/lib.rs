//! Denominator vectors of rank-3 cluster variables, computed three ways and cross-checked.

pub mod cli;
pub mod curve_model;
pub mod error;
pub mod laurent_oracle;
pub mod psi_engine;
pub mod quiver;
pub mod root_lattice;
pub mod suites;
pub mod sweep;

pub use error::{Error, Result};
