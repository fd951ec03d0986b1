//! Bifractional Brownian motion toolkit.
//!
//! Implements the covariance kernels of the bifractional family, exact
//! Gaussian path synthesis on dyadic grids, the Faber-Schauder coefficient
//! transform with Besov/Hölder sequence norms, closed-form second-difference
//! moment identities, and the Monte Carlo experiments built on top of them.

// Indexed triangular loops keep the floating-point addition order explicit
// (bit-level reproducibility); `!(x > 0.0)`-style guards reject NaN; fixture
// constants keep every measured digit.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod covariance;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod linalg;
pub mod moments;
pub mod params;
pub(crate) mod par;
pub mod quadrature;
pub mod sampling;
pub mod schauder;

pub use error::{Error, Result};
pub use grid::DyadicGrid;
pub use params::{KernelKind, ProcessParams};

/// Library version string recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
