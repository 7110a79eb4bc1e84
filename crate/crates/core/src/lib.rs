//! Hamiltonian second variation and H-stability of Lagrangian submanifolds
//! in flat pseudo-Kähler (`C^n_p`) and para-Kähler (`D^n`) spaces, plus the
//! closed-form functionals of the curved examples (geodesic tubes in
//! three-dimensional space forms, rank-one surfaces in tangent bundles).
//!
//! Layers, bottom up:
//! - [`geometry`]: signs, para-complex numbers, `J`, `g`, `ω` on flat ambients
//! - [`immersion`]: charts, induced metric, cubic form, mean curvature, structural checks
//! - [`variation`]: gradient, Laplacian, the second-variation density, Bochner/Reilly
//! - [`catalog`]: every example as a chart or closed-form functional, by string id
//! - [`analyzer`]: quadrature-backed classification into definite/indefinite verdicts
//! - [`commands`]: the batch front ends shared by the CLI and the tests

pub mod analyzer;
pub mod catalog;
pub mod commands;
pub mod error;
pub mod geometry;
pub mod immersion;
pub mod jet;
pub mod linalg;
pub mod quadrature;
pub mod testfn;
pub mod variation;

pub use error::{Error, Result};

/// Largest chart dimension supported by the fixed-size kernels.
pub const MAX_DIM: usize = 4;
