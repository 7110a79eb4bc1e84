//! Classification of second-variation functionals into definite and
//! indefinite verdicts.
//!
//! Indefiniteness is shown by a pair of test functions with opposite signs.
//! Definiteness is only reported with an analytic certificate: a pointwise
//! sum-of-squares rewriting of the density, or the first flat-torus
//! eigenvalue clearing the Einstein constant.

mod classify;
mod form;
mod hyperbola;
mod library;
mod modes;
mod scaling;
mod spectral;
mod verdict;
mod wirtinger;

pub use classify::{certificate_residual, classify, ClassifyOptions, SOS_RESIDUAL_TOL};
pub use form::{assemble_form, eigen_range, inertia, symmetric_eigen, Inertia};
pub use hyperbola::{
    hyperbola_matrix_analysis, hyperbola_q_matrix, hyperbola_witness, q_direct, q_integral, HyperbolaAnalysis,
    HyperbolaDirection,
};
pub use library::{profile_library, witness_library};
pub use modes::{fourier_modes, mode_bound, torus_mode_value, ModeVector};
pub use scaling::{scaling_probe, ScalingFamily, ScalingPlan, ScalingPoint, ScalingReport};
pub use spectral::{spectral_criterion, SpectralMode, SpectralReport};
pub use verdict::{Evidence, Label, StabilityVerdict, Strategy, Witness};
pub use wirtinger::{wirtinger_bound, wirtinger_mode_check, WirtingerBranch, WirtingerCheck, WirtingerReport};
