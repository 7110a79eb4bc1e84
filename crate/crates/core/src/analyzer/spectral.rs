use serde::{Deserialize, Serialize};

use super::modes::fourier_modes;
use crate::error::{Error, Result};

/// Modes `|k_j| ≤ MODE_TABLE_BOUND` are listed in the report.
const MODE_TABLE_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralMode {
    pub k: Vec<i64>,
    pub lambda: f64,
    /// `λ(λ − c)`, the per-mode factor of the second variation.
    pub factor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub lambda1: f64,
    pub c: f64,
    pub stable: bool,
    pub modes: Vec<SpectralMode>,
}

impl SpectralReport {
    /// Lowest mode with `λ < c`, if any.
    pub fn lowest_below(&self) -> Option<&SpectralMode> {
        self.modes
            .iter()
            .filter(|m| m.lambda < self.c)
            .min_by(|a, b| a.lambda.total_cmp(&b.lambda))
    }

    /// Lowest mode with `λ > c`.
    pub fn lowest_above(&self) -> Option<&SpectralMode> {
        self.modes
            .iter()
            .filter(|m| m.lambda > self.c)
            .min_by(|a, b| a.lambda.total_cmp(&b.lambda))
    }
}

/// Einstein criterion on the flat torus `∏ R/2πr_j Z`: eigenvalues are
/// `λ_k = Σ (k_j / r_j)²`, and the form is definite iff `λ₁ ≥ c`.
pub fn spectral_criterion(radii: &[f64], c: f64) -> Result<SpectralReport> {
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidArgument("radii must be positive".into()));
    }
    let rmax = radii.iter().copied().fold(0.0, f64::max);
    let lambda1 = 1.0 / (rmax * rmax);
    let modes = fourier_modes(radii.len(), MODE_TABLE_BOUND)
        .into_iter()
        .map(|m| {
            let lambda: f64 = m.k.iter().zip(radii).map(|(&k, r)| (k as f64 / r).powi(2)).sum();
            SpectralMode {
                k: m.k,
                lambda,
                factor: lambda * (lambda - c),
            }
        })
        .collect();
    Ok(SpectralReport {
        lambda1,
        c,
        stable: lambda1 >= c,
        modes,
    })
}
