use std::fmt;
use std::sync::Arc;

use crate::analyzer::Label;
use crate::error::Result;
use crate::immersion::AxisDomain;
use crate::jet::UJet;
use crate::variation::{QuadraticFunctional, SpectralData, SumOfSquares};

pub type Integrand = Arc<dyn Fn(&[f64], &UJet) -> f64 + Send + Sync>;

/// A second-variation functional given by an explicit integrand, for the
/// examples whose ambient is not flat.
#[derive(Clone)]
pub struct ClosedFormFunctional {
    pub label: String,
    pub domains: Vec<AxisDomain>,
    pub integrand: Integrand,
    pub eps_tuple: Option<[i8; 4]>,
    pub expected_verdict: Option<Label>,
    pub provenance: String,
    /// Sum-of-squares rewriting, kept apart from `integrand` so the two can
    /// be checked against each other.
    pub squares: Option<SumOfSquares>,
    pub spectral: Option<SpectralData>,
    pub warning: Option<String>,
}

impl ClosedFormFunctional {
    pub fn new(label: impl Into<String>, domains: Vec<AxisDomain>, integrand: Integrand) -> Self {
        Self {
            label: label.into(),
            domains,
            integrand,
            eps_tuple: None,
            expected_verdict: None,
            provenance: String::new(),
            squares: None,
            spectral: None,
            warning: None,
        }
    }
}

impl fmt::Debug for ClosedFormFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedFormFunctional")
            .field("label", &self.label)
            .field("domains", &self.domains)
            .field("eps_tuple", &self.eps_tuple)
            .field("expected_verdict", &self.expected_verdict)
            .finish()
    }
}

impl QuadraticFunctional for ClosedFormFunctional {
    fn label(&self) -> String {
        self.label.clone()
    }
    fn domains(&self) -> &[AxisDomain] {
        &self.domains
    }
    fn density(&self, s: &[f64], u: &UJet) -> Result<f64> {
        Ok((self.integrand)(s, u))
    }
    fn sum_of_squares(&self) -> Option<&SumOfSquares> {
        self.squares.as_ref()
    }
    fn spectral(&self) -> Option<&SpectralData> {
        self.spectral.as_ref()
    }
}
