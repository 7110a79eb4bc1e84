use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::testfn::TestFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Inconclusive,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::PositiveDefinite => "positive_definite",
            Label::NegativeDefinite => "negative_definite",
            Label::Indefinite => "indefinite",
            Label::Inconclusive => "inconclusive",
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Label::PositiveDefinite | Label::NegativeDefinite)
    }

    /// The definite label whose sign is `sign`.
    pub fn definite(sign: f64) -> Self {
        if sign > 0.0 {
            Label::PositiveDefinite
        } else {
            Label::NegativeDefinite
        }
    }

    /// "stable" for definite labels, "unstable" for indefinite ones.
    pub fn stability(self) -> &'static str {
        match self {
            Label::PositiveDefinite | Label::NegativeDefinite => "stable",
            Label::Indefinite => "unstable",
            Label::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    FourierSweep,
    ScalingProbe,
    SosCertificate,
    SpectralCriterion,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::FourierSweep => "fourier_sweep",
            Strategy::ScalingProbe => "scaling_probe",
            Strategy::SosCertificate => "sos_certificate",
            Strategy::SpectralCriterion => "spectral_criterion",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fourier_sweep" => Ok(Strategy::FourierSweep),
            "scaling_probe" => Ok(Strategy::ScalingProbe),
            "sos_certificate" => Ok(Strategy::SosCertificate),
            "spectral_criterion" => Ok(Strategy::SpectralCriterion),
            other => Err(Error::InvalidArgument(format!("unknown strategy `{other}`"))),
        }
    }
}

/// A test function together with its second-variation value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub probe_id: String,
    pub value: f64,
    /// `∫ u²`, the scale against which `value` is compared.
    pub norm2: f64,
    #[serde(skip)]
    pub probe: Option<TestFunction>,
}

impl Witness {
    pub fn new(probe: &TestFunction, value: f64, norm2: f64) -> Self {
        Self {
            probe_id: probe.label.clone(),
            value,
            norm2,
            probe: Some(probe.clone()),
        }
    }

    /// Relative tolerance a witness value must clear to count as signed.
    pub const REL_TOL: f64 = 1e-8;

    pub fn sign(&self) -> i8 {
        let tol = Self::REL_TOL * self.norm2.max(f64::MIN_POSITIVE);
        if self.value > tol {
            1
        } else if self.value < -tol {
            -1
        } else {
            0
        }
    }
}

/// Eigenvalue range of the form assembled on a finite basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub basis_size: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub label: Label,
    pub strategy: Strategy,
    pub witness_pos: Option<Witness>,
    pub witness_neg: Option<Witness>,
    pub evidence: Vec<Evidence>,
    pub certificate: Option<String>,
    pub notes: Vec<String>,
}

impl StabilityVerdict {
    pub fn new(label: Label, strategy: Strategy) -> Self {
        Self {
            label,
            strategy,
            witness_pos: None,
            witness_neg: None,
            evidence: Vec::new(),
            certificate: None,
            notes: Vec::new(),
        }
    }

    /// Witnesses in (positive, negative) order.
    pub fn witnesses(&self) -> Vec<&Witness> {
        self.witness_pos.iter().chain(self.witness_neg.iter()).collect()
    }

    /// Checks the structural invariants of the label.
    pub fn is_consistent(&self) -> bool {
        match self.label {
            Label::Indefinite => matches!(
                (&self.witness_pos, &self.witness_neg),
                (Some(p), Some(n)) if p.sign() == 1 && n.sign() == -1
            ),
            Label::PositiveDefinite | Label::NegativeDefinite => self.certificate.is_some(),
            Label::Inconclusive => true,
        }
    }
}
