//! Rank-one Lagrangian surfaces in the tangent bundle of a Riemannian
//! surface, built over a curve `γ` with geodesic curvature `κ(s)` and
//! Gaussian curvature `K(s)` of the surface along it.
//!
//! The induced metric is `[[-2aκ, -1], [-1, 0]]`, flat for every profile
//! `a(s)`, and the area functional is
//! `∫ (Δu)² − (κ² + 2K) u_t²` with `Δu = −2u_st + 2aκ u_tt`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::charts::LINE_TRUNCATION;
use super::closed::ClosedFormFunctional;
use crate::analyzer::Label;
use crate::error::{Error, Result};
use crate::immersion::AxisDomain;
use crate::variation::{laplacian_of_jet, JetForm, ScalarFn, SumOfSquares, TangentBundleMetric, Weight};

/// Samples used to bound `sup (κ² + 2K)` along the curve.
const SUP_SAMPLES: usize = 4096;

#[derive(Clone)]
pub struct CurveData {
    pub label: String,
    pub kappa: ScalarFn,
    pub k_along: ScalarFn,
    pub closed: bool,
    /// Length of the curve; required when `closed`.
    pub length: Option<f64>,
    pub a_profile: ScalarFn,
    pub a_is_zero: bool,
}

impl fmt::Debug for CurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveData")
            .field("label", &self.label)
            .field("closed", &self.closed)
            .field("length", &self.length)
            .field("a_is_zero", &self.a_is_zero)
            .finish()
    }
}

impl CurveData {
    /// A curve with constant `κ` and `K`; closed when `length` is given.
    pub fn constant(kappa: f64, k: f64, length: Option<f64>) -> Result<Self> {
        let label = match length {
            Some(l) => format!("tn:kappa={kappa},K={k},L={l}"),
            None => format!("tn:kappa={kappa},K={k}"),
        };
        Self::new(
            label,
            Arc::new(move |_| kappa),
            Arc::new(move |_| k),
            length,
        )
    }

    /// A circle of radius `R` in the flat plane.
    pub fn circle_in_plane(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        let mut c = Self::constant(1.0 / radius, 0.0, Some(2.0 * PI * radius))?;
        c.label = format!("tn:circle:R={radius}");
        Ok(c)
    }

    pub fn new(label: impl Into<String>, kappa: ScalarFn, k_along: ScalarFn, length: Option<f64>) -> Result<Self> {
        let c = Self {
            label: label.into(),
            kappa,
            k_along,
            closed: length.is_some(),
            length,
            a_profile: Arc::new(|_| 0.0),
            a_is_zero: true,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_a(mut self, a: ScalarFn) -> Result<Self> {
        self.a_profile = a;
        self.a_is_zero = false;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let Some(l) = self.length else { return Ok(()) };
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidArgument(format!("curve length must be positive, got {l}")));
        }
        for k in 0..16 {
            let s = l * k as f64 / 16.0;
            for (name, f) in [("kappa", &self.kappa), ("K", &self.k_along), ("a", &self.a_profile)] {
                if (f(s + l) - f(s)).abs() > 1e-9 * (1.0 + f(s).abs()) {
                    return Err(Error::InvalidArgument(format!(
                        "{name} is not {l}-periodic along a closed curve"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `κ(s)² + 2K(s)`.
    pub fn potential(&self, s: f64) -> f64 {
        (self.kappa)(s).powi(2) + 2.0 * (self.k_along)(s)
    }

    /// Sampled `sup (κ² + 2K)` over one period, or over the truncated line.
    pub fn sup_potential(&self) -> f64 {
        let (a, b) = match self.length {
            Some(l) => (0.0, l),
            None => (-LINE_TRUNCATION, LINE_TRUNCATION),
        };
        (0..=SUP_SAMPLES)
            .map(|i| self.potential(a + (b - a) * i as f64 / SUP_SAMPLES as f64))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `16π²/L²` for closed curves.
    pub fn wirtinger_threshold(&self) -> Option<f64> {
        self.length.map(|l| 16.0 * PI * PI / (l * l))
    }

    pub fn domains(&self) -> Result<Vec<AxisDomain>> {
        let s = match self.length {
            Some(l) => AxisDomain::circle(l)?,
            None => AxisDomain::line(LINE_TRUNCATION)?,
        };
        Ok(vec![s, AxisDomain::line(LINE_TRUNCATION)?])
    }

    pub fn metric(&self) -> TangentBundleMetric {
        let (a, k) = (self.a_profile.clone(), self.kappa.clone());
        TangentBundleMetric::new(Arc::new(move |s| a(s) * k(s)), self.a_is_zero)
    }
}

/// The area functional of the rank-one surface over `curve`.
pub fn make_rank_one_bundle(curve: &CurveData) -> Result<ClosedFormFunctional> {
    let domains = curve.domains()?;
    let pot = {
        let c = curve.clone();
        move |s: f64| c.potential(s)
    };
    let integrand: super::closed::Integrand = if curve.a_is_zero {
        Arc::new(move |s, u| {
            let (ut, ust) = (u.d1[1], u.d2[0][1]);
            4.0 * ust * ust - pot(s[0]) * ut * ut
        })
    } else {
        let metric = curve.metric();
        Arc::new(move |s, u| {
            let lap = laplacian_of_jet(u, &metric, s).unwrap_or(f64::NAN);
            lap * lap - pot(s[0]) * u.d1[1] * u.d1[1]
        })
    };

    let mut f = ClosedFormFunctional::new(curve.label.clone(), domains, integrand);
    f.provenance = "rank-one Lagrangian surface over a curve in a Riemannian surface, tangent-bundle structure".into();
    let sup = curve.sup_potential();
    if curve.a_is_zero && sup <= 0.0 {
        let c = curve.clone();
        f.squares = Some(
            SumOfSquares::default()
                .push("u_st", Weight::Const(4.0), JetForm::second(0, 1, 1.0))
                .push(
                    "u_t",
                    Weight::Field {
                        label: "-(κ²+2K)".into(),
                        f: Arc::new(move |s| -c.potential(s[0])),
                    },
                    JetForm::first(1, 1.0),
                ),
        );
    }
    f.expected_verdict = if sup <= 0.0 {
        Some(Label::PositiveDefinite)
    } else {
        match curve.wirtinger_threshold() {
            Some(th) if sup <= th => Some(Label::PositiveDefinite),
            Some(_) => None,
            None => Some(Label::Indefinite),
        }
    };
    if !curve.a_is_zero {
        f.warning = Some(
            "a ≢ 0: the area functional is evaluated with Δu = −2u_st + 2aκu_tt; \
             the published form 4u_st² − (κ²+2K)u_t² only covers a ≡ 0"
                .into(),
        );
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::UJet;
    use crate::variation::QuadraticFunctional;

    #[test]
    fn hyperbolic_geodesic_integrand() {
        let c = CurveData::constant(0.0, -1.0, None).unwrap();
        let f = make_rank_one_bundle(&c).unwrap();
        let mut u = UJet::zero(2);
        u.d1[1] = 0.5;
        u.d2[0][1] = 0.3;
        u.d2[1][0] = 0.3;
        let want = 4.0 * 0.09 + 2.0 * 0.25;
        assert!((f.density(&[0.1, 0.2], &u).unwrap() - want).abs() < 1e-15);
        assert!(f.squares.is_some());
        assert_eq!(f.expected_verdict, Some(Label::PositiveDefinite));
    }

    #[test]
    fn circle_thresholds() {
        let c = CurveData::circle_in_plane(2.0).unwrap();
        assert!((c.sup_potential() - 0.25).abs() < 1e-15);
        assert!((c.wirtinger_threshold().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nonzero_a_matches_direct_laplacian() {
        let c = CurveData::constant(1.0, 0.0, None)
            .unwrap()
            .with_a(Arc::new(|s| 0.5 + 0.1 * s))
            .unwrap();
        let f = make_rank_one_bundle(&c).unwrap();
        assert!(f.warning.is_some());
        let mut u = UJet::zero(2);
        u.d1 = [0.2, 0.5, 0.0, 0.0];
        u.d2[0][1] = 0.3;
        u.d2[1][0] = 0.3;
        u.d2[1][1] = -0.7;
        let s = [0.4, 0.0];
        let lap = -2.0 * 0.3 + 2.0 * (0.5 + 0.04) * -0.7;
        let want = lap * lap - 0.25;
        assert!((f.density(&s, &u).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn closed_curve_must_be_periodic() {
        let r = CurveData::new("bad", Arc::new(|s| s), Arc::new(|_| 0.0), Some(1.0));
        assert!(r.is_err());
    }
}
