//! Tubes around geodesics of the three-dimensional space forms `S³_p`.
//!
//! Both area functionals are encoded once in terms of the sign tuple
//! `(ε₁, ε₂, ε₃, ε₄)`:
//!
//! ```text
//! G : ε  ∫ (ε₃u_ss + ε₂u_tt)² − 2(ε₁u_s² + ε₄u_t²),   ε  = ε₁ε₃
//! G′: ε′ ∫ 4u_st² + 2(ε₁u_s² + ε₄u_t²),               ε′ = ε₁ε₂
//! ```
//!
//! `s` runs over a circle when `ε₁ = 1`, `t` when `ε₄ = 1`; otherwise a line.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::charts::LINE_TRUNCATION;
use super::closed::ClosedFormFunctional;
use crate::analyzer::Label;
use crate::error::{Error, Result};
use crate::immersion::AxisDomain;
use crate::variation::{JetForm, SpectralData, SumOfSquares, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceForm {
    S3,
    DS3,
    AdS3,
    H3,
}

impl SpaceForm {
    pub fn id(self) -> &'static str {
        match self {
            SpaceForm::S3 => "S3",
            SpaceForm::DS3 => "dS3",
            SpaceForm::AdS3 => "AdS3",
            SpaceForm::H3 => "H3",
        }
    }

    /// Index `p` of `S³_p`.
    pub fn index(self) -> u8 {
        match self {
            SpaceForm::S3 => 0,
            SpaceForm::DS3 => 1,
            SpaceForm::AdS3 => 2,
            SpaceForm::H3 => 3,
        }
    }
}

impl fmt::Display for SpaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SpaceForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S3" => Ok(SpaceForm::S3),
            "dS3" => Ok(SpaceForm::DS3),
            "AdS3" => Ok(SpaceForm::AdS3),
            "H3" => Ok(SpaceForm::H3),
            other => Err(Error::InvalidArgument(format!("unknown space form `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MetricChoice {
    G,
    GPrime,
}

impl MetricChoice {
    pub fn id(self) -> &'static str {
        match self {
            MetricChoice::G => "G",
            MetricChoice::GPrime => "Gprime",
        }
    }
}

impl FromStr for MetricChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(MetricChoice::G),
            "Gprime" => Ok(MetricChoice::GPrime),
            other => Err(Error::InvalidArgument(format!(
                "metric must be `G` or `Gprime`, got `{other}`"
            ))),
        }
    }
}

/// One row of the geodesic-tube stability table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TubeRow {
    pub space: SpaceForm,
    /// Row selector within the space form, e.g. `closed-indefinite`.
    pub name: &'static str,
    pub geodesic: &'static str,
    pub induced_metric: &'static str,
    pub eps: [i8; 4],
    pub topology: &'static str,
    /// Published stability under `G` and `G′`.
    pub stable_g: bool,
    pub stable_g_prime: bool,
}

pub const TUBE_ROWS: [TubeRow; 8] = [
    TubeRow {
        space: SpaceForm::S3,
        name: "closed",
        geodesic: "closed",
        induced_metric: "definite",
        eps: [1, 1, 1, 1],
        topology: "torus",
        stable_g: false,
        stable_g_prime: true,
    },
    TubeRow {
        space: SpaceForm::DS3,
        name: "closed-definite",
        geodesic: "closed",
        induced_metric: "definite",
        eps: [1, 1, -1, -1],
        topology: "cylinder",
        stable_g: false,
        stable_g_prime: false,
    },
    TubeRow {
        space: SpaceForm::DS3,
        name: "closed-indefinite",
        geodesic: "closed",
        induced_metric: "indefinite",
        eps: [1, -1, 1, -1],
        topology: "cylinder",
        stable_g: false,
        stable_g_prime: false,
    },
    TubeRow {
        space: SpaceForm::DS3,
        name: "unbounded",
        geodesic: "unbounded",
        induced_metric: "indefinite",
        eps: [-1, 1, -1, 1],
        topology: "cylinder",
        stable_g: false,
        stable_g_prime: false,
    },
    TubeRow {
        space: SpaceForm::AdS3,
        name: "closed-indefinite",
        geodesic: "closed",
        induced_metric: "indefinite",
        eps: [1, -1, -1, 1],
        topology: "torus",
        stable_g: false,
        stable_g_prime: true,
    },
    TubeRow {
        space: SpaceForm::AdS3,
        name: "unbounded-indefinite",
        geodesic: "unbounded",
        induced_metric: "indefinite",
        eps: [-1, 1, 1, -1],
        topology: "plane",
        stable_g: true,
        stable_g_prime: false,
    },
    TubeRow {
        space: SpaceForm::AdS3,
        name: "unbounded-definite",
        geodesic: "unbounded",
        induced_metric: "definite",
        eps: [-1, -1, -1, -1],
        topology: "plane",
        stable_g: true,
        stable_g_prime: false,
    },
    TubeRow {
        space: SpaceForm::H3,
        name: "unbounded",
        geodesic: "unbounded",
        induced_metric: "definite",
        eps: [-1, -1, 1, 1],
        topology: "cylinder",
        stable_g: false,
        stable_g_prime: false,
    },
];

impl TubeRow {
    pub fn find(space: SpaceForm, name: &str) -> Result<&'static TubeRow> {
        TUBE_ROWS
            .iter()
            .find(|r| r.space == space && r.name == name)
            .ok_or_else(|| {
                let names: Vec<&str> = TUBE_ROWS
                    .iter()
                    .filter(|r| r.space == space)
                    .map(|r| r.name)
                    .collect();
                Error::InvalidArgument(format!(
                    "no row `{name}` for {space}; rows: {}",
                    names.join(", ")
                ))
            })
    }

    pub fn id(&self, metric: MetricChoice) -> String {
        format!("tube:{}:{}:{}", self.space, self.name, metric.id())
    }

    pub fn published_stable(&self, metric: MetricChoice) -> bool {
        match metric {
            MetricChoice::G => self.stable_g,
            MetricChoice::GPrime => self.stable_g_prime,
        }
    }

    pub fn domains(&self) -> Vec<AxisDomain> {
        [self.eps[0], self.eps[3]]
            .iter()
            .map(|&e| {
                if e == 1 {
                    AxisDomain::Circle { circumference: TAU }
                } else {
                    AxisDomain::Line {
                        truncation: LINE_TRUNCATION,
                    }
                }
            })
            .collect()
    }
}

/// Builds `δ²A_G` or `δ²A_G′` for a table row.
pub fn make_geodesic_tube(row: &TubeRow, metric: MetricChoice) -> ClosedFormFunctional {
    let [e1, e2, e3, e4] = row.eps.map(f64::from);
    let domains = row.domains();
    let (integrand, sign): (super::closed::Integrand, f64) = match metric {
        MetricChoice::G => {
            let eps = e1 * e3;
            (
                Arc::new(move |_s, u| {
                    let (us, ut) = (u.d1[0], u.d1[1]);
                    let lap = e3 * u.d2[0][0] + e2 * u.d2[1][1];
                    eps * (lap * lap - 2.0 * (e1 * us * us + e4 * ut * ut))
                }),
                eps,
            )
        }
        MetricChoice::GPrime => {
            let eps = e1 * e2;
            (
                Arc::new(move |_s, u| {
                    let (us, ut, ust) = (u.d1[0], u.d1[1], u.d2[0][1]);
                    eps * (4.0 * ust * ust + 2.0 * (e1 * us * us + e4 * ut * ut))
                }),
                eps,
            )
        }
    };

    let mut f = ClosedFormFunctional::new(row.id(metric), domains, integrand);
    f.eps_tuple = Some(row.eps);
    f.provenance = format!(
        "tube around a {} geodesic of {} ({} induced metric, {}), {} functional",
        row.geodesic,
        row.space,
        row.induced_metric,
        row.topology,
        metric.id()
    );

    // Uniform-sign sums of squares exist exactly when the first-order terms
    // carry the same sign as the second-order one.
    f.squares = match metric {
        MetricChoice::G if e1 == -1.0 && e4 == -1.0 => Some(
            SumOfSquares::default()
                .push(
                    "ε₃u_ss + ε₂u_tt",
                    Weight::Const(sign),
                    JetForm::second(0, 0, e3).plus(&JetForm::second(1, 1, e2)),
                )
                .push("u_s", Weight::Const(2.0 * sign), JetForm::first(0, 1.0))
                .push("u_t", Weight::Const(2.0 * sign), JetForm::first(1, 1.0)),
        ),
        MetricChoice::GPrime if e1 == 1.0 && e4 == 1.0 => Some(
            SumOfSquares::default()
                .push("u_st", Weight::Const(4.0 * sign), JetForm::second(0, 1, 1.0))
                .push("u_s", Weight::Const(2.0 * sign), JetForm::first(0, 1.0))
                .push("u_t", Weight::Const(2.0 * sign), JetForm::first(1, 1.0)),
        ),
        _ => None,
    };

    // On a flat square torus with ε₂ = ε₃ the G functional is
    // ε₁ε₃·∫(Δu)² − 2|∇u|², the Einstein form with c = 2.
    if metric == MetricChoice::G && e1 == 1.0 && e4 == 1.0 && e2 == e3 {
        f.spectral = Some(SpectralData {
            radii: vec![1.0, 1.0],
            c: 2.0,
            eps: sign,
        });
    }

    f.expected_verdict = Some(if row.published_stable(metric) {
        match &f.squares {
            Some(_) => Label::definite(sign),
            None => Label::PositiveDefinite,
        }
    } else {
        Label::Indefinite
    });
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::UJet;
    use crate::variation::QuadraticFunctional;

    fn jet(d1: [f64; 2], d2: [[f64; 2]; 2]) -> UJet {
        let mut u = UJet::zero(2);
        u.d1[..2].copy_from_slice(&d1);
        for i in 0..2 {
            u.d2[i][..2].copy_from_slice(&d2[i]);
        }
        u
    }

    #[test]
    fn every_row_is_findable() {
        for r in &TUBE_ROWS {
            assert_eq!(TubeRow::find(r.space, r.name).unwrap(), r);
        }
        assert!(TubeRow::find(SpaceForm::S3, "unbounded").is_err());
    }

    #[test]
    fn domains_follow_topology() {
        for r in &TUBE_ROWS {
            let circles = r.domains().iter().filter(|d| d.is_circle()).count();
            let expect = match r.topology {
                "torus" => 2,
                "cylinder" => 1,
                _ => 0,
            };
            assert_eq!(circles, expect, "{}", r.id(MetricChoice::G));
        }
    }

    #[test]
    fn sphere_g_integrand() {
        let row = TubeRow::find(SpaceForm::S3, "closed").unwrap();
        let f = make_geodesic_tube(row, MetricChoice::G);
        let u = jet([0.3, -0.7], [[1.1, 0.2], [0.2, -0.4]]);
        let want = (1.1f64 - 0.4).powi(2) - 2.0 * (0.09 + 0.49);
        assert!((f.density(&[0.0, 0.0], &u).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn ads_closed_g_prime_is_negative() {
        let row = TubeRow::find(SpaceForm::AdS3, "closed-indefinite").unwrap();
        let f = make_geodesic_tube(row, MetricChoice::GPrime);
        let u = jet([0.3, -0.7], [[1.1, 0.2], [0.2, -0.4]]);
        let want = -(4.0 * 0.04 + 2.0 * (0.09 + 0.49));
        assert!((f.density(&[0.0, 0.0], &u).unwrap() - want).abs() < 1e-15);
        assert_eq!(f.expected_verdict, Some(Label::NegativeDefinite));
    }

    #[test]
    fn ds_unbounded_g_integrand() {
        // (−u_ss + u_tt)² − 2(−u_s² + u_t²) on R × S¹
        let row = TubeRow::find(SpaceForm::DS3, "unbounded").unwrap();
        let f = make_geodesic_tube(row, MetricChoice::G);
        assert!(!f.domains[0].is_circle() && f.domains[1].is_circle());
        let u = jet([0.5, 0.25], [[2.0, 0.0], [0.0, 1.0]]);
        let want = (-2.0f64 + 1.0).powi(2) - 2.0 * (-0.25 + 0.0625);
        assert!((f.density(&[0.0, 0.0], &u).unwrap() - want).abs() < 1e-15);
    }
}
