use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::catalog::CurveData;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, GridSpec};
use crate::testfn::{Profile, TestFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WirtingerBranch {
    /// `κ² + 2K ≤ 0` everywhere.
    Unconditional,
    /// Closed curve with `sup(κ² + 2K) ≤ 16π²/L²`.
    Wirtinger,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WirtingerReport {
    pub sup_potential: f64,
    pub threshold: Option<f64>,
    pub stable: bool,
    /// Branch that certified stability; `None` means inconclusive.
    pub branch: Option<WirtingerBranch>,
}

/// Sufficient stability conditions for the rank-one bundle over `curve`.
/// Failing both is inconclusive, not unstable.
pub fn wirtinger_bound(curve: &CurveData) -> Result<WirtingerReport> {
    let sup = curve.sup_potential();
    let threshold = curve.wirtinger_threshold();
    if sup <= 0.0 {
        return Ok(WirtingerReport {
            sup_potential: sup,
            threshold,
            stable: true,
            branch: Some(WirtingerBranch::Unconditional),
        });
    }
    let Some(th) = threshold else {
        return Err(Error::InvalidArgument(format!(
            "sup(κ²+2K) = {sup} > 0 on an open curve; the length bound needs a closed curve"
        )));
    };
    let stable = sup <= th;
    Ok(WirtingerReport {
        sup_potential: sup,
        threshold,
        stable,
        branch: stable.then_some(WirtingerBranch::Wirtinger),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WirtingerCheck {
    pub probe: String,
    /// `∫ 4 u_st²`.
    pub lhs: f64,
    /// `(16π²/L²) ∫ u_t²`.
    pub rhs: f64,
}

/// `∫4u_st² ≥ (16π²/L²)∫u_t²` on products `cos(2πk s/L + φ)·g(t)`, whose
/// `u_t` has zero mean along the curve.
pub fn wirtinger_mode_check(curve: &CurveData, grid: &GridSpec) -> Result<Vec<WirtingerCheck>> {
    let l = curve
        .length
        .ok_or_else(|| Error::InvalidArgument("mode check needs a closed curve".into()))?;
    let th = 16.0 * std::f64::consts::PI.powi(2) / (l * l);
    let domains = curve.domains()?;
    let fibers = [
        ("g1", Profile::gaussian(0.0, 1.0)),
        ("g0.5", Profile::gaussian(0.0, 0.5)),
        (
            "xi*g1",
            Profile::Bump {
                center: 0.0,
                width: 1.0,
                coeffs: vec![0.0, 1.0],
                freq: 0.0,
                phase: 0.0,
            },
        ),
    ];
    let mut out = Vec::new();
    for k in 1..=4 {
        for phase in [0.0, 0.7] {
            for (name, g) in &fibers {
                let u = TestFunction::product(
                    format!("cos({k}·2πs/L+{phase})⊗{name}"),
                    1.0,
                    vec![
                        Profile::Cos {
                            freq: TAU * k as f64 / l,
                            phase,
                        },
                        g.clone(),
                    ],
                );
                let boxes = u.support_boxes(&domains)?;
                let lhs = integrate(|s| Ok(4.0 * u.jet(s).d2[0][1].powi(2)), &domains, &boxes, grid)?;
                let ut2 = integrate(|s| Ok(u.jet(s).d1[1].powi(2)), &domains, &boxes, grid)?;
                out.push(WirtingerCheck {
                    probe: u.label.clone(),
                    lhs,
                    rhs: th * ut2,
                });
            }
        }
    }
    Ok(out)
}
