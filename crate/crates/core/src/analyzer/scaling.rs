//! One-parameter rescaling families `t ↦ u^t` and their sign behaviour.

use serde::{Deserialize, Serialize};

use super::verdict::Witness;
use crate::error::{Error, Result};
use crate::quadrature::GridSpec;
use crate::testfn::TestFunction;
use crate::variation::{evaluate, l2_norm_sq, QuadraticFunctional};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalingFamily {
    /// `u^t(s) = t^{n/2 − 1} u(t s)`.
    Isotropic,
    /// `u^t = t^exponent · u(s)` with `s_j ↦ t s_j` on the listed axes only.
    Anisotropic { axes: Vec<usize>, exponent: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPlan {
    pub base: TestFunction,
    pub family: ScalingFamily,
    pub schedule: Vec<f64>,
}

impl ScalingPlan {
    /// 13 geometrically spaced points from 0.05 to 20.
    pub fn default_schedule() -> Vec<f64> {
        (0..13).map(|i| 0.05 * 400f64.powf(i as f64 / 12.0)).collect()
    }

    pub fn member(&self, t: f64) -> Result<TestFunction> {
        let n = self.base.dim;
        let (amp, lambda) = match &self.family {
            ScalingFamily::Isotropic => (t.powf(n as f64 / 2.0 - 1.0), vec![t; n]),
            ScalingFamily::Anisotropic { axes, exponent } => {
                if let Some(a) = axes.iter().find(|&&a| a >= n) {
                    return Err(Error::InvalidArgument(format!("scaling axis {a} out of range")));
                }
                let lambda = (0..n).map(|j| if axes.contains(&j) { t } else { 1.0 }).collect();
                (t.powf(*exponent), lambda)
            }
        };
        Ok(self.base.scaled(amp, &lambda)?.with_label(format!("{}|t={}", self.base.label, fmt_t(t))))
    }

    pub fn describe(&self) -> String {
        match &self.family {
            ScalingFamily::Isotropic => format!("isotropic u(ts)·t^(n/2-1), u = {}", self.base.label),
            ScalingFamily::Anisotropic { axes, exponent } => {
                format!("t^{exponent}·u(t·s) on axes {axes:?}, u = {}", self.base.label)
            }
        }
    }
}

fn fmt_t(t: f64) -> String {
    format!("{t:.6}").trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub t: f64,
    pub value: f64,
    pub norm2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub family: String,
    pub points: Vec<ScalingPoint>,
    /// Consecutive schedule points `[t_a, t_b]` across which the sign flips.
    pub sign_changes: Vec<[f64; 2]>,
    #[serde(skip)]
    pub members: Vec<TestFunction>,
}

impl ScalingReport {
    fn witness(&self, want: i8) -> Option<Witness> {
        self.points
            .iter()
            .zip(&self.members)
            .map(|(p, u)| Witness::new(u, p.value, p.norm2))
            .filter(|w| w.sign() == want)
            .max_by(|a, b| (a.value / a.norm2).abs().total_cmp(&(b.value / b.norm2).abs()))
    }

    pub fn positive_witness(&self) -> Option<Witness> {
        self.witness(1)
    }

    pub fn negative_witness(&self) -> Option<Witness> {
        self.witness(-1)
    }
}

/// Evaluates the functional along the family at every scheduled `t`.
pub fn scaling_probe(f: &dyn QuadraticFunctional, plan: &ScalingPlan, grid: &GridSpec) -> Result<ScalingReport> {
    if plan.schedule.iter().any(|&t| !(t.is_finite() && t > 0.0)) {
        return Err(Error::InvalidArgument("scaling times must be positive".into()));
    }
    let mut points = Vec::with_capacity(plan.schedule.len());
    let mut members = Vec::with_capacity(plan.schedule.len());
    for &t in &plan.schedule {
        let u = plan.member(t)?;
        let value = evaluate(f, &u, grid)?;
        let norm2 = l2_norm_sq(&u, f.domains(), grid)?;
        points.push(ScalingPoint { t, value, norm2 });
        members.push(u);
    }
    let signs: Vec<i8> = points
        .iter()
        .map(|p| {
            let tol = Witness::REL_TOL * p.norm2;
            if p.value > tol {
                1
            } else if p.value < -tol {
                -1
            } else {
                0
            }
        })
        .collect();
    let mut sign_changes = Vec::new();
    let mut last: Option<(usize, i8)> = None;
    for (i, &s) in signs.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some((j, prev)) = last {
            if prev != s {
                sign_changes.push([points[j].t, points[i].t]);
            }
        }
        last = Some((i, s));
    }
    Ok(ScalingReport {
        family: plan.describe(),
        points,
        sign_changes,
        members,
    })
}
