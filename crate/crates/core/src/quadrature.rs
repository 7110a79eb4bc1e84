//! Tensor-product quadrature: periodic trapezoid on circle axes,
//! Gauss–Legendre on truncated line axes.
//!
//! Node values are computed in parallel but collected in node order and
//! reduced by a fixed pairwise tree, so results do not depend on the number
//! of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::immersion::AxisDomain;

/// Field magnitude tolerated on the faces of a line box.
pub const LEAK_TOL: f64 = 1e-10;

/// Node counts per axis kind, plus an optional fixed half-width for line boxes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub circle_nodes: usize,
    pub line_nodes: usize,
    pub line_box: Option<f64>,
}

impl GridSpec {
    /// Defaults by chart dimension; the tensor grid grows as `nodesⁿ` so
    /// higher dimensions get fewer nodes per axis.
    pub fn default_for(dim: usize) -> Self {
        let (circle_nodes, line_nodes) = match dim {
            0..=2 => (64, 128),
            3 => (32, 40),
            _ => (16, 24),
        };
        Self {
            circle_nodes,
            line_nodes,
            line_box: None,
        }
    }

    pub fn uniform(nodes: usize) -> Result<Self> {
        if nodes < 8 {
            return Err(Error::InvalidArgument(format!(
                "grids need at least 8 nodes per axis, got {nodes}"
            )));
        }
        Ok(Self {
            circle_nodes: nodes,
            line_nodes: nodes,
            line_box: None,
        })
    }

    pub fn with_line_box(mut self, half_width: Option<f64>) -> Self {
        self.line_box = half_width;
        self
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let (pm, pm1) = if m == 1 { (z, 1.0) } else { (p1, p0) };
            dp = mf * (z * pm - pm1) / (z * z - 1.0);
            let dz = pm / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    (x, w)
}

/// Sum in a fixed binary tree; reproducible and accurate to `O(log n)` ulps.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        v.iter().sum()
    } else {
        let mid = v.len() / 2;
        pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
    }
}

/// One-dimensional rule for a single axis.
#[derive(Clone, Debug)]
struct AxisRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    faces: Option<(f64, f64)>,
}

fn axis_rule(domain: &AxisDomain, bx: Option<(f64, f64)>, grid: &GridSpec, axis: usize) -> Result<AxisRule> {
    match *domain {
        AxisDomain::Circle { circumference } => {
            let m = grid.circle_nodes;
            let h = circumference / m as f64;
            Ok(AxisRule {
                nodes: (0..m).map(|k| h * k as f64).collect(),
                weights: vec![h; m],
                faces: None,
            })
        }
        AxisDomain::Line { truncation } => {
            let (mut a, mut b) = bx.ok_or_else(|| Error::Support {
                axis,
                detail: "line axis needs an integration box".into(),
            })?;
            if let Some(half) = grid.line_box {
                let c = 0.5 * (a + b);
                a = c - half;
                b = c + half;
            }
            if a < -truncation || b > truncation || a >= b {
                return Err(Error::Support {
                    axis,
                    detail: format!("box [{a}, {b}] not inside line truncation ±{truncation}"),
                });
            }
            let (x, w) = gauss_legendre(grid.line_nodes);
            let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
            Ok(AxisRule {
                nodes: x.iter().map(|t| c + r * t).collect(),
                weights: w.iter().map(|t| r * t).collect(),
                faces: Some((a, b)),
            })
        }
    }
}

fn node_at(rules: &[AxisRule], mut idx: usize, point: &mut [f64]) -> f64 {
    let mut w = 1.0;
    for (k, r) in rules.iter().enumerate().rev() {
        let m = r.nodes.len();
        let i = idx % m;
        idx /= m;
        point[k] = r.nodes[i];
        w *= r.weights[i];
    }
    w
}

/// `∫ field` over the product domain. `boxes[j]` is the integration
/// interval on line axis `j` (ignored on circles).
pub fn integrate<F>(field: F, domains: &[AxisDomain], boxes: &[Option<(f64, f64)>], grid: &GridSpec) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let n = domains.len();
    check_dim(n, boxes.len())?;
    let rules = domains
        .iter()
        .zip(boxes)
        .enumerate()
        .map(|(axis, (d, b))| axis_rule(d, *b, grid, axis))
        .collect::<Result<Vec<_>>>()?;

    check_faces(&field, &rules)?;

    let total: usize = rules.iter().map(|r| r.nodes.len()).product();
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0.0; n],
            |point, idx| -> Result<f64> {
                let w = node_at(&rules, idx, point);
                let v = field(point)?;
                if !v.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "non-finite integrand at {point:?}"
                    )));
                }
                Ok(w * v)
            },
        )
        .collect::<Result<_>>()?;
    Ok(pairwise_sum(&values))
}

/// Rejects fields that do not vanish on the faces of every line box.
fn check_faces<F>(field: &F, rules: &[AxisRule]) -> Result<()>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let n = rules.len();
    for (axis, rule) in rules.iter().enumerate() {
        let Some((a, b)) = rule.faces else { continue };
        let others: Vec<AxisRule> = rules
            .iter()
            .enumerate()
            .map(|(k, r)| {
                if k == axis {
                    AxisRule {
                        nodes: vec![a, b],
                        weights: vec![1.0, 1.0],
                        faces: None,
                    }
                } else {
                    r.clone()
                }
            })
            .collect();
        let total: usize = others.iter().map(|r| r.nodes.len()).product();
        let worst = (0..total)
            .into_par_iter()
            .map_init(
                || vec![0.0; n],
                |point, idx| -> Result<(f64, usize)> {
                    node_at(&others, idx, point);
                    Ok((field(point)?.abs(), idx))
                },
            )
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold((0.0f64, 0usize), |acc, x| if x.0 > acc.0 { x } else { acc });
        if worst.0 > LEAK_TOL {
            let mut point = vec![0.0; n];
            node_at(&others, worst.1, &mut point);
            return Err(Error::Support {
                axis,
                detail: format!(
                    "integrand {:.3e} at box face {point:?} exceeds {LEAK_TOL:e}",
                    worst.0
                ),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for m in [1, 2, 5, 24, 96] {
            let (x, w) = gauss_legendre(m);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "m={m}");
            for deg in (0..2 * m).step_by(2) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((q - 2.0 / (deg as f64 + 1.0)).abs() < 1e-12, "m={m} deg={deg}");
            }
        }
    }

    #[test]
    fn trapezoid_on_circle() {
        let d = [AxisDomain::circle(TAU).unwrap()];
        let g = GridSpec::uniform(8).unwrap();
        let v = integrate(|s| Ok(s[0].cos().powi(2)), &d, &[None], &g).unwrap();
        assert!((v - PI).abs() < 1e-14);
    }

    #[test]
    fn torus_sin_squared() {
        let d = [AxisDomain::circle(TAU).unwrap(); 2];
        let g = GridSpec::default_for(2);
        let v = integrate(|s| Ok((s[0] - s[1]).sin().powi(2)), &d, &[None, None], &g).unwrap();
        assert!((v - 2.0 * PI * PI).abs() < 1e-11);
    }

    #[test]
    fn gaussian_derivative_energy() {
        // u = exp(-x²/2σ²): ∫u'² = √π / (2σ)
        let sigma = 0.7;
        let d = [AxisDomain::line(50.0).unwrap()];
        let g = GridSpec::default_for(1);
        let f = |s: &[f64]| {
            let x = s[0];
            let du = -x / (sigma * sigma) * (-x * x / (2.0 * sigma * sigma)).exp();
            Ok(du * du)
        };
        let v = integrate(f, &d, &[Some((-8.0 * sigma, 8.0 * sigma))], &g).unwrap();
        assert!((v - PI.sqrt() / (2.0 * sigma)).abs() < 1e-10);
    }

    #[test]
    fn leak_is_detected() {
        let d = [AxisDomain::line(50.0).unwrap()];
        let g = GridSpec::default_for(1);
        let r = integrate(|s| Ok((-s[0] * s[0]).exp()), &d, &[Some((-1.0, 1.0))], &g);
        assert!(matches!(r, Err(Error::Support { axis: 0, .. })));
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        assert_eq!(pairwise_sum(&v), pairwise_sum(&v));
        assert!((pairwise_sum(&v) - v.iter().sum::<f64>()).abs() < 1e-12);
    }
}
