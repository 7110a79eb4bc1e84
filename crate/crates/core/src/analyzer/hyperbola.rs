//! First-order part of the hyperbola-product functional.
//!
//! On `∏ H¹_{ε_j}(r_j)` the density is `−(Δu)² − Q(∇u)` with
//! `Q(v) = Σ v_j²/r_j² − 2 Σ_{j<k} ε_j ε_k v_j v_k / (r_j r_k)`, represented by
//! `M_Q = 2 diag(1/r_j²) − [ε_i ε_j / (r_i r_j)]`.

use serde::{Deserialize, Serialize};

use super::form::{inertia, symmetric_eigen, Inertia};
use crate::error::{check_dim, Error, Result};
use crate::geometry::Sign;
use crate::immersion::AxisDomain;
use crate::quadrature::{integrate, GridSpec};
use crate::testfn::TestFunction;

fn check(radii: &[f64], branches: &[Sign]) -> Result<()> {
    check_dim(radii.len(), branches.len())?;
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidArgument("radii must be positive".into()));
    }
    Ok(())
}

pub fn hyperbola_q_matrix(radii: &[f64], branches: &[Sign]) -> Result<Vec<Vec<f64>>> {
    check(radii, branches)?;
    let n = radii.len();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { 2.0 / (radii[i] * radii[i]) } else { 0.0 };
                    d - branches[i].value() * branches[j].value() / (radii[i] * radii[j])
                })
                .collect()
        })
        .collect())
}

/// `Q(v)` expanded term by term.
pub fn q_direct(radii: &[f64], branches: &[Sign], v: &[f64]) -> f64 {
    let n = radii.len();
    let mut acc = 0.0;
    for j in 0..n {
        acc += v[j] * v[j] / (radii[j] * radii[j]);
        for k in j + 1..n {
            acc -= 2.0 * branches[j].value() * branches[k].value() * v[j] * v[k] / (radii[j] * radii[k]);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaAnalysis {
    pub matrix: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub inertia: Inertia,
    /// `w_j = ε_j r_j`.
    pub w: Vec<f64>,
    /// `wᵀ M_Q w = 2n − n²`.
    pub w_value: f64,
    /// `e₁ᵀ M_Q e₁ = 1/r₁²`.
    pub e1_value: f64,
}

pub fn hyperbola_matrix_analysis(radii: &[f64], branches: &[Sign]) -> Result<HyperbolaAnalysis> {
    let n = radii.len();
    if n < 2 {
        return Err(Error::InvalidArgument("matrix analysis needs n ≥ 2".into()));
    }
    let matrix = hyperbola_q_matrix(radii, branches)?;
    let pairs = symmetric_eigen(&matrix)?;
    let w: Vec<f64> = radii.iter().zip(branches).map(|(r, e)| e.value() * r).collect();
    let quad = |v: &[f64]| -> f64 {
        (0..n)
            .map(|i| (0..n).map(|j| v[i] * matrix[i][j] * v[j]).sum::<f64>())
            .sum()
    };
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    Ok(HyperbolaAnalysis {
        inertia: inertia(&matrix, 1e-12)?,
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors: pairs.iter().map(|p| p.1.clone()).collect(),
        w_value: quad(&w),
        e1_value: quad(&e1),
        w,
        matrix,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperbolaDirection {
    /// Gradient concentrated along `w_j = ε_j r_j`.
    W,
    /// Gradient concentrated along the first axis.
    E1,
}

/// A centred Gaussian whose gradient is concentrated along the chosen
/// direction `v̂`: precision `v̂v̂ᵀ + β(I − v̂v̂ᵀ)` with `β` small enough that
/// `∫Q(∇u)` keeps the sign of `Q(v̂)`.
pub fn hyperbola_witness(radii: &[f64], branches: &[Sign], dir: HyperbolaDirection) -> Result<TestFunction> {
    let n = radii.len();
    let m = hyperbola_q_matrix(radii, branches)?;
    let mut v: Vec<f64> = match dir {
        HyperbolaDirection::W => radii.iter().zip(branches).map(|(r, e)| e.value() * r).collect(),
        HyperbolaDirection::E1 => (0..n).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect(),
    };
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let d: f64 = (0..n).map(|i| (0..n).map(|j| v[i] * m[i][j] * v[j]).sum::<f64>()).sum();
    let trace: f64 = (0..n).map(|i| m[i][i]).sum();
    let rest = trace - d;
    // ∫∇u∇uᵀ ∝ P, so ∫Q(∇u) ∝ tr(M P) = d + β·rest.
    let beta = if rest.abs() < 1e-12 { 1.0 } else { 0.5 * d.abs() / rest.abs() };
    let precision = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    v[i] * v[j] + beta * (id - v[i] * v[j])
                })
                .collect()
        })
        .collect();
    let label = match dir {
        HyperbolaDirection::W => "gauss(w-direction)",
        HyperbolaDirection::E1 => "gauss(e1-direction)",
    };
    TestFunction::gaussian(label, 1.0, vec![0.0; n], precision)
}

/// `∫ Q(∇u)` over the truncated lines.
pub fn q_integral(radii: &[f64], branches: &[Sign], u: &TestFunction, domains: &[AxisDomain], grid: &GridSpec) -> Result<f64> {
    check(radii, branches)?;
    let boxes = u.support_boxes(domains)?;
    integrate(
        |s| {
            let j = u.jet(s);
            Ok(q_direct(radii, branches, &j.d1[..radii.len()]))
        },
        domains,
        &boxes,
        grid,
    )
}
