//! Flat-ambient charts: tori in `C^n_p`, hyperbola products and coordinate
//! planes in `D^n`, plus the sum-of-squares forms of their densities where
//! one exists.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{AmbientFlat, Sign};
use crate::immersion::{
    AxisDomain, DualNumberOracle, ImmersionJet, ImmersionOracle, LagrangianChart, OracleKind,
};
use crate::jet::{Real, VectorMap};
use crate::variation::{JetForm, SumOfSquares, Weight};
use crate::MAX_DIM;

/// Truncation of non-compact chart axes.
pub const LINE_TRUNCATION: f64 = 500.0;

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() || radii.len() > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "need 1..={MAX_DIM} radii, got {}",
            radii.len()
        )));
    }
    if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::InvalidArgument(format!("radii must be positive, got {r}")));
    }
    Ok(())
}

/// `s ↦ (r_j e^{i s_j / r_j})_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusMap {
    pub radii: Vec<f64>,
}

impl VectorMap for TorusMap {
    fn out_dim(&self) -> usize {
        2 * self.radii.len()
    }

    fn eval<T: Real>(&self, s: &[T], out: &mut [T]) {
        for (j, &r) in self.radii.iter().enumerate() {
            let th = s[j] * (1.0 / r);
            out[2 * j] = th.cos() * r;
            out[2 * j + 1] = th.sin() * r;
        }
    }
}

impl ImmersionOracle for TorusMap {
    fn dim(&self) -> usize {
        self.radii.len()
    }

    fn eval(&self, s: &[f64]) -> ImmersionJet {
        let mut jet = ImmersionJet::zero(self.radii.len());
        for (j, &r) in self.radii.iter().enumerate() {
            let (sn, cs) = (s[j] / r).sin_cos();
            jet.f[2 * j] = r * cs;
            jet.f[2 * j + 1] = r * sn;
            jet.df[j][2 * j] = -sn;
            jet.df[j][2 * j + 1] = cs;
            jet.d2f[j][j][2 * j] = -cs / r;
            jet.d2f[j][j][2 * j + 1] = -sn / r;
        }
        jet
    }
}

/// `s ↦ (r_j ex_j(τ s_j / r_j))_j` in `D^n`, where `ex_j` is the para-complex
/// exponential on the branch `branches[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolaMap {
    pub radii: Vec<f64>,
    pub branches: Vec<Sign>,
}

impl HyperbolaMap {
    /// The point `f(s)` itself.
    pub fn point(&self, s: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; 2 * self.radii.len()];
        VectorMap::eval(self, s, &mut out);
        out
    }
}

impl VectorMap for HyperbolaMap {
    fn out_dim(&self) -> usize {
        2 * self.radii.len()
    }

    fn eval<T: Real>(&self, s: &[T], out: &mut [T]) {
        for (j, (&r, &b)) in self.radii.iter().zip(&self.branches).enumerate() {
            let th = s[j] * (1.0 / r);
            let (ch, sh) = (th.cosh() * r, th.sinh() * r);
            match b {
                Sign::Plus => {
                    out[2 * j] = ch;
                    out[2 * j + 1] = sh;
                }
                Sign::Minus => {
                    out[2 * j] = sh;
                    out[2 * j + 1] = ch;
                }
            }
        }
    }
}

/// Reports the jet at the vertex `s = 0` for every `s`. Multiplying the
/// axis-`j` factor by `ex(−τ s_j / r_j)` is an isometry of `D^n` commuting
/// with `J` that moves `f(s)` to the vertex, so metric, cubic form and mean
/// curvature are exact; the raw map loses them to cancellation for large `|s|`.
impl ImmersionOracle for HyperbolaMap {
    fn dim(&self) -> usize {
        self.radii.len()
    }

    fn eval(&self, _s: &[f64]) -> ImmersionJet {
        let mut jet = ImmersionJet::zero(self.radii.len());
        for (j, (&r, &b)) in self.radii.iter().zip(&self.branches).enumerate() {
            let (x, y) = match b {
                Sign::Plus => (2 * j, 2 * j + 1),
                Sign::Minus => (2 * j + 1, 2 * j),
            };
            jet.f[x] = r;
            jet.df[j][y] = 1.0;
            jet.d2f[j][j][x] = 1.0 / r;
        }
        jet
    }
}

/// A coordinate Lagrangian plane: axis `j` runs along `x_j`, or along `y_j`
/// when `along_y[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneMap {
    pub along_y: Vec<bool>,
}

impl VectorMap for PlaneMap {
    fn out_dim(&self) -> usize {
        2 * self.along_y.len()
    }

    fn eval<T: Real>(&self, s: &[T], out: &mut [T]) {
        for (j, &y) in self.along_y.iter().enumerate() {
            out[2 * j] = if y { T::cst(0.0) } else { s[j] };
            out[2 * j + 1] = if y { s[j] } else { T::cst(0.0) };
        }
    }
}

impl ImmersionOracle for PlaneMap {
    fn dim(&self) -> usize {
        self.along_y.len()
    }

    fn eval(&self, s: &[f64]) -> ImmersionJet {
        let mut jet = ImmersionJet::zero(self.along_y.len());
        for (j, &y) in self.along_y.iter().enumerate() {
            let k = 2 * j + usize::from(y);
            jet.f[k] = s[j];
            jet.df[j][k] = 1.0;
        }
        jet
    }
}

fn oracle_for<M>(map: M, n: usize, kind: OracleKind) -> Result<Arc<dyn ImmersionOracle>>
where
    M: VectorMap + ImmersionOracle + Send + Sync + 'static,
{
    Ok(match kind {
        OracleKind::ClosedForm => Arc::new(map),
        OracleKind::DualNumber => Arc::new(DualNumberOracle::new(map, n)?),
    })
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_signs(v: &[Sign]) -> String {
    v.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>().join(",")
}

/// Torus `∏ S¹(r_j)` in `C^n_p` with the closed-form oracle.
pub fn make_torus(radii: &[f64], p: usize) -> Result<LagrangianChart> {
    make_torus_with(radii, p, OracleKind::ClosedForm)
}

pub fn make_torus_with(radii: &[f64], p: usize, kind: OracleKind) -> Result<LagrangianChart> {
    check_radii(radii)?;
    let n = radii.len();
    let ambient = AmbientFlat::pseudo_kahler(n, p)?;
    let domains = radii
        .iter()
        .map(|r| AxisDomain::circle(TAU * r))
        .collect::<Result<Vec<_>>>()?;
    let oracle = oracle_for(TorusMap { radii: radii.to_vec() }, n, kind)?;
    Ok(LagrangianChart::new(
        format!("torus:n={n},r={},p={p}", fmt_list(radii)),
        ambient,
        domains,
        oracle,
        kind,
    )?
    .with_homogeneous(true))
}

/// Product of hyperbolas `H^1_{ε_j}(r_j)` in `D^n` with the closed-form oracle.
pub fn make_hyperbola_product(radii: &[f64], branches: &[Sign]) -> Result<LagrangianChart> {
    make_hyperbola_product_with(radii, branches, OracleKind::ClosedForm)
}

pub fn make_hyperbola_product_with(radii: &[f64], branches: &[Sign], kind: OracleKind) -> Result<LagrangianChart> {
    check_radii(radii)?;
    crate::error::check_dim(radii.len(), branches.len())?;
    let n = radii.len();
    let map = HyperbolaMap {
        radii: radii.to_vec(),
        branches: branches.to_vec(),
    };
    let chart = LagrangianChart::new(
        format!("hyperbola:n={n},r={},eps={}", fmt_list(radii), fmt_signs(branches)),
        AmbientFlat::para_kahler(n)?,
        vec![AxisDomain::line(LINE_TRUNCATION)?; n],
        oracle_for(map, n, kind)?,
        kind,
    )?;
    // The raw map is homogeneous too, but the cached jet must be exact.
    Ok(chart.with_homogeneous(kind == OracleKind::ClosedForm).with_constant_metric(true))
}

/// Which flat ambient a coordinate plane lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// `C^n_p`: the plane `y = 0`.
    Complex,
    /// `D^n`: the first `p` axes along `y_j`, the rest along `x_j`.
    Para,
}

/// A coordinate Lagrangian plane, which is totally geodesic in a flat
/// (hence Ricci-flat) ambient.
pub fn make_plane(kind: PlaneKind, n: usize, p: usize) -> Result<LagrangianChart> {
    make_plane_with(kind, n, p, OracleKind::ClosedForm)
}

pub fn make_plane_with(kind: PlaneKind, n: usize, p: usize, oracle: OracleKind) -> Result<LagrangianChart> {
    if n == 0 || n > MAX_DIM || p > n {
        return Err(Error::InvalidArgument(format!(
            "plane needs 1 ≤ n ≤ {MAX_DIM} and p ≤ n (n={n}, p={p})"
        )));
    }
    let (ambient, along_y, label) = match kind {
        PlaneKind::Complex => (
            AmbientFlat::pseudo_kahler(n, p)?,
            vec![false; n],
            format!("plane:kind=C,n={n},p={p}"),
        ),
        PlaneKind::Para => (
            AmbientFlat::para_kahler(n)?,
            (0..n).map(|j| j < p).collect(),
            format!("plane:kind=D,n={n},p={p}"),
        ),
    };
    Ok(LagrangianChart::new(
        label,
        ambient,
        vec![AxisDomain::line(LINE_TRUNCATION)?; n],
        oracle_for(PlaneMap { along_y }, n, oracle)?,
        oracle,
    )?
    .with_homogeneous(oracle == OracleKind::ClosedForm)
    .with_constant_metric(true))
}

/// Induced metric coefficients of a coordinate plane.
pub fn plane_metric(kind: PlaneKind, n: usize, p: usize) -> Vec<f64> {
    (0..n)
        .map(|j| match kind {
            PlaneKind::Complex if j < p => -1.0,
            PlaneKind::Complex => 1.0,
            PlaneKind::Para if j < p => -1.0,
            PlaneKind::Para => 1.0,
        })
        .collect()
}

/// `ε (Σ g^{jj} u_jj)²` for a coordinate plane with diagonal metric `metric`.
pub fn plane_certificate(eps: f64, metric: &[f64]) -> SumOfSquares {
    let mut lap = JetForm::default();
    for (j, g) in metric.iter().enumerate() {
        lap = lap.plus(&JetForm::second(j, j, 1.0 / g));
    }
    SumOfSquares::default().push("Δu", Weight::Const(eps), lap)
}

/// The density of a hyperbola product as a sum of squares, for `n ≤ 2`:
/// `−u″² − (u′/r)²` on one axis and
/// `−(ε₁u₁₁ + ε₂u₂₂)² − (ε₁u₁/r₁ − ε₂u₂/r₂)²` on two.
pub fn hyperbola_certificate(radii: &[f64], branches: &[Sign]) -> Option<SumOfSquares> {
    match (radii, branches) {
        ([r], [_]) => Some(
            SumOfSquares::default()
                .push("u''", Weight::Const(-1.0), JetForm::second(0, 0, 1.0))
                .push("u'/r", Weight::Const(-1.0), JetForm::first(0, 1.0 / r)),
        ),
        ([r1, r2], [e1, e2]) => {
            let (e1, e2) = (e1.value(), e2.value());
            Some(
                SumOfSquares::default()
                    .push(
                        "ε₁u₁₁ + ε₂u₂₂",
                        Weight::Const(-1.0),
                        JetForm::second(0, 0, e1).plus(&JetForm::second(1, 1, e2)),
                    )
                    .push(
                        "ε₁u₁/r₁ − ε₂u₂/r₂",
                        Weight::Const(-1.0),
                        JetForm::first(0, e1 / r1).plus(&JetForm::first(1, -e2 / r2)),
                    ),
            )
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::induced_geometry;

    #[test]
    fn torus_geometry() {
        let c = make_torus(&[1.0, 2.0], 1).unwrap();
        let g = induced_geometry(&c, &[0.3, 1.1]).unwrap();
        assert!((g.g.get(0, 0) + 1.0).abs() < 1e-15);
        assert!((g.g.get(1, 1) - 1.0).abs() < 1e-15);
        assert!((g.eta[0] - 1.0).abs() < 1e-14);
        assert!((g.eta[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn hyperbola_vertex_matches_raw_map_near_origin() {
        let br = [Sign::Plus, Sign::Minus];
        let a = make_hyperbola_product(&[1.0, 3.0], &br).unwrap();
        let b = make_hyperbola_product_with(&[1.0, 3.0], &br, OracleKind::DualNumber).unwrap();
        for s in [[0.0, 0.0], [1.5, -2.0]] {
            let ga = induced_geometry(&a, &s).unwrap();
            let gb = induced_geometry(&b, &s).unwrap();
            for i in 0..2 {
                assert!((ga.eta[i] - gb.eta[i]).abs() < 1e-10);
                for j in 0..2 {
                    assert!((ga.g.get(i, j) - gb.g.get(i, j)).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn hyperbola_point_on_curve() {
        let m = HyperbolaMap {
            radii: vec![2.0],
            branches: vec![Sign::Plus],
        };
        let p = m.point(&[0.7]);
        assert!((p[0] * p[0] - p[1] * p[1] - 4.0).abs() < 1e-12);
        assert!(p[0] > 0.0);
    }

    #[test]
    fn plane_rejects_bad_p() {
        assert!(make_plane(PlaneKind::Complex, 2, 3).is_err());
        assert!(make_torus(&[1.0], 2).is_err());
        assert!(make_torus(&[1.0, -1.0], 0).is_err());
    }
}
