//! Parametrized Lagrangian charts in the flat ambients and their induced
//! geometry: metric, cubic form `C_ijk = g(f_ij, J f_k)` and the mean
//! curvature covector `η_k = g(nH, J f_k) = g^{ij} C_ijk`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::AmbientFlat;
use crate::jet::{vector_jet, VectorMap};
use crate::linalg::SquareMat;
use crate::MAX_DIM;

/// Largest real ambient dimension, `2·MAX_DIM`.
pub const MAX_AMBIENT: usize = 2 * MAX_DIM;

/// One chart coordinate axis: a circle of given circumference or a line
/// truncated to `[-truncation, truncation]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxisDomain {
    Circle { circumference: f64 },
    Line { truncation: f64 },
}

impl AxisDomain {
    pub fn circle(circumference: f64) -> Result<Self> {
        if circumference.is_finite() && circumference > 0.0 {
            Ok(AxisDomain::Circle { circumference })
        } else {
            Err(Error::InvalidArgument(format!(
                "circle circumference must be positive, got {circumference}"
            )))
        }
    }

    pub fn line(truncation: f64) -> Result<Self> {
        if truncation.is_finite() && truncation > 0.0 {
            Ok(AxisDomain::Line { truncation })
        } else {
            Err(Error::InvalidArgument(format!(
                "line truncation must be positive, got {truncation}"
            )))
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, AxisDomain::Circle { .. })
    }

    /// Natural length scale: the radius of a circle, 1 on a line.
    pub fn scale(&self) -> f64 {
        match *self {
            AxisDomain::Circle { circumference } => circumference / std::f64::consts::TAU,
            AxisDomain::Line { .. } => 1.0,
        }
    }
}

impl fmt::Display for AxisDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisDomain::Circle { circumference } => write!(f, "circle({circumference})"),
            AxisDomain::Line { truncation } => write!(f, "line({truncation})"),
        }
    }
}

/// Immersion value and partials at one chart point, in the interleaved
/// real layout of [`AmbientFlat`]. Only the first `n` / `2n` slots are used.
#[derive(Clone, Copy, Debug)]
pub struct ImmersionJet {
    pub n: usize,
    pub f: [f64; MAX_AMBIENT],
    pub df: [[f64; MAX_AMBIENT]; MAX_DIM],
    pub d2f: [[[f64; MAX_AMBIENT]; MAX_DIM]; MAX_DIM],
}

impl ImmersionJet {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            f: [0.0; MAX_AMBIENT],
            df: [[0.0; MAX_AMBIENT]; MAX_DIM],
            d2f: [[[0.0; MAX_AMBIENT]; MAX_DIM]; MAX_DIM],
        }
    }

    pub fn max_abs(&self) -> f64 {
        let m = 2 * self.n;
        let mut acc = self.f[..m].iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for i in 0..self.n {
            acc = self.df[i][..m].iter().fold(acc, |a, x| a.max(x.abs()));
            for j in 0..self.n {
                acc = self.d2f[i][j][..m].iter().fold(acc, |a, x| a.max(x.abs()));
            }
        }
        acc
    }
}

/// Produces the immersion jet at a chart point.
pub trait ImmersionOracle: Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, s: &[f64]) -> ImmersionJet;
}

/// Derivatives of any generic map by second-order forward differentiation.
pub struct DualNumberOracle<M> {
    map: M,
    n: usize,
}

impl<M: VectorMap> DualNumberOracle<M> {
    pub fn new(map: M, n: usize) -> Result<Self> {
        check_dim(2 * n, map.out_dim())?;
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "chart dimension must be in 1..={MAX_DIM}, got {n}"
            )));
        }
        Ok(Self { map, n })
    }
}

impl<M: VectorMap + Send + Sync> ImmersionOracle for DualNumberOracle<M> {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, s: &[f64]) -> ImmersionJet {
        let vj = vector_jet(&self.map, s);
        let mut out = ImmersionJet::zero(self.n);
        let m = 2 * self.n;
        out.f[..m].copy_from_slice(&vj.f);
        for i in 0..self.n {
            out.df[i][..m].copy_from_slice(&vj.df[i]);
            for j in 0..self.n {
                out.d2f[i][j][..m].copy_from_slice(&vj.d2f[i][j]);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    ClosedForm,
    DualNumber,
}

/// A parametrized n-dimensional submanifold of a flat ambient.
#[derive(Clone)]
pub struct LagrangianChart {
    pub ambient: AmbientFlat,
    pub domains: Vec<AxisDomain>,
    pub oracle: Arc<dyn ImmersionOracle>,
    pub oracle_kind: OracleKind,
    /// Set when the induced metric is known to be constant in the chart
    /// coordinates, which lets the Laplacian skip metric differentiation.
    pub constant_metric: bool,
    /// Set when metric, cubic form and mean curvature are the same at every
    /// point, so consumers may evaluate them once.
    pub homogeneous: bool,
    pub label: String,
}

impl fmt::Debug for LagrangianChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LagrangianChart")
            .field("label", &self.label)
            .field("ambient", &self.ambient)
            .field("domains", &self.domains)
            .field("oracle_kind", &self.oracle_kind)
            .finish()
    }
}

impl LagrangianChart {
    pub fn new(
        label: impl Into<String>,
        ambient: AmbientFlat,
        domains: Vec<AxisDomain>,
        oracle: Arc<dyn ImmersionOracle>,
        oracle_kind: OracleKind,
    ) -> Result<Self> {
        let n = ambient.n();
        if n > MAX_DIM {
            return Err(Error::Unsupported(format!(
                "charts of dimension {n} (max {MAX_DIM})"
            )));
        }
        check_dim(n, domains.len())?;
        check_dim(n, oracle.dim())?;
        Ok(Self {
            ambient,
            domains,
            oracle,
            oracle_kind,
            constant_metric: false,
            homogeneous: false,
            label: label.into(),
        })
    }

    pub fn with_constant_metric(mut self, constant: bool) -> Self {
        self.constant_metric = constant;
        self
    }

    /// Marks the induced geometry as point-independent (implies constant metric).
    pub fn with_homogeneous(mut self, homogeneous: bool) -> Self {
        self.homogeneous = homogeneous;
        self.constant_metric |= homogeneous;
        self
    }

    pub fn dim(&self) -> usize {
        self.ambient.n()
    }

    pub fn eps(&self) -> f64 {
        self.ambient.eps()
    }

    fn frame_scale(&self, jet: &ImmersionJet) -> f64 {
        let m = 2 * jet.n;
        (0..jet.n)
            .map(|i| jet.df[i][..m].iter().map(|x| x * x).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Induced metric, cubic form and mean curvature at one chart point.
#[derive(Clone, Copy, Debug)]
pub struct InducedGeometry {
    pub n: usize,
    pub point: [f64; MAX_DIM],
    pub g: SquareMat,
    pub g_inv: SquareMat,
    pub det: f64,
    pub vol_density: f64,
    pub c: [[[f64; MAX_DIM]; MAX_DIM]; MAX_DIM],
    /// `η_k = g(nH, J f_{s_k})`.
    pub eta: [f64; MAX_DIM],
}

impl InducedGeometry {
    pub fn mean_curvature_covector(&self) -> Vec<f64> {
        self.eta[..self.n].to_vec()
    }

    /// `(g^{-1} η)^k`, i.e. the coefficients of `u_{s_k}` in `g(nH, J∇u)`.
    pub fn hamiltonian_coefficients(&self) -> [f64; MAX_DIM] {
        let mut out = [0.0; MAX_DIM];
        self.g_inv.mul_vec(&self.eta, &mut out);
        out
    }

    pub fn cubic(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.c[i][j][..n].to_vec()).collect())
            .collect()
    }

    /// Maximum of `|C_ijk − C_σ(ijk)|` over all index permutations.
    pub fn trisymmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.c[i][j][k];
                    for w in [
                        self.c[i][k][j],
                        self.c[j][i][k],
                        self.c[j][k][i],
                        self.c[k][i][j],
                        self.c[k][j][i],
                    ] {
                        m = m.max((v - w).abs());
                    }
                }
            }
        }
        m
    }
}

fn frame_data(chart: &LagrangianChart, jet: &ImmersionJet) -> (SquareMat, [[[f64; MAX_DIM]; MAX_DIM]; MAX_DIM]) {
    let n = jet.n;
    let m = 2 * n;
    let amb = &chart.ambient;
    let mut g = SquareMat::zeros(n);
    let mut jf = [[0.0; MAX_AMBIENT]; MAX_DIM];
    for i in 0..n {
        amb.apply_j_raw(&jet.df[i][..m], &mut jf[i][..m]);
        for j in 0..=i {
            let v = amb.metric_raw(&jet.df[i][..m], &jet.df[j][..m]);
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    let mut c = [[[0.0; MAX_DIM]; MAX_DIM]; MAX_DIM];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = amb.metric_raw(&jet.d2f[i][j][..m], &jf[k][..m]);
            }
        }
    }
    (g, c)
}

/// Induced geometry of `chart` at `s`.
pub fn induced_geometry(chart: &LagrangianChart, s: &[f64]) -> Result<InducedGeometry> {
    let n = chart.dim();
    check_dim(n, s.len())?;
    let jet = chart.oracle.eval(s);
    let (g, c) = frame_data(chart, &jet);
    let (det, inv) = g.det_inverse();
    let scale = chart.frame_scale(&jet);
    let degenerate = || Error::DegenerateMetric {
        point: s.to_vec(),
        det,
    };
    if !det.is_finite() || det.abs() < 1e-10 * scale.powi(n as i32) {
        return Err(degenerate());
    }
    let g_inv = inv.ok_or_else(degenerate)?;
    let mut eta = [0.0; MAX_DIM];
    for (k, e) in eta.iter_mut().enumerate().take(n) {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += g_inv.get(i, j) * c[i][j][k];
            }
        }
        *e = acc;
    }
    let mut point = [0.0; MAX_DIM];
    point[..n].copy_from_slice(s);
    Ok(InducedGeometry {
        n,
        point,
        g,
        g_inv,
        det,
        vol_density: det.abs().sqrt(),
        c,
        eta,
    })
}

/// Sample points: `per_axis` equispaced nodes on each circle (endpoint
/// excluded) and on `[-w, w]` for lines, `w = min(truncation, 2)`.
pub fn sample_grid(domains: &[AxisDomain], per_axis: usize) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = domains
        .iter()
        .map(|d| match *d {
            AxisDomain::Circle { circumference } => (0..per_axis)
                .map(|k| circumference * k as f64 / per_axis as f64)
                .collect(),
            AxisDomain::Line { truncation } => {
                let w = truncation.min(2.0);
                if per_axis == 1 {
                    vec![0.0]
                } else {
                    (0..per_axis)
                        .map(|k| -w + 2.0 * w * k as f64 / (per_axis - 1) as f64)
                        .collect()
                }
            }
        })
        .collect();
    let mut pts = vec![Vec::new()];
    for axis in &axes {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Largest `|ω(f_{s_i}, f_{s_j})|` over the grid.
pub fn check_lagrangian(chart: &LagrangianChart, grid: &[Vec<f64>]) -> f64 {
    let n = chart.dim();
    let m = 2 * n;
    let amb = &chart.ambient;
    let eps = amb.eps();
    grid.par_iter()
        .map(|s| {
            let jet = chart.oracle.eval(s);
            let mut worst: f64 = 0.0;
            let mut jf = [0.0; MAX_AMBIENT];
            for i in 0..n {
                amb.apply_j_raw(&jet.df[i][..m], &mut jf[..m]);
                for j in 0..n {
                    let w = eps * amb.metric_raw(&jf[..m], &jet.df[j][..m]);
                    worst = worst.max(w.abs());
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// Largest deviation of the cubic form from full symmetry over the grid.
pub fn trisymmetry_residual(chart: &LagrangianChart, grid: &[Vec<f64>]) -> f64 {
    let n = chart.dim();
    grid.par_iter()
        .map(|s| {
            let jet = chart.oracle.eval(s);
            let (g, c) = frame_data(chart, &jet);
            let geo = InducedGeometry {
                n,
                point: [0.0; MAX_DIM],
                g,
                g_inv: g,
                det: 0.0,
                vol_density: 0.0,
                c,
                eta: [0.0; MAX_DIM],
            };
            geo.trisymmetry_defect()
        })
        .reduce(|| 0.0, f64::max)
}

/// Largest `|div(nJH)|` over the grid. The tangent field `nJH` has
/// components `X^l = -g^{lk} η_k`; its divergence is evaluated as
/// `(1/√|g|) ∂_l(√|g| X^l)` by central differences.
pub fn check_h_minimal(chart: &LagrangianChart, grid: &[Vec<f64>]) -> Result<f64> {
    let n = chart.dim();
    let weighted_field = |s: &[f64], l: usize| -> Result<f64> {
        let geo = induced_geometry(chart, s)?;
        let a = geo.hamiltonian_coefficients();
        Ok(-geo.vol_density * a[l])
    };
    let vals: Vec<f64> = grid
        .par_iter()
        .map(|s| -> Result<f64> {
            let geo = induced_geometry(chart, s)?;
            let mut div = 0.0;
            let mut p = s.clone();
            for l in 0..n {
                let h = 1e-4 * chart.domains[l].scale();
                p[l] = s[l] + h;
                let plus = weighted_field(&p, l)?;
                p[l] = s[l] - h;
                let minus = weighted_field(&p, l)?;
                p[l] = s[l];
                div += (plus - minus) / (2.0 * h);
            }
            Ok((div / geo.vol_density).abs())
        })
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Real;

    /// The sheared plane spanned by e₁ and i·e₁ in C².
    struct Sheared;
    impl VectorMap for Sheared {
        fn out_dim(&self) -> usize {
            4
        }
        fn eval<T: Real>(&self, s: &[T], out: &mut [T]) {
            out[0] = s[0];
            out[1] = s[1];
            out[2] = T::cst(0.0);
            out[3] = T::cst(0.0);
        }
    }

    fn sheared_chart() -> LagrangianChart {
        let amb = AmbientFlat::pseudo_kahler(2, 0).unwrap();
        LagrangianChart::new(
            "sheared",
            amb,
            vec![AxisDomain::line(10.0).unwrap(); 2],
            Arc::new(DualNumberOracle::new(Sheared, 2).unwrap()),
            OracleKind::DualNumber,
        )
        .unwrap()
    }

    #[test]
    fn sheared_plane_is_not_lagrangian() {
        let chart = sheared_chart();
        let grid = sample_grid(&chart.domains, 3);
        assert!((check_lagrangian(&chart, &grid) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_metric_is_reported() {
        struct Collapsed;
        impl VectorMap for Collapsed {
            fn out_dim(&self) -> usize {
                4
            }
            fn eval<T: Real>(&self, s: &[T], out: &mut [T]) {
                out[0] = s[0] + s[1];
                out[1] = T::cst(0.0);
                out[2] = s[0] + s[1];
                out[3] = T::cst(0.0);
            }
        }
        let chart = LagrangianChart::new(
            "collapsed",
            AmbientFlat::pseudo_kahler(2, 0).unwrap(),
            vec![AxisDomain::line(1.0).unwrap(); 2],
            Arc::new(DualNumberOracle::new(Collapsed, 2).unwrap()),
            OracleKind::DualNumber,
        )
        .unwrap();
        assert!(matches!(
            induced_geometry(&chart, &[0.1, 0.2]),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn grid_shape() {
        let d = [AxisDomain::circle(1.0).unwrap(), AxisDomain::line(5.0).unwrap()];
        let g = sample_grid(&d, 17);
        assert_eq!(g.len(), 17 * 17);
        assert_eq!(g[0], vec![0.0, -2.0]);
        assert!((g[16][1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn axis_domain_validation() {
        assert!(AxisDomain::circle(0.0).is_err());
        assert!(AxisDomain::line(-1.0).is_err());
        assert!((AxisDomain::circle(std::f64::consts::TAU * 3.0).unwrap().scale() - 3.0).abs() < 1e-15);
    }
}
