//! Hamiltonian second variation of volume.
//!
//! For a Lagrangian chart in a flat ambient the density is
//!
//! ```text
//! [ ε((Δu)² − Ric^M(∇u,∇u) − 2 g(nH, h(∇u,∇u))) + g(nH, J∇u)² ] · √|det g|
//! ```
//!
//! with `Ric^M = 0`, `g(nH, h(X,X)) = ε C_ijk X^i X^j (g⁻¹η)^k` and
//! `g(nH, J∇u) = η_k ∇u^k`. The Hessian form replaces `(Δu)²` by
//! `|∇²u|² + Ric^L(∇u,∇u)`; both integrate to the same value.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::immersion::{induced_geometry, AxisDomain, InducedGeometry, LagrangianChart};
use crate::jet::UJet;
use crate::linalg::SquareMat;
use crate::quadrature::{integrate, GridSpec};
use crate::testfn::TestFunction;
use crate::MAX_DIM;

/// A pseudo-Riemannian metric on the chart domain.
pub trait MetricField: Send + Sync {
    fn dim(&self) -> usize;
    fn metric(&self, s: &[f64]) -> Result<SquareMat>;
    fn ricci(&self, s: &[f64]) -> Result<SquareMat>;
    /// True when the coefficients do not depend on the point.
    fn is_constant(&self) -> bool;
}

/// A metric with constant coefficients.
#[derive(Clone, Debug)]
pub struct ConstantMetric {
    g: SquareMat,
}

impl ConstantMetric {
    pub fn new(g: SquareMat) -> Self {
        Self { g }
    }

    pub fn diag(d: &[f64]) -> Self {
        Self::new(SquareMat::diag(d))
    }
}

impl MetricField for ConstantMetric {
    fn dim(&self) -> usize {
        self.g.n()
    }
    fn metric(&self, _s: &[f64]) -> Result<SquareMat> {
        Ok(self.g)
    }
    fn ricci(&self, _s: &[f64]) -> Result<SquareMat> {
        Ok(SquareMat::zeros(self.g.n()))
    }
    fn is_constant(&self) -> bool {
        true
    }
}

/// The metric induced by a chart.
pub struct ChartMetric<'a>(pub &'a LagrangianChart);

impl MetricField for ChartMetric<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn metric(&self, s: &[f64]) -> Result<SquareMat> {
        Ok(induced_geometry(self.0, s)?.g)
    }
    fn ricci(&self, _s: &[f64]) -> Result<SquareMat> {
        if self.0.constant_metric {
            Ok(SquareMat::zeros(self.0.dim()))
        } else {
            Err(Error::Unsupported(
                "Ricci curvature of a non-constant induced metric".into(),
            ))
        }
    }
    fn is_constant(&self) -> bool {
        self.0.constant_metric
    }
}

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `[[-2aκ, -1], [-1, 0]]` in coordinates `(s, t)`, where `aκ` depends on
/// `s` only. This metric is flat for every `aκ`.
#[derive(Clone)]
pub struct TangentBundleMetric {
    pub a_kappa: ScalarFn,
    pub a_is_zero: bool,
}

impl TangentBundleMetric {
    pub fn new(a_kappa: ScalarFn, a_is_zero: bool) -> Self {
        Self { a_kappa, a_is_zero }
    }

    pub fn normal_bundle() -> Self {
        Self::new(Arc::new(|_| 0.0), true)
    }
}

impl MetricField for TangentBundleMetric {
    fn dim(&self) -> usize {
        2
    }
    fn metric(&self, s: &[f64]) -> Result<SquareMat> {
        check_dim(2, s.len())?;
        SquareMat::from_rows(&[vec![-2.0 * (self.a_kappa)(s[0]), -1.0], vec![-1.0, 0.0]])
    }
    fn ricci(&self, _s: &[f64]) -> Result<SquareMat> {
        Ok(SquareMat::zeros(2))
    }
    fn is_constant(&self) -> bool {
        self.a_is_zero
    }
}

fn inverse_at(m: &dyn MetricField, s: &[f64]) -> Result<(SquareMat, SquareMat, f64)> {
    let g = m.metric(s)?;
    let (det, inv) = g.det_inverse();
    let scale = g.max_abs().max(f64::MIN_POSITIVE);
    if det.abs() < 1e-10 * scale.powi(g.n() as i32) {
        return Err(Error::DegenerateMetric {
            point: s.to_vec(),
            det,
        });
    }
    let inv = inv.ok_or(Error::DegenerateMetric {
        point: s.to_vec(),
        det,
    })?;
    Ok((g, inv, det))
}

/// Richardson-extrapolated central difference of `f` along axis `i`.
fn central_diff<F: Fn(&[f64]) -> Result<f64>>(f: F, s: &[f64], i: usize, h: f64) -> Result<f64> {
    let mut p = s.to_vec();
    let mut d = |h: f64| -> Result<f64> {
        p[i] = s[i] + h;
        let a = f(&p)?;
        p[i] = s[i] - h;
        let b = f(&p)?;
        p[i] = s[i];
        Ok((a - b) / (2.0 * h))
    };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

const METRIC_FD_STEP: f64 = 1e-3;

/// `(∇u)^j = g^{ij} u_{s_i}` from a precomputed jet.
pub fn gradient_of_jet(u: &UJet, g_inv: &SquareMat) -> [f64; MAX_DIM] {
    let mut out = [0.0; MAX_DIM];
    g_inv.mul_vec(&u.d1, &mut out);
    out
}

/// `g^{ij} u_ij`, the principal part of the Laplacian.
pub fn trace_hessian(u: &UJet, g_inv: &SquareMat) -> f64 {
    let n = u.n;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += g_inv.get(i, j) * u.d2[i][j];
        }
    }
    acc
}

/// `Δu = (1/√|g|) ∂_i(√|g| g^{ij} u_j)` for a precomputed jet.
pub fn laplacian_of_jet(u: &UJet, m: &dyn MetricField, s: &[f64]) -> Result<f64> {
    let (_, g_inv, det) = inverse_at(m, s)?;
    let mut lap = trace_hessian(u, &g_inv);
    if !m.is_constant() {
        let n = m.dim();
        let vol = det.abs().sqrt();
        for i in 0..n {
            for j in 0..n {
                let coeff = |p: &[f64]| -> Result<f64> {
                    let (_, inv, d) = inverse_at(m, p)?;
                    Ok(d.abs().sqrt() * inv.get(i, j))
                };
                let d = central_diff(coeff, s, i, METRIC_FD_STEP)?;
                lap += d / vol * u.d1[j];
            }
        }
    }
    Ok(lap)
}

/// `(∇u)^j = g^{ij} u_{s_i}`.
pub fn gradient(u: &TestFunction, m: &dyn MetricField, s: &[f64]) -> Result<Vec<f64>> {
    check_dim(m.dim(), s.len())?;
    check_dim(u.dim, s.len())?;
    let (_, g_inv, _) = inverse_at(m, s)?;
    Ok(gradient_of_jet(&u.jet(s), &g_inv)[..s.len()].to_vec())
}

/// `Δu = div grad u`.
pub fn laplacian(u: &TestFunction, m: &dyn MetricField, s: &[f64]) -> Result<f64> {
    check_dim(m.dim(), s.len())?;
    check_dim(u.dim, s.len())?;
    laplacian_of_jet(&u.jet(s), m, s)
}

/// `|∇²u|² = g^{ia} g^{jb} u_ij u_ab` with coordinate second partials.
fn hessian_norm_sq(u: &UJet, g_inv: &SquareMat) -> f64 {
    let n = u.n;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    acc += g_inv.get(i, a) * g_inv.get(j, b) * u.d2[i][j] * u.d2[a][b];
                }
            }
        }
    }
    acc
}

/// Square weight, constant or point-dependent.
#[derive(Clone)]
pub enum Weight {
    Const(f64),
    Field { label: String, f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync> },
}

impl Weight {
    pub fn at(&self, s: &[f64]) -> f64 {
        match self {
            Weight::Const(c) => *c,
            Weight::Field { f, .. } => f(s),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Const(c) => write!(f, "{c}"),
            Weight::Field { label, .. } => f.write_str(label),
        }
    }
}

/// A linear functional on jets: `v·u + Σ d1_i u_i + Σ d2_ij u_ij`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JetForm {
    pub v: f64,
    pub d1: [f64; MAX_DIM],
    pub d2: [[f64; MAX_DIM]; MAX_DIM],
}

impl JetForm {
    pub fn first(i: usize, c: f64) -> Self {
        let mut f = Self::default();
        f.d1[i] = c;
        f
    }

    pub fn second(i: usize, j: usize, c: f64) -> Self {
        let mut f = Self::default();
        f.d2[i][j] = c;
        f
    }

    pub fn plus(mut self, other: &JetForm) -> Self {
        self.v += other.v;
        for i in 0..MAX_DIM {
            self.d1[i] += other.d1[i];
            for j in 0..MAX_DIM {
                self.d2[i][j] += other.d2[i][j];
            }
        }
        self
    }

    pub fn apply(&self, u: &UJet) -> f64 {
        let mut acc = self.v * u.v;
        for i in 0..u.n {
            acc += self.d1[i] * u.d1[i];
            for j in 0..u.n {
                acc += self.d2[i][j] * u.d2[i][j];
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct SquareTerm {
    pub label: String,
    pub weight: Weight,
    pub form: JetForm,
}

/// A density written as `Σ w_k(s)·(L_k u)²`.
#[derive(Clone, Debug, Default)]
pub struct SumOfSquares {
    pub terms: Vec<SquareTerm>,
}

impl SumOfSquares {
    pub fn push(mut self, label: impl Into<String>, weight: Weight, form: JetForm) -> Self {
        self.terms.push(SquareTerm {
            label: label.into(),
            weight,
            form,
        });
        self
    }

    pub fn eval(&self, s: &[f64], u: &UJet) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let l = t.form.apply(u);
                t.weight.at(s) * l * l
            })
            .sum()
    }

    pub fn describe(&self) -> String {
        self.terms
            .iter()
            .map(|t| format!("{:?}·({})²", t.weight, t.label))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Flat-torus spectral data: `δ²V = ε Σ a_k² λ_k(λ_k − c)` over the
/// eigenmodes of a flat torus with the given radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub radii: Vec<f64>,
    pub c: f64,
    pub eps: f64,
}

/// A quadratic functional `u ↦ ∫ density(s, jet u)`.
pub trait QuadraticFunctional: Send + Sync {
    fn label(&self) -> String;
    fn domains(&self) -> &[AxisDomain];
    fn density(&self, s: &[f64], u: &UJet) -> Result<f64>;
    fn sum_of_squares(&self) -> Option<&SumOfSquares> {
        None
    }
    fn spectral(&self) -> Option<&SpectralData> {
        None
    }
    fn dim(&self) -> usize {
        self.domains().len()
    }
}

/// The pieces of the second-variation density at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityTerms {
    pub eps: f64,
    pub laplacian: f64,
    pub hessian_sq: f64,
    pub ricci_ambient: f64,
    pub ricci_intrinsic: f64,
    /// `g(nH, h(∇u, ∇u))`.
    pub nh_h: f64,
    /// `g(nH, J∇u)`.
    pub nh_ju: f64,
    pub vol: f64,
}

impl DensityTerms {
    pub fn main_theorem(&self) -> f64 {
        (self.eps * (self.laplacian.powi(2) - self.ricci_ambient - 2.0 * self.nh_h) + self.nh_ju.powi(2))
            * self.vol
    }

    pub fn hessian_form(&self) -> f64 {
        (self.eps * (self.hessian_sq - self.ricci_ambient + self.ricci_intrinsic - 2.0 * self.nh_h)
            + self.nh_ju.powi(2))
            * self.vol
    }
}

/// Evaluates every term of the density of `chart` at `s`.
pub fn density_terms(chart: &LagrangianChart, s: &[f64], u: &UJet) -> Result<DensityTerms> {
    let geo = induced_geometry(chart, s)?;
    density_terms_at(chart, &geo, s, u)
}

fn cached_geometry(chart: &LagrangianChart) -> Option<InducedGeometry> {
    if chart.homogeneous {
        induced_geometry(chart, &vec![0.0; chart.dim()]).ok()
    } else {
        None
    }
}

fn density_terms_at(chart: &LagrangianChart, geo: &InducedGeometry, s: &[f64], u: &UJet) -> Result<DensityTerms> {
    let n = geo.n;
    let eps = chart.eps();
    let grad = gradient_of_jet(u, &geo.g_inv);
    let lap = if chart.constant_metric {
        trace_hessian(u, &geo.g_inv)
    } else {
        laplacian_of_jet(u, &ChartMetric(chart), s)?
    };
    let a = geo.hamiltonian_coefficients();
    let mut c_grad = 0.0;
    let mut nh_ju = 0.0;
    for k in 0..n {
        nh_ju += grad[k] * geo.eta[k];
        let mut inner = 0.0;
        for i in 0..n {
            for j in 0..n {
                inner += geo.c[i][j][k] * grad[i] * grad[j];
            }
        }
        c_grad += inner * a[k];
    }
    let ricci_intrinsic = if chart.constant_metric {
        0.0
    } else {
        f64::NAN
    };
    Ok(DensityTerms {
        eps,
        laplacian: lap,
        hessian_sq: hessian_norm_sq(u, &geo.g_inv),
        ricci_ambient: 0.0,
        ricci_intrinsic,
        nh_h: eps * c_grad,
        nh_ju,
        vol: geo.vol_density,
    })
}

/// The second variation of a Lagrangian chart, with an optional
/// sum-of-squares rewriting of its density supplied by the catalog.
#[derive(Clone)]
pub struct MainTheoremFunctional {
    pub chart: LagrangianChart,
    pub certificate: Option<SumOfSquares>,
    geometry: Option<InducedGeometry>,
}

impl MainTheoremFunctional {
    pub fn new(chart: LagrangianChart) -> Self {
        Self {
            geometry: cached_geometry(&chart),
            chart,
            certificate: None,
        }
    }

    pub fn terms(&self, s: &[f64], u: &UJet) -> Result<DensityTerms> {
        match &self.geometry {
            Some(geo) => density_terms_at(&self.chart, geo, s, u),
            None => density_terms(&self.chart, s, u),
        }
    }

    pub fn with_certificate(mut self, sos: SumOfSquares) -> Self {
        self.certificate = Some(sos);
        self
    }
}

impl QuadraticFunctional for MainTheoremFunctional {
    fn label(&self) -> String {
        self.chart.label.clone()
    }
    fn domains(&self) -> &[AxisDomain] {
        &self.chart.domains
    }
    fn density(&self, s: &[f64], u: &UJet) -> Result<f64> {
        Ok(self.terms(s, u)?.main_theorem())
    }
    fn sum_of_squares(&self) -> Option<&SumOfSquares> {
        self.certificate.as_ref()
    }
}

/// The Hessian form of the density; only for charts with constant induced
/// metric, where covariant and coordinate Hessians agree.
pub struct HessianFormFunctional(MainTheoremFunctional);

impl HessianFormFunctional {
    pub fn new(chart: &LagrangianChart) -> Result<Self> {
        if !chart.constant_metric {
            return Err(Error::Unsupported(
                "Hessian form needs a chart with constant induced metric".into(),
            ));
        }
        Ok(Self(MainTheoremFunctional::new(chart.clone())))
    }
}

impl QuadraticFunctional for HessianFormFunctional {
    fn label(&self) -> String {
        format!("{} (Hessian form)", self.0.chart.label)
    }
    fn domains(&self) -> &[AxisDomain] {
        &self.0.chart.domains
    }
    fn density(&self, s: &[f64], u: &UJet) -> Result<f64> {
        Ok(self.0.terms(s, u)?.hessian_form())
    }
}

/// `∫ density(jet u)` with the integration boxes taken from `u`.
pub fn evaluate(f: &dyn QuadraticFunctional, u: &TestFunction, grid: &GridSpec) -> Result<f64> {
    check_dim(f.dim(), u.dim)?;
    let boxes = u.support_boxes(f.domains())?;
    integrate(|s| f.density(s, &u.jet(s)), f.domains(), &boxes, grid)
}

/// Main-Theorem second variation of `f` in the direction `J∇u`.
pub fn second_variation(f: &dyn QuadraticFunctional, u: &TestFunction, grid: &GridSpec) -> Result<f64> {
    evaluate(f, u, grid)
}

/// Second variation through the Hessian form.
pub fn second_variation_raw(chart: &LagrangianChart, u: &TestFunction, grid: &GridSpec) -> Result<f64> {
    evaluate(&HessianFormFunctional::new(chart)?, u, grid)
}

/// `∫ u²` over the domains.
pub fn l2_norm_sq(u: &TestFunction, domains: &[AxisDomain], grid: &GridSpec) -> Result<f64> {
    let boxes = u.support_boxes(domains)?;
    integrate(|s| Ok(u.value(s).powi(2)), domains, &boxes, grid)
}

fn require_constant(m: &dyn MetricField) -> Result<(SquareMat, SquareMat)> {
    if !m.is_constant() {
        return Err(Error::Unsupported(
            "Bochner/Reilly checks need a metric with constant coefficients".into(),
        ));
    }
    let s = vec![0.0; m.dim()];
    let (g, inv, _) = inverse_at(m, &s)?;
    Ok((g, inv))
}

/// `½Δ|∇u|² − Ric(∇u,∇u) − g(∇u, ∇Δu) − |∇²u|²` at `s`. The two outer
/// derivatives are Richardson-extrapolated central differences of exact
/// first-level quantities.
pub fn bochner_residual(u: &TestFunction, m: &dyn MetricField, s: &[f64]) -> Result<f64> {
    check_dim(m.dim(), s.len())?;
    check_dim(u.dim, s.len())?;
    let (_, g_inv) = require_constant(m)?;
    let n = s.len();
    let h = 1e-3;

    // ∂_j |∇u|² = 2 g^{ab} u_a u_bj
    let grad_norm_partial = |j: usize| {
        move |p: &[f64]| -> Result<f64> {
            let w = u.jet(p);
            let mut acc = 0.0;
            for a in 0..n {
                for b in 0..n {
                    acc += 2.0 * g_inv.get(a, b) * w.d1[a] * w.d2[b][j];
                }
            }
            Ok(acc)
        }
    };
    let mut half_lap_norm = 0.0;
    for i in 0..n {
        for j in 0..n {
            let gij = g_inv.get(i, j);
            if gij != 0.0 {
                half_lap_norm += 0.5 * gij * central_diff(grad_norm_partial(j), s, i, h)?;
            }
        }
    }

    let lap_u = |p: &[f64]| -> Result<f64> { Ok(trace_hessian(&u.jet(p), &g_inv)) };
    let w = u.jet(s);
    let grad = gradient_of_jet(&w, &g_inv);
    let mut grad_dot = 0.0;
    for k in 0..n {
        grad_dot += grad[k] * central_diff(lap_u, s, k, h)?;
    }
    let ric = m.ricci(s)?.bilinear(&grad, &grad);
    Ok(half_lap_norm - ric - grad_dot - hessian_norm_sq(&w, &g_inv))
}

/// `∫ (Δu)² − |∇²u|² − Ric(∇u,∇u) dv`.
pub fn reilly_residual(u: &TestFunction, m: &dyn MetricField, domains: &[AxisDomain], grid: &GridSpec) -> Result<f64> {
    check_dim(m.dim(), domains.len())?;
    let (g, g_inv) = require_constant(m)?;
    let vol = g.det_inverse().0.abs().sqrt();
    let boxes = u.support_boxes(domains)?;
    integrate(
        |s| {
            let w = u.jet(s);
            let lap = trace_hessian(&w, &g_inv);
            let grad = gradient_of_jet(&w, &g_inv);
            let ric = m.ricci(s)?.bilinear(&grad, &grad);
            Ok((lap * lap - hessian_norm_sq(&w, &g_inv) - ric) * vol)
        },
        domains,
        &boxes,
        grid,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{Profile, Term};

    fn monomial(coef: f64, a: usize, b: usize) -> Term {
        let pow = |k: usize| {
            let mut c = vec![0.0; k + 1];
            c[k] = 1.0;
            Profile::Poly { coeffs: c }
        };
        Term::Product {
            coef,
            factors: vec![pow(a), pow(b)],
        }
    }

    #[test]
    fn gradient_examples() {
        let m = ConstantMetric::diag(&[1.0, -1.0]);
        let u = TestFunction::new("s1 s2", 2, vec![monomial(1.0, 1, 1)]).unwrap();
        let s = [0.3, -0.8];
        let g = gradient(&u, &m, &s).unwrap();
        assert!((g[0] - s[1]).abs() < 1e-15);
        assert!((g[1] + s[0]).abs() < 1e-15);

        let tb = TangentBundleMetric::new(Arc::new(|s| 0.5 + 0.1 * s), false);
        let v = TestFunction::new("mixed", 2, vec![monomial(1.0, 2, 1), monomial(-0.5, 0, 2)]).unwrap();
        let s = [0.4, 1.3];
        let w = v.jet(&s);
        let ak = 0.5 + 0.1 * s[0];
        let g = gradient(&v, &tb, &s).unwrap();
        assert!((g[0] + w.d1[1]).abs() < 1e-14);
        assert!((g[1] - (2.0 * ak * w.d1[1] - w.d1[0])).abs() < 1e-14);
    }

    #[test]
    fn laplacian_examples() {
        let v = TestFunction::new("mixed", 2, vec![monomial(1.0, 2, 1), monomial(-0.5, 0, 2), monomial(2.0, 1, 1)]).unwrap();
        let s = [0.4, 1.3];
        let w = v.jet(&s);
        let nb = TangentBundleMetric::normal_bundle();
        assert!((laplacian(&v, &nb, &s).unwrap() + 2.0 * w.d2[0][1]).abs() < 1e-14);

        let tb = TangentBundleMetric::new(Arc::new(|s| (0.5 * s).sin()), false);
        let expected = -2.0 * w.d2[0][1] + 2.0 * (0.5 * s[0]).sin() * w.d2[1][1];
        assert!((laplacian(&v, &tb, &s).unwrap() - expected).abs() < 1e-10);

        let torus = ConstantMetric::diag(&[-1.0, 1.0]);
        assert!((laplacian(&v, &torus, &s).unwrap() - (-w.d2[0][0] + w.d2[1][1])).abs() < 1e-14);
        let c = TestFunction::constant(2, 3.0);
        assert_eq!(laplacian(&c, &torus, &s).unwrap(), 0.0);
    }

    #[test]
    fn bochner_exact_cases() {
        let m = ConstantMetric::diag(&[1.0, -1.0]);
        let linear = TestFunction::new("lin", 2, vec![monomial(2.0, 1, 0), monomial(-1.0, 0, 1)]).unwrap();
        assert!(bochner_residual(&linear, &m, &[0.3, 0.2]).unwrap().abs() < 1e-12);
        let q = TestFunction::new("s1²-s2²", 2, vec![monomial(1.0, 2, 0), monomial(-1.0, 0, 2)]).unwrap();
        assert!(bochner_residual(&q, &m, &[0.7, -0.4]).unwrap().abs() < 1e-9);
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let m = ConstantMetric::diag(&[1.0, 0.0]);
        let u = TestFunction::constant(2, 1.0);
        assert!(matches!(gradient(&u, &m, &[0.0, 0.0]), Err(Error::DegenerateMetric { .. })));
    }

    #[test]
    fn sum_of_squares_evaluation() {
        let sos = SumOfSquares::default()
            .push("u_ss + u_tt", Weight::Const(-1.0), JetForm::second(0, 0, 1.0).plus(&JetForm::second(1, 1, 1.0)))
            .push("u_s", Weight::Const(2.0), JetForm::first(0, 1.0));
        let v = TestFunction::new("mixed", 2, vec![monomial(1.0, 2, 1), monomial(-0.5, 0, 2)]).unwrap();
        let s = [0.2, 0.9];
        let w = v.jet(&s);
        let expected = -(w.d2[0][0] + w.d2[1][1]).powi(2) + 2.0 * w.d1[0].powi(2);
        assert!((sos.eval(&s, &w) - expected).abs() < 1e-14);
    }
}
