//! Test functions `u` with exact first and second partials.
//!
//! A [`TestFunction`] is a finite sum of terms, each either a product of
//! one-dimensional profiles, an anisotropic Gaussian or a plane wave. Every
//! term is written against [`Real`] so derivatives come from jets.

use std::f64::consts::TAU;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::immersion::AxisDomain;
use crate::jet::{ujet, Real, ScalarMap, UJet};
use crate::linalg::SquareMat;

/// Half-width of a bump's nominal support, in units of its width.
pub const SUPPORT_WIDTHS: f64 = 8.0;

/// A one-dimensional factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Const,
    Cos {
        freq: f64,
        phase: f64,
    },
    /// `Σ coeffs[k] x^k`; no compact support, for pointwise checks only.
    Poly {
        coeffs: Vec<f64>,
    },
    /// `P(ξ)·exp(-ξ²/2)·cos(freq·x + phase)` with `ξ = (x - center)/width`
    /// and `P(ξ) = Σ coeffs[k] ξ^k` (`P ≡ 1` when `coeffs` is empty).
    Bump {
        center: f64,
        width: f64,
        coeffs: Vec<f64>,
        freq: f64,
        phase: f64,
    },
}

impl Profile {
    pub fn cos(freq: f64) -> Self {
        Profile::Cos { freq, phase: 0.0 }
    }

    pub fn gaussian(center: f64, width: f64) -> Self {
        Profile::Bump {
            center,
            width,
            coeffs: Vec::new(),
            freq: 0.0,
            phase: 0.0,
        }
    }

    pub fn modulated(center: f64, width: f64, freq: f64) -> Self {
        Profile::Bump {
            center,
            width,
            coeffs: Vec::new(),
            freq,
            phase: 0.0,
        }
    }

    fn eval<T: Real>(&self, x: T) -> T {
        match self {
            Profile::Const => T::cst(1.0),
            Profile::Cos { freq, phase } => (x * *freq + *phase).cos(),
            Profile::Poly { coeffs } => {
                let mut p = T::cst(0.0);
                for &c in coeffs.iter().rev() {
                    p = p * x + c;
                }
                p
            }
            Profile::Bump {
                center,
                width,
                coeffs,
                freq,
                phase,
            } => {
                let xi = (x + (-center)) * (1.0 / width);
                let mut p = if coeffs.is_empty() {
                    T::cst(1.0)
                } else {
                    T::cst(0.0)
                };
                for &c in coeffs.iter().rev() {
                    p = p * xi + c;
                }
                let g = (xi * xi * -0.5).exp();
                let mut out = p * g;
                if *freq != 0.0 || *phase != 0.0 {
                    out = out * (x * *freq + *phase).cos();
                }
                out
            }
        }
    }

    fn extent(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Bump { center, width, .. } => Some((
                center - SUPPORT_WIDTHS * width,
                center + SUPPORT_WIDTHS * width,
            )),
            _ => None,
        }
    }

    fn scaled(&self, lambda: f64) -> Profile {
        match self {
            Profile::Const => Profile::Const,
            Profile::Cos { freq, phase } => Profile::Cos {
                freq: freq * lambda,
                phase: *phase,
            },
            Profile::Poly { coeffs } => Profile::Poly {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * lambda.powi(k as i32))
                    .collect(),
            },
            Profile::Bump {
                center,
                width,
                coeffs,
                freq,
                phase,
            } => Profile::Bump {
                center: center / lambda,
                width: width / lambda,
                coeffs: coeffs.clone(),
                freq: freq * lambda,
                phase: *phase,
            },
        }
    }

    fn is_periodic(&self, circumference: f64) -> bool {
        match self {
            Profile::Const => true,
            Profile::Cos { freq, .. } => is_integer(freq * circumference / TAU),
            Profile::Poly { coeffs } => coeffs.iter().skip(1).all(|&c| c == 0.0),
            Profile::Bump { .. } => false,
        }
    }
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-9
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    Product {
        coef: f64,
        factors: Vec<Profile>,
    },
    /// `coef·exp(-½ (s-c)ᵀ P (s-c))`.
    Gaussian {
        coef: f64,
        center: Vec<f64>,
        precision: Vec<Vec<f64>>,
    },
    /// `coef·cos(freq·s + phase)`.
    PlaneWave {
        coef: f64,
        freq: Vec<f64>,
        phase: f64,
    },
}

impl Term {
    fn eval<T: Real>(&self, s: &[T]) -> T {
        match self {
            Term::Product { coef, factors } => {
                let mut acc = T::cst(*coef);
                for (p, &x) in factors.iter().zip(s) {
                    if !matches!(p, Profile::Const) {
                        acc = acc * p.eval(x);
                    }
                }
                acc
            }
            Term::Gaussian {
                coef,
                center,
                precision,
            } => {
                let n = center.len();
                let mut q = T::cst(0.0);
                for i in 0..n {
                    let di = s[i] + (-center[i]);
                    for j in 0..n {
                        let dj = s[j] + (-center[j]);
                        q = q + di * dj * precision[i][j];
                    }
                }
                (q * -0.5).exp() * *coef
            }
            Term::PlaneWave { coef, freq, phase } => {
                let mut arg = T::cst(*phase);
                for (&k, &x) in freq.iter().zip(s) {
                    if k != 0.0 {
                        arg = arg + x * k;
                    }
                }
                arg.cos() * *coef
            }
        }
    }

    fn extent(&self, axis: usize) -> Result<Option<(f64, f64)>> {
        Ok(match self {
            Term::Product { factors, .. } => factors[axis].extent(),
            Term::Gaussian {
                center, precision, ..
            } => {
                let p = SquareMat::from_rows(precision)?;
                let (_, inv) = p.det_inverse();
                let inv = inv.ok_or_else(|| {
                    Error::InvalidArgument("Gaussian precision matrix is singular".into())
                })?;
                let var = inv.get(axis, axis);
                if var <= 0.0 {
                    return Err(Error::InvalidArgument(
                        "Gaussian precision matrix is not positive definite".into(),
                    ));
                }
                let half = SUPPORT_WIDTHS * var.sqrt();
                Some((center[axis] - half, center[axis] + half))
            }
            Term::PlaneWave { .. } => None,
        })
    }

    fn is_periodic(&self, axis: usize, circumference: f64) -> bool {
        match self {
            Term::Product { factors, .. } => factors[axis].is_periodic(circumference),
            Term::Gaussian { .. } => false,
            Term::PlaneWave { freq, .. } => is_integer(freq[axis] * circumference / TAU),
        }
    }

    fn scaled(&self, amplitude: f64, lambda: &[f64]) -> Term {
        match self {
            Term::Product { coef, factors } => Term::Product {
                coef: coef * amplitude,
                factors: factors.iter().zip(lambda).map(|(p, &l)| p.scaled(l)).collect(),
            },
            Term::Gaussian {
                coef,
                center,
                precision,
            } => Term::Gaussian {
                coef: coef * amplitude,
                center: center.iter().zip(lambda).map(|(c, l)| c / l).collect(),
                precision: precision
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, p)| p * lambda[i] * lambda[j])
                            .collect()
                    })
                    .collect(),
            },
            Term::PlaneWave { coef, freq, phase } => Term::PlaneWave {
                coef: coef * amplitude,
                freq: freq.iter().zip(lambda).map(|(k, l)| k * l).collect(),
                phase: *phase,
            },
        }
    }

    fn scale_coef(&self, c: f64) -> Term {
        let mut t = self.clone();
        match &mut t {
            Term::Product { coef, .. } | Term::Gaussian { coef, .. } | Term::PlaneWave { coef, .. } => {
                *coef *= c
            }
        }
        t
    }
}

/// A smooth real function on the chart, identified by `label` in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub label: String,
    pub dim: usize,
    pub terms: Vec<Term>,
}

impl ScalarMap for TestFunction {
    fn eval<T: Real>(&self, s: &[T]) -> T {
        let mut acc = T::cst(0.0);
        for t in &self.terms {
            acc = acc + t.eval(s);
        }
        acc
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl TestFunction {
    pub fn new(label: impl Into<String>, dim: usize, terms: Vec<Term>) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "test function dimension must be in 1..={}, got {dim}",
                crate::MAX_DIM
            )));
        }
        for t in &terms {
            match t {
                Term::Product { factors, .. } => check_dim(dim, factors.len())?,
                Term::Gaussian {
                    center, precision, ..
                } => {
                    check_dim(dim, center.len())?;
                    check_dim(dim, precision.len())?;
                }
                Term::PlaneWave { freq, .. } => check_dim(dim, freq.len())?,
            }
        }
        Ok(Self {
            label: label.into(),
            dim,
            terms,
        })
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self {
            label: format!("const({c})"),
            dim,
            terms: vec![Term::Product {
                coef: c,
                factors: vec![Profile::Const; dim],
            }],
        }
    }

    pub fn product(label: impl Into<String>, coef: f64, factors: Vec<Profile>) -> Self {
        Self {
            label: label.into(),
            dim: factors.len(),
            terms: vec![Term::Product { coef, factors }],
        }
    }

    pub fn plane_wave(label: impl Into<String>, coef: f64, freq: Vec<f64>, phase: f64) -> Self {
        Self {
            label: label.into(),
            dim: freq.len(),
            terms: vec![Term::PlaneWave { coef, freq, phase }],
        }
    }

    pub fn gaussian(
        label: impl Into<String>,
        coef: f64,
        center: Vec<f64>,
        precision: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = center.len();
        Self::new(
            label,
            n,
            vec![Term::Gaussian {
                coef,
                center,
                precision,
            }],
        )
    }

    /// The Fourier mode `cos(2π Σ k_j s_j / C_j)` on circle axes (line axes
    /// must carry `k_j = 0` and are rejected later by the support check).
    pub fn fourier_mode(domains: &[AxisDomain], k: &[i64]) -> Result<Self> {
        check_dim(domains.len(), k.len())?;
        let freq = domains
            .iter()
            .zip(k)
            .map(|(d, &kj)| match d {
                AxisDomain::Circle { circumference } => Ok(TAU * kj as f64 / circumference),
                AxisDomain::Line { .. } if kj == 0 => Ok(0.0),
                AxisDomain::Line { .. } => Err(Error::InvalidArgument(
                    "Fourier modes need circle axes".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        Ok(Self::plane_wave(format!("fourier:k={}", ks.join(",")), 1.0, freq, 0.0))
    }

    pub fn jet(&self, s: &[f64]) -> UJet {
        ujet(self, s)
    }

    pub fn value(&self, s: &[f64]) -> f64 {
        self.eval(s)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `amplitude · u(λ ⊙ s)`.
    pub fn scaled(&self, amplitude: f64, lambda: &[f64]) -> Result<Self> {
        check_dim(self.dim, lambda.len())?;
        if lambda.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::InvalidArgument("scale factors must be positive".into()));
        }
        Ok(Self {
            label: self.label.clone(),
            dim: self.dim,
            terms: self.terms.iter().map(|t| t.scaled(amplitude, lambda)).collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            label: format!("{c}*({})", self.label),
            dim: self.dim,
            terms: self.terms.iter().map(|t| t.scale_coef(c)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: f64, other: &TestFunction) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| t.scale_coef(c)));
        Ok(Self {
            label: format!("({})+{c}*({})", self.label, other.label),
            dim: self.dim,
            terms,
        })
    }

    /// Integration box per axis: `None` on circles, the union of the terms'
    /// nominal supports on lines. Fails when a line axis carries a term
    /// without compact support, a circle axis a non-periodic term, or the
    /// support leaves the line truncation.
    pub fn support_boxes(&self, domains: &[AxisDomain]) -> Result<Vec<Option<(f64, f64)>>> {
        check_dim(self.dim, domains.len())?;
        let mut boxes = Vec::with_capacity(self.dim);
        for (axis, d) in domains.iter().enumerate() {
            match *d {
                AxisDomain::Circle { circumference } => {
                    if let Some(t) = self.terms.iter().find(|t| !t.is_periodic(axis, circumference)) {
                        return Err(Error::Support {
                            axis,
                            detail: format!(
                                "`{}` is not periodic with period {circumference} ({t:?})",
                                self.label
                            ),
                        });
                    }
                    boxes.push(None);
                }
                AxisDomain::Line { truncation } => {
                    let mut lo = f64::INFINITY;
                    let mut hi = f64::NEG_INFINITY;
                    for t in &self.terms {
                        match t.extent(axis)? {
                            Some((a, b)) => {
                                lo = lo.min(a);
                                hi = hi.max(b);
                            }
                            None => {
                                return Err(Error::Support {
                                    axis,
                                    detail: format!(
                                        "`{}` has no compact support along a line axis",
                                        self.label
                                    ),
                                })
                            }
                        }
                    }
                    if lo < -truncation || hi > truncation {
                        return Err(Error::Support {
                            axis,
                            detail: format!(
                                "support [{lo:.4}, {hi:.4}] of `{}` exceeds line box ±{truncation}",
                                self.label
                            ),
                        });
                    }
                    boxes.push(Some((lo, hi)));
                }
            }
        }
        Ok(boxes)
    }
}

/// Random test functions for property checks.
pub mod random {
    use super::*;

    /// A random trigonometric polynomial of degree ≤ `max_k` on circle axes.
    pub fn trig_polynomial<R: Rng>(rng: &mut R, domains: &[AxisDomain], max_k: i64, terms: usize) -> Result<TestFunction> {
        let n = domains.len();
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let k: Vec<i64> = (0..n).map(|_| rng.random_range(-max_k..=max_k)).collect();
            let mode = TestFunction::fourier_mode(domains, &k)?;
            let Term::PlaneWave { freq, .. } = &mode.terms[0] else {
                unreachable!()
            };
            out.push(Term::PlaneWave {
                coef: rng.random_range(-1.0..1.0),
                freq: freq.clone(),
                phase: rng.random_range(0.0..TAU),
            });
        }
        TestFunction::new("random-trig", n, out)
    }

    /// A random sum of polynomial-times-Gaussian products on line axes,
    /// optionally times Fourier modes on circle axes.
    pub fn bump_sum<R: Rng>(rng: &mut R, domains: &[AxisDomain], terms: usize) -> Result<TestFunction> {
        let n = domains.len();
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let factors = domains
                .iter()
                .map(|d| match *d {
                    AxisDomain::Circle { circumference } => {
                        let k = rng.random_range(0..=3) as f64;
                        Profile::Cos {
                            freq: TAU * k / circumference,
                            phase: rng.random_range(0.0..TAU),
                        }
                    }
                    AxisDomain::Line { .. } => Profile::Bump {
                        center: rng.random_range(-1.0..1.0),
                        width: rng.random_range(0.6..1.5),
                        coeffs: (0..3).map(|_| rng.random_range(-1.0..1.0)).collect(),
                        freq: rng.random_range(0.0..1.5),
                        phase: rng.random_range(0.0..TAU),
                    },
                })
                .collect();
            out.push(Term::Product {
                coef: rng.random_range(-1.0..1.0),
                factors,
            });
        }
        TestFunction::new("random-bumps", n, out)
    }

    /// Picks [`trig_polynomial`] when every axis is a circle, [`bump_sum`] otherwise.
    pub fn any<R: Rng>(rng: &mut R, domains: &[AxisDomain]) -> Result<TestFunction> {
        if domains.iter().all(|d| d.is_circle()) {
            trig_polynomial(rng, domains, 3, 4)
        } else {
            bump_sum(rng, domains, 3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(u: &TestFunction, s: &[f64]) {
        let j = u.jet(s);
        let h = 1e-5;
        for i in 0..s.len() {
            let mut p = s.to_vec();
            p[i] += h;
            let up = u.jet(&p);
            p[i] -= 2.0 * h;
            let um = u.jet(&p);
            let d = (up.v - um.v) / (2.0 * h);
            assert!((d - j.d1[i]).abs() < 1e-7, "d1[{i}] {d} vs {}", j.d1[i]);
            for k in 0..s.len() {
                let d2 = (up.d1[k] - um.d1[k]) / (2.0 * h);
                assert!((d2 - j.d2[i][k]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let u = TestFunction::new(
            "mix",
            2,
            vec![
                Term::Product {
                    coef: 0.7,
                    factors: vec![
                        Profile::Bump {
                            center: 0.2,
                            width: 0.9,
                            coeffs: vec![1.0, -0.5, 0.3],
                            freq: 1.1,
                            phase: 0.4,
                        },
                        Profile::cos(2.0),
                    ],
                },
                Term::Gaussian {
                    coef: -1.2,
                    center: vec![0.1, -0.3],
                    precision: vec![vec![2.0, 0.5], vec![0.5, 1.0]],
                },
                Term::PlaneWave {
                    coef: 0.3,
                    freq: vec![1.0, -2.0],
                    phase: 0.1,
                },
            ],
        )
        .unwrap();
        fd_check(&u, &[0.3, -0.2]);
        fd_check(&u, &[-1.1, 0.8]);
    }

    #[test]
    fn scaling_composes_with_evaluation() {
        let u = TestFunction::gaussian("g", 1.0, vec![0.5, -0.2], vec![vec![1.0, 0.3], vec![0.3, 2.0]]).unwrap();
        let v = u.scaled(2.0, &[3.0, 0.5]).unwrap();
        let s = [0.1, 0.7];
        assert!((v.value(&s) - 2.0 * u.value(&[0.3, 0.35])).abs() < 1e-14);
        let p = TestFunction::product("p", 1.0, vec![Profile::modulated(0.4, 1.3, 2.0), Profile::cos(1.0)]);
        let q = p.scaled(0.5, &[2.0, 3.0]).unwrap();
        assert!((q.value(&s) - 0.5 * p.value(&[0.2, 2.1])).abs() < 1e-14);
    }

    #[test]
    fn support_boxes_and_violations() {
        let line = AxisDomain::line(20.0).unwrap();
        let circle = AxisDomain::circle(TAU).unwrap();
        let u = TestFunction::product("u", 1.0, vec![Profile::gaussian(1.0, 0.5), Profile::cos(2.0)]);
        let b = u.support_boxes(&[line, circle]).unwrap();
        assert_eq!(b[0], Some((-3.0, 5.0)));
        assert_eq!(b[1], None);

        let wide = u.scaled(1.0, &[0.1, 1.0]).unwrap();
        assert!(matches!(wide.support_boxes(&[line, circle]), Err(Error::Support { axis: 0, .. })));

        let aperiodic = TestFunction::product("v", 1.0, vec![Profile::gaussian(0.0, 1.0), Profile::cos(0.5)]);
        assert!(matches!(aperiodic.support_boxes(&[line, circle]), Err(Error::Support { axis: 1, .. })));

        let wave = TestFunction::plane_wave("w", 1.0, vec![1.0, 1.0], 0.0);
        assert!(wave.support_boxes(&[line, circle]).is_err());
        assert!(wave.support_boxes(&[circle, circle]).is_ok());
    }

    #[test]
    fn fourier_mode_frequencies() {
        let d = [AxisDomain::circle(TAU).unwrap(), AxisDomain::circle(2.0 * TAU).unwrap()];
        let u = TestFunction::fourier_mode(&d, &[1, 2]).unwrap();
        assert_eq!(u.label, "fourier:k=1,2");
        let s = [0.3, 0.4];
        assert!((u.value(&s) - (0.3f64 + 0.4).cos()).abs() < 1e-15);
    }
}
