//! Second-order forward-mode differentiation.
//!
//! [`Jet2<N>`] carries a value, its gradient and its Hessian with respect to
//! `N` seed variables. Every map written against [`Real`] can be evaluated
//! on plain `f64` or on jets, which is how the dual-number immersion oracle
//! and the test-function derivatives are produced.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar operations needed by immersion maps and test functions.
pub trait Real:
    Copy
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    fn re(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
}

impl Real for f64 {
    #[inline]
    fn cst(x: f64) -> Self {
        x
    }
    #[inline]
    fn re(&self) -> f64 {
        *self
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    #[inline]
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
}

/// Value, gradient and Hessian with respect to `N` variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<const N: usize> {
    pub v: f64,
    pub g: [f64; N],
    pub h: [[f64; N]; N],
}

impl<const N: usize> Jet2<N> {
    pub fn constant(v: f64) -> Self {
        Self {
            v,
            g: [0.0; N],
            h: [[0.0; N]; N],
        }
    }

    /// The `i`-th coordinate function evaluated at `v`.
    pub fn var(v: f64, i: usize) -> Self {
        let mut j = Self::constant(v);
        j.g[i] = 1.0;
        j
    }

    /// Seeds all `N` coordinates at point `s`.
    pub fn seed(s: &[f64]) -> [Self; N] {
        std::array::from_fn(|i| Self::var(s[i], i))
    }

    /// Applies a scalar function given its value and first two derivatives at `self.v`.
    #[inline]
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Self::constant(f0);
        for i in 0..N {
            out.g[i] = f1 * self.g[i];
            for j in 0..N {
                out.h[i][j] = f1 * self.h[i][j] + f2 * self.g[i] * self.g[j];
            }
        }
        out
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}

impl<const N: usize> Add for Jet2<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        self.v += rhs.v;
        for i in 0..N {
            self.g[i] += rhs.g[i];
            for j in 0..N {
                self.h[i][j] += rhs.h[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Jet2<N> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const N: usize> Neg for Jet2<N> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl<const N: usize> Mul for Jet2<N> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::constant(self.v * rhs.v);
        for i in 0..N {
            out.g[i] = self.g[i] * rhs.v + self.v * rhs.g[i];
            for j in 0..N {
                out.h[i][j] = self.h[i][j] * rhs.v
                    + self.v * rhs.h[i][j]
                    + self.g[i] * rhs.g[j]
                    + rhs.g[i] * self.g[j];
            }
        }
        out
    }
}

impl<const N: usize> Div for Jet2<N> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<const N: usize> Add<f64> for Jet2<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: f64) -> Self {
        self.v += rhs;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet2<N> {
    type Output = Self;
    #[inline]
    fn mul(mut self, rhs: f64) -> Self {
        self.v *= rhs;
        for i in 0..N {
            self.g[i] *= rhs;
            for j in 0..N {
                self.h[i][j] *= rhs;
            }
        }
        self
    }
}

impl<const N: usize> Real for Jet2<N> {
    fn cst(x: f64) -> Self {
        Self::constant(x)
    }
    fn re(&self) -> f64 {
        self.v
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn sinh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(s, c, s)
    }
    fn cosh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(c, s, c)
    }
}

/// A scalar function of `n` variables that can be evaluated on any [`Real`].
pub trait ScalarMap {
    fn eval<T: Real>(&self, s: &[T]) -> T;
}

/// A vector-valued function of `n` variables that can be evaluated on any [`Real`].
pub trait VectorMap {
    fn out_dim(&self) -> usize;
    fn eval<T: Real>(&self, s: &[T], out: &mut [T]);
}

/// Value, gradient and Hessian of a scalar at one point, with the dimension
/// erased. Entries beyond `n` are zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UJet {
    pub n: usize,
    pub v: f64,
    pub d1: [f64; crate::MAX_DIM],
    pub d2: [[f64; crate::MAX_DIM]; crate::MAX_DIM],
}

impl UJet {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            v: 0.0,
            d1: [0.0; crate::MAX_DIM],
            d2: [[0.0; crate::MAX_DIM]; crate::MAX_DIM],
        }
    }

    fn from_jet<const N: usize>(j: &Jet2<N>) -> Self {
        let mut u = Self::zero(N);
        u.v = j.v;
        u.d1[..N].copy_from_slice(&j.g);
        for i in 0..N {
            u.d2[i][..N].copy_from_slice(&j.h[i]);
        }
        u
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = *self;
        out.v *= c;
        for i in 0..self.n {
            out.d1[i] *= c;
            for j in 0..self.n {
                out.d2[i][j] *= c;
            }
        }
        out
    }

    pub fn add(&self, other: &UJet) -> Self {
        let mut out = *self;
        out.v += other.v;
        for i in 0..self.n {
            out.d1[i] += other.d1[i];
            for j in 0..self.n {
                out.d2[i][j] += other.d2[i][j];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = self.v.abs();
        for i in 0..self.n {
            m = m.max(self.d1[i].abs());
            for j in 0..self.n {
                m = m.max(self.d2[i][j].abs());
            }
        }
        m
    }
}

/// Evaluates `f` with second-order jets seeded at `s` (1 ≤ len ≤ 4).
pub fn ujet<F: ScalarMap + ?Sized>(f: &F, s: &[f64]) -> UJet {
    fn go<F: ScalarMap + ?Sized, const N: usize>(f: &F, s: &[f64]) -> UJet {
        let x = Jet2::<N>::seed(s);
        UJet::from_jet(&f.eval(&x))
    }
    match s.len() {
        1 => go::<F, 1>(f, s),
        2 => go::<F, 2>(f, s),
        3 => go::<F, 3>(f, s),
        4 => go::<F, 4>(f, s),
        n => panic!("jet dimension {n} outside 1..=4"),
    }
}

/// Value, first and second partials of a vector map at `s`, as
/// `(f, df[i], d2f[i][j])` with components along the last index.
pub struct VectorJet {
    pub f: Vec<f64>,
    pub df: Vec<Vec<f64>>,
    pub d2f: Vec<Vec<Vec<f64>>>,
}

pub fn vector_jet<F: VectorMap + ?Sized>(f: &F, s: &[f64]) -> VectorJet {
    fn go<F: VectorMap + ?Sized, const N: usize>(f: &F, s: &[f64]) -> VectorJet {
        let x = Jet2::<N>::seed(s);
        let m = f.out_dim();
        let mut out = vec![Jet2::<N>::constant(0.0); m];
        f.eval(&x, &mut out);
        VectorJet {
            f: out.iter().map(|j| j.v).collect(),
            df: (0..N).map(|i| out.iter().map(|j| j.g[i]).collect()).collect(),
            d2f: (0..N)
                .map(|i| (0..N).map(|k| out.iter().map(|j| j.h[i][k]).collect()).collect())
                .collect(),
        }
    }
    match s.len() {
        1 => go::<F, 1>(f, s),
        2 => go::<F, 2>(f, s),
        3 => go::<F, 3>(f, s),
        4 => go::<F, 4>(f, s),
        n => panic!("jet dimension {n} outside 1..=4"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Poly;
    impl ScalarMap for Poly {
        // x² y + sin(x) e^y
        fn eval<T: Real>(&self, s: &[T]) -> T {
            s[0] * s[0] * s[1] + s[0].sin() * s[1].exp()
        }
    }

    #[test]
    fn gradient_and_hessian_match_hand_derivatives() {
        let (x, y) = (0.7, -0.4);
        let u = ujet(&Poly, &[x, y]);
        let (sx, cx, ey) = (x.sin(), x.cos(), y.exp());
        assert!((u.v - (x * x * y + sx * ey)).abs() < 1e-15);
        assert!((u.d1[0] - (2.0 * x * y + cx * ey)).abs() < 1e-15);
        assert!((u.d1[1] - (x * x + sx * ey)).abs() < 1e-15);
        assert!((u.d2[0][0] - (2.0 * y - sx * ey)).abs() < 1e-15);
        assert!((u.d2[0][1] - (2.0 * x + cx * ey)).abs() < 1e-15);
        assert!((u.d2[1][0] - u.d2[0][1]).abs() < 1e-15);
        assert!((u.d2[1][1] - sx * ey).abs() < 1e-15);
    }

    #[test]
    fn quotient_and_hyperbolics() {
        let x = Jet2::<1>::var(0.3, 0);
        let q = x.sinh() / x.cosh();
        let t = 0.3f64.tanh();
        assert!((q.v - t).abs() < 1e-15);
        assert!((q.g[0] - (1.0 - t * t)).abs() < 1e-14);
        assert!((q.h[0][0] - (-2.0 * t * (1.0 - t * t))).abs() < 1e-14);
    }
}
