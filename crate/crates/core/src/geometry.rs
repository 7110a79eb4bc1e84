//! Flat ambient spaces `C^n_p` and `D^n`.
//!
//! Both kinds share one real layout: a point or tangent vector is a slice of
//! length `2n` holding the pairs `(x_j, y_j)` interleaved. With `ε` the
//! para flag (`+1` complex, `-1` para-complex) and `σ_j` the per-axis signs,
//!
//! ```text
//! g(X, Y) = Σ_j σ_j (X_xj Y_xj + ε X_yj Y_yj)
//! J(x, y) = (-ε y, x)            per pair, so J² = -ε Id
//! ω(X, Y) = ε g(JX, Y) = Σ_j σ_j (X_xj Y_yj - X_yj Y_xj)
//! ```
//!
//! For `ε = +1` this is the real part of `Σ σ_j dz_j dz̄_j`; for `ε = -1` with
//! all `σ_j = +1` it is the neutral metric `Σ dx_j² - dy_j²` of `D^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Accepts exactly `+1` or `-1`.
    pub fn from_int(v: i32) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidArgument(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Per-axis metric signs together with the para flag `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub signs: Vec<Sign>,
    pub para_flag: Sign,
}

impl Signature {
    pub fn new(signs: Vec<Sign>, para_flag: Sign) -> Self {
        Self { signs, para_flag }
    }

    pub fn from_ints(signs: &[i32], para_flag: i32) -> Result<Self> {
        let signs = signs.iter().map(|&s| Sign::from_int(s)).collect::<Result<_>>()?;
        Ok(Self {
            signs,
            para_flag: Sign::from_int(para_flag)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn eps(&self) -> f64 {
        self.para_flag.value()
    }
}

/// `Σ_j signs[j]·x_j·y_j`.
pub fn inner(sig: &Signature, x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(sig.dim(), x.len())?;
    check_dim(sig.dim(), y.len())?;
    Ok(sig
        .signs
        .iter()
        .zip(x.iter().zip(y))
        .map(|(s, (a, b))| s.value() * a * b)
        .sum())
}

/// A para-complex (split-complex) number `x + τy` with `τ² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParaComplex {
    pub x: f64,
    pub y: f64,
}

impl ParaComplex {
    pub const ONE: ParaComplex = ParaComplex { x: 1.0, y: 0.0 };
    pub const TAU: ParaComplex = ParaComplex { x: 0.0, y: 1.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn conj(self) -> Self {
        Self::new(self.x, -self.y)
    }

    /// `z·z̄ = x² - y²`, the indefinite modulus.
    pub fn norm_sq(self) -> f64 {
        self.x * self.x - self.y * self.y
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.x, k * self.y)
    }
}

impl Add for ParaComplex {
    type Output = ParaComplex;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for ParaComplex {
    type Output = ParaComplex;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul for ParaComplex {
    type Output = ParaComplex;
    fn mul(self, rhs: Self) -> Self {
        pc_mul(self, rhs)
    }
}

pub fn pc_mul(z: ParaComplex, w: ParaComplex) -> ParaComplex {
    ParaComplex::new(z.x * w.x + z.y * w.y, z.x * w.y + z.y * w.x)
}

/// The hyperbolic exponential on the branch selected by `eps`:
/// `cosh t + τ sinh t` for `+1`, `sinh t + τ cosh t` for `-1`.
/// Its derivative is `τ·pc_exp_tau(t, eps)` and `|pc_exp_tau(t, eps)|² = eps`.
pub fn pc_exp_tau(t: f64, eps: Sign) -> ParaComplex {
    match eps {
        Sign::Plus => ParaComplex::new(t.cosh(), t.sinh()),
        Sign::Minus => ParaComplex::new(t.sinh(), t.cosh()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientKind {
    /// `C^n` with Hermitian form `-Σ_{j≤p} dz_j dz̄_j + Σ_{j>p} dz_j dz̄_j`.
    PseudoKahler { n: usize, p: usize },
    /// `D^n` with its canonical para-Kähler structure.
    ParaKahler { n: usize },
}

/// A flat pseudo- or para-Kähler ambient with its derived signature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientFlat {
    pub kind: AmbientKind,
    pub signature: Signature,
}

impl AmbientFlat {
    pub fn pseudo_kahler(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p > n {
            return Err(Error::InvalidArgument(format!(
                "pseudo-Kähler C^n_p needs n ≥ 1 and 0 ≤ p ≤ n (n={n}, p={p})"
            )));
        }
        let signs = (0..n)
            .map(|j| if j < p { Sign::Minus } else { Sign::Plus })
            .collect();
        Ok(Self {
            kind: AmbientKind::PseudoKahler { n, p },
            signature: Signature::new(signs, Sign::Plus),
        })
    }

    pub fn para_kahler(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("para-Kähler D^n needs n ≥ 1".into()));
        }
        Ok(Self {
            kind: AmbientKind::ParaKahler { n },
            signature: Signature::new(vec![Sign::Plus; n], Sign::Minus),
        })
    }

    /// Complex dimension `n`; real vectors have length `2n`.
    pub fn n(&self) -> usize {
        self.signature.dim()
    }

    pub fn eps(&self) -> f64 {
        self.signature.eps()
    }

    pub fn para_flag(&self) -> Sign {
        self.signature.para_flag
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        check_dim(2 * self.n(), v.len())
    }

    /// Ambient metric on real `2n`-vectors. Unchecked; callers guarantee lengths.
    #[inline]
    pub(crate) fn metric_raw(&self, x: &[f64], y: &[f64]) -> f64 {
        let eps = self.eps();
        let mut acc = 0.0;
        for (j, s) in self.signature.signs.iter().enumerate() {
            acc += s.value() * (x[2 * j] * y[2 * j] + eps * x[2 * j + 1] * y[2 * j + 1]);
        }
        acc
    }

    #[inline]
    pub(crate) fn apply_j_raw(&self, x: &[f64], out: &mut [f64]) {
        let eps = self.eps();
        for j in 0..self.n() {
            let (a, b) = (x[2 * j], x[2 * j + 1]);
            out[2 * j] = -eps * b;
            out[2 * j + 1] = a;
        }
    }

    pub fn metric(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.metric_raw(x, y))
    }

    /// Multiplication by `i` (pseudo-Kähler) or `τ` (para-Kähler) on each pair.
    pub fn apply_j(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut out = vec![0.0; x.len()];
        self.apply_j_raw(x, &mut out);
        Ok(out)
    }
}

/// `ω(X, Y) = ε·g(JX, Y)`.
pub fn symplectic_form(amb: &AmbientFlat, x: &[f64], y: &[f64]) -> Result<f64> {
    let jx = amb.apply_j(x)?;
    Ok(amb.eps() * amb.metric(&jx, y)?)
}
