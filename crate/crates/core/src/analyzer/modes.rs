use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Integer frequency vector of a torus Fourier mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeVector {
    pub k: Vec<i64>,
}

impl ModeVector {
    pub fn new(k: Vec<i64>) -> Result<Self> {
        if k.iter().all(|&x| x == 0) {
            return Err(Error::InvalidArgument("zero mode vector".into()));
        }
        Ok(Self { k })
    }

    pub fn l1(&self) -> i64 {
        self.k.iter().map(|x| x.abs()).sum()
    }
}

/// Per-axis frequency bound of the Fourier witness library.
pub fn mode_bound(n: usize) -> i64 {
    match n {
        0..=2 => 4,
        3 => 2,
        _ => 1,
    }
}

/// Nonzero modes with `|k_j| ≤ bound`, one of each `±k` pair (first nonzero
/// entry positive), ordered by `|k|₁` and then lexicographically descending.
pub fn fourier_modes(n: usize, bound: i64) -> Vec<ModeVector> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rem = idx;
        let mut k = vec![0i64; n];
        for j in (0..n).rev() {
            k[j] = (rem % side) as i64 - bound;
            rem /= side;
        }
        match k.iter().find(|&&x| x != 0) {
            Some(&first) if first > 0 => out.push(ModeVector { k }),
            _ => {}
        }
    }
    out.sort_by(|a, b| a.l1().cmp(&b.l1()).then_with(|| b.k.cmp(&a.k)));
    out
}

/// Second variation of the torus `∏ S¹(r_j) ⊂ C^n_p` on `cos(Σ k_j s_j / r_j)`:
/// `(Vol/2)·[(Σ ε_j m_j²)² + (Σ ε_j m_j / r_j)² − 2 Σ m_j² / r_j²]`
/// with `m_j = k_j / r_j`, `ε_j = −1` on the first `p` axes.
pub fn torus_mode_value(radii: &[f64], p: usize, k: &ModeVector) -> Result<f64> {
    let n = radii.len();
    check_dim(n, k.k.len())?;
    if p > n {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds n = {n}")));
    }
    let vol: f64 = radii.iter().map(|r| 2.0 * PI * r).product();
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for (j, (&r, &kj)) in radii.iter().zip(&k.k).enumerate() {
        let e = if j < p { -1.0 } else { 1.0 };
        let m = kj as f64 / r;
        a += e * m * m;
        b += e * m / r;
        c += m * m / (r * r);
    }
    Ok(0.5 * vol * (a * a + b * b - 2.0 * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_order() {
        let m = fourier_modes(2, 1);
        let ks: Vec<Vec<i64>> = m.iter().map(|m| m.k.clone()).collect();
        assert_eq!(ks, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]);
        assert_eq!(fourier_modes(3, 2).len(), (125 - 1) / 2);
    }

    #[test]
    fn zero_mode_rejected() {
        assert!(ModeVector::new(vec![0, 0]).is_err());
    }

    #[test]
    fn single_axis_value() {
        for k in 1..5 {
            let v = torus_mode_value(&[1.0, 2.0], 1, &ModeVector::new(vec![k, 0]).unwrap()).unwrap();
            let kf = k as f64;
            let want = 4.0 * PI * PI * (kf.powi(4) - kf * kf);
            assert!((v - want).abs() < 1e-9 * want.abs().max(1.0));
        }
    }
}
