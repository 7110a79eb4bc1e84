use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GridSpec;
use crate::testfn::TestFunction;
use crate::variation::{evaluate, QuadraticFunctional};

/// `Q_ab = ¼(V(u_a + u_b) − V(u_a − u_b))`, with `Q_aa = V(u_a)`.
pub fn assemble_form(f: &dyn QuadraticFunctional, basis: &[TestFunction], grid: &GridSpec) -> Result<Vec<Vec<f64>>> {
    let m = basis.len();
    let mut q = vec![vec![0.0; m]; m];
    for a in 0..m {
        q[a][a] = evaluate(f, &basis[a], grid)?;
        for b in 0..a {
            let plus = evaluate(f, &basis[a].add_scaled(1.0, &basis[b])?, grid)?;
            let minus = evaluate(f, &basis[a].add_scaled(-1.0, &basis[b])?, grid)?;
            let v = 0.25 * (plus - minus);
            q[a][b] = v;
            q[b][a] = v;
        }
    }
    Ok(q)
}

fn to_matrix(q: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let m = q.len();
    if q.iter().any(|row| row.len() != m) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    Ok(DMatrix::from_fn(m, m, |i, j| q[i][j]))
}

/// Eigenvalues in ascending order and the matching unit eigenvectors.
pub fn symmetric_eigen(q: &[Vec<f64>]) -> Result<Vec<(f64, Vec<f64>)>> {
    let eig = SymmetricEigen::new(to_matrix(q)?);
    let mut pairs: Vec<(f64, Vec<f64>)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, eig.eigenvectors.column(i).iter().copied().collect()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

pub fn eigen_range(q: &[Vec<f64>]) -> Result<(f64, f64)> {
    let e = symmetric_eigen(q)?;
    match (e.first(), e.last()) {
        (Some(lo), Some(hi)) => Ok((lo.0, hi.0)),
        _ => Err(Error::InvalidArgument("empty matrix".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Eigenvalue sign counts; `|λ| ≤ tol·max|λ|` counts as zero.
pub fn inertia(q: &[Vec<f64>], tol: f64) -> Result<Inertia> {
    let e = symmetric_eigen(q)?;
    let scale = e.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for (l, _) in e {
        if l > tol * scale {
            out.positive += 1;
        } else if l < -tol * scale {
            out.negative += 1;
        } else {
            out.zero += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_spectrum() {
        let q = vec![vec![1.0; 3]; 3];
        let e = symmetric_eigen(&q).unwrap();
        assert!(e[0].0.abs() < 1e-14 && e[1].0.abs() < 1e-14);
        assert!((e[2].0 - 3.0).abs() < 1e-14);
        assert_eq!(
            inertia(&q, 1e-12).unwrap(),
            Inertia {
                positive: 1,
                negative: 0,
                zero: 2
            }
        );
    }
}
