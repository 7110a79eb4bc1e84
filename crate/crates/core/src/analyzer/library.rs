//! Fixed, ordered probe families used by the witness search.

use std::f64::consts::TAU;

use super::modes::{fourier_modes, mode_bound};
use crate::error::Result;
use crate::immersion::AxisDomain;
use crate::testfn::{Profile, TestFunction};

/// Per-axis profiles: constants and cosines on circles, Gaussian bumps and
/// modulated bumps on lines.
pub fn profile_library(domain: &AxisDomain, rich: bool) -> Vec<(String, Profile)> {
    match *domain {
        AxisDomain::Circle { circumference } => {
            let mut v = vec![("1".to_string(), Profile::Const)];
            for k in 1..=4 {
                v.push((format!("cos{k}"), Profile::cos(TAU * k as f64 / circumference)));
            }
            v
        }
        AxisDomain::Line { .. } => {
            let mut v = vec![
                ("g1".to_string(), Profile::gaussian(0.0, 1.0)),
                ("g3".to_string(), Profile::gaussian(0.0, 3.0)),
            ];
            if rich {
                v.push(("g0.5".to_string(), Profile::gaussian(0.0, 0.5)));
                v.push((
                    "xi*g1".to_string(),
                    Profile::Bump {
                        center: 0.0,
                        width: 1.0,
                        coeffs: vec![0.0, 1.0],
                        freq: 0.0,
                        phase: 0.0,
                    },
                ));
                v.push(("g1*cos1".to_string(), Profile::modulated(0.0, 1.0, 1.0)));
                v.push(("g1*cos2".to_string(), Profile::modulated(0.0, 1.0, 2.0)));
            }
            v
        }
    }
}

/// The ordered probe list for a product domain: Fourier modes when every
/// axis is a circle, otherwise tensor products of [`profile_library`]
/// entries (axis 0 varying slowest).
pub fn witness_library(domains: &[AxisDomain]) -> Result<Vec<TestFunction>> {
    let n = domains.len();
    if domains.iter().all(AxisDomain::is_circle) {
        return fourier_modes(n, mode_bound(n))
            .iter()
            .map(|m| TestFunction::fourier_mode(domains, &m.k))
            .collect();
    }
    let per_axis: Vec<Vec<(String, Profile)>> = domains.iter().map(|d| profile_library(d, n <= 2)).collect();
    let total: usize = per_axis.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut pick = vec![0usize; n];
        for j in (0..n).rev() {
            pick[j] = rem % per_axis[j].len();
            rem /= per_axis[j].len();
        }
        let label = pick
            .iter()
            .enumerate()
            .map(|(j, &i)| per_axis[j][i].0.as_str())
            .collect::<Vec<_>>()
            .join("⊗");
        let factors = pick.iter().enumerate().map(|(j, &i)| per_axis[j][i].1.clone()).collect();
        out.push(TestFunction::product(label, 1.0, factors));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_library_is_admissible() {
        let d = [AxisDomain::circle(TAU).unwrap(), AxisDomain::line(500.0).unwrap()];
        let lib = witness_library(&d).unwrap();
        assert_eq!(lib.len(), 5 * 6);
        assert_eq!(lib[0].label, "1⊗g1");
        for u in &lib {
            u.support_boxes(&d).unwrap();
        }
    }

    #[test]
    fn torus_library_starts_with_axis_modes() {
        let d = [AxisDomain::circle(TAU).unwrap(); 2];
        let lib = witness_library(&d).unwrap();
        assert_eq!(lib[0].label, "fourier:k=1,0");
        assert_eq!(lib[3].label, "fourier:k=1,1");
    }
}
