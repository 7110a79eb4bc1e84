use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{to_csv, to_json, Format, GridOverride};
use crate::analyzer::{torus_mode_value, wirtinger_bound, ModeVector, WirtingerBranch};
use crate::catalog::{lookup, make_torus, CurveData, EntryKind};
use crate::error::{Error, Result};
use crate::testfn::TestFunction;
use crate::variation::{second_variation, MainTheoremFunctional};

/// A one-parameter family over a base catalog entry.
///
/// ```text
/// ratio=0.5:2:16   r₁/r₂ on a two-torus, r₂ fixed, mode k = (1,1)
/// k=1:6            single-axis modes cos(k s₁/r₁) on a torus
/// kappa=0:2:21     constant curvature κ of a rank-one bundle curve, K and L fixed
/// ```
#[derive(Clone, Debug, PartialEq)]
pub enum SweepSpec {
    Ratio { lo: f64, hi: f64, count: usize },
    Mode { lo: i64, hi: i64 },
    Kappa { lo: f64, hi: f64, count: usize },
}

fn bad(spec: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSweep {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

impl SweepSpec {
    pub fn parameter(&self) -> &'static str {
        match self {
            SweepSpec::Ratio { .. } => "ratio",
            SweepSpec::Mode { .. } => "k",
            SweepSpec::Kappa { .. } => "kappa",
        }
    }

    pub fn points(&self) -> Vec<f64> {
        match *self {
            SweepSpec::Ratio { lo, hi, count } | SweepSpec::Kappa { lo, hi, count } => linspace(lo, hi, count),
            SweepSpec::Mode { lo, hi } => (lo..=hi).map(|k| k as f64).collect(),
        }
    }
}

impl FromStr for SweepSpec {
    type Err = Error;
    fn from_str(spec: &str) -> Result<Self> {
        let (key, range) = spec
            .split_once('=')
            .ok_or_else(|| bad(spec, "expected `<parameter>=<range>`"))?;
        let parts: Vec<&str> = range.split(':').collect();
        let float = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(spec, format!("`{s}` is not a number")))
        };
        let floats = || -> Result<(f64, f64, usize)> {
            let [lo, hi, count] = parts[..] else {
                return Err(bad(spec, "expected `<start>:<stop>:<count>`"));
            };
            let count: usize = count
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| bad(spec, format!("`{count}` is not a positive count")))?;
            let (lo, hi) = (float(lo)?, float(hi)?);
            if lo > hi {
                return Err(bad(spec, "start exceeds stop"));
            }
            Ok((lo, hi, count))
        };
        match key {
            "ratio" => {
                let (lo, hi, count) = floats()?;
                if lo <= 0.0 {
                    return Err(bad(spec, "radius ratios must be positive"));
                }
                Ok(SweepSpec::Ratio { lo, hi, count })
            }
            "kappa" => {
                let (lo, hi, count) = floats()?;
                Ok(SweepSpec::Kappa { lo, hi, count })
            }
            "k" => {
                let [lo, hi] = parts[..] else {
                    return Err(bad(spec, "expected `k=<start>:<stop>`"));
                };
                let int = |s: &str| s.parse::<i64>().map_err(|_| bad(spec, format!("`{s}` is not an integer")));
                let (lo, hi) = (int(lo)?, int(hi)?);
                if lo < 1 || lo > hi {
                    return Err(bad(spec, "mode range must satisfy 1 ≤ start ≤ stop"));
                }
                Ok(SweepSpec::Mode { lo, hi })
            }
            other => Err(bad(spec, format!("unknown parameter `{other}` (ratio, k, kappa)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepConfig {
    pub catalog_id: String,
    pub spec: Option<SweepSpec>,
    pub grid: GridOverride,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    /// Entry evaluated at this point.
    pub catalog_id: String,
    pub parameter: &'static str,
    pub x: f64,
    pub probe_id: String,
    /// Quadrature value of the second variation, or `sup(κ²+2K)` for curves.
    pub value: Option<f64>,
    /// Closed-form mode value, or `16π²/L²` for closed curves.
    pub reference: Option<f64>,
    pub verdict: String,
}

pub fn render_rows(rows: &[SweepRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => to_csv(rows),
    }
}

fn sign_word(v: f64) -> String {
    match v.partial_cmp(&0.0) {
        Some(std::cmp::Ordering::Greater) => "positive",
        Some(std::cmp::Ordering::Less) => "negative",
        _ => "zero",
    }
    .to_string()
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn torus_point(radii: &[f64], p: usize, k: Vec<i64>, parameter: &'static str, x: f64, grid: &GridOverride) -> Result<SweepRow> {
    let chart = make_torus(radii, p)?;
    let u = TestFunction::fourier_mode(&chart.domains, &k)?;
    let reference = torus_mode_value(radii, p, &ModeVector::new(k)?)?;
    let f = MainTheoremFunctional::new(chart);
    let value = second_variation(&f, &u, &grid.resolve(radii.len())?)?;
    Ok(SweepRow {
        catalog_id: format!("torus:n={},r={},p={p}", radii.len(), fmt_list(radii)),
        parameter,
        x,
        probe_id: u.label,
        value: Some(value),
        reference: Some(reference),
        verdict: sign_word(value),
    })
}

fn curve_point(kappa: f64, k: f64, length: Option<f64>) -> Result<SweepRow> {
    let curve = CurveData::constant(kappa, k, length)?;
    let (verdict, reference) = match wirtinger_bound(&curve) {
        Ok(r) => (
            match r.branch {
                Some(WirtingerBranch::Unconditional) => "stable (κ²+2K ≤ 0)".to_string(),
                Some(WirtingerBranch::Wirtinger) => "stable (length bound)".to_string(),
                None => "inconclusive".to_string(),
            },
            r.threshold,
        ),
        Err(_) => ("inconclusive".to_string(), None),
    };
    Ok(SweepRow {
        catalog_id: curve.label.clone(),
        parameter: "kappa",
        x: kappa,
        probe_id: "sup(κ²+2K)".into(),
        value: Some(curve.sup_potential()),
        reference,
        verdict,
    })
}

pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let spec = cfg
        .spec
        .clone()
        .ok_or_else(|| bad("", "a sweep needs `--sweep <parameter>=<range>`"))?;
    let entry = lookup(&cfg.catalog_id)?;
    let xs = spec.points();
    let wrong_base = |want: &str| bad(spec.parameter(), format!("needs a {want} catalog id, got `{}`", entry.id));
    match (&spec, &entry.kind) {
        (SweepSpec::Ratio { .. }, EntryKind::Torus { radii, p }) if radii.len() == 2 => {
            let (r2, p) = (radii[1], *p);
            xs.par_iter()
                .map(|&x| torus_point(&[x * r2, r2], p, vec![1, 1], "ratio", x, &cfg.grid))
                .collect()
        }
        (SweepSpec::Ratio { .. }, _) => Err(wrong_base("two-dimensional torus")),
        (SweepSpec::Mode { .. }, EntryKind::Torus { radii, p }) => {
            let n = radii.len();
            xs.par_iter()
                .map(|&x| {
                    let mut k = vec![0; n];
                    k[0] = x as i64;
                    torus_point(radii, *p, k, "k", x, &cfg.grid)
                })
                .collect()
        }
        (SweepSpec::Mode { .. }, _) => Err(wrong_base("torus")),
        (SweepSpec::Kappa { .. }, EntryKind::Bundle { curve }) => {
            if !curve.a_is_zero {
                return Err(wrong_base("rank-one bundle (a ≡ 0)"));
            }
            let k = (curve.k_along)(0.0);
            xs.par_iter().map(|&x| curve_point(x, k, curve.length)).collect()
        }
        (SweepSpec::Kappa { .. }, _) => Err(wrong_base("rank-one bundle")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!(
            "ratio=0.5:2:4".parse::<SweepSpec>().unwrap(),
            SweepSpec::Ratio { lo: 0.5, hi: 2.0, count: 4 }
        );
        assert_eq!("k=1:6".parse::<SweepSpec>().unwrap(), SweepSpec::Mode { lo: 1, hi: 6 });
        assert_eq!("kappa=0:2:3".parse::<SweepSpec>().unwrap().points(), vec![0.0, 1.0, 2.0]);
        for s in ["ratio=0:1:3", "k=0:3", "k=1:2:3", "kappa=1:0:3", "kappa=0:1:0", "radius=1:2:3", "k"] {
            assert!(matches!(s.parse::<SweepSpec>(), Err(Error::MalformedSweep { .. })), "{s}");
        }
    }
}
