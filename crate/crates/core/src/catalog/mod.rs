//! Every worked example as a functional addressable by a string id.
//!
//! ```text
//! torus:n=2,r=1,2,p=1
//! hyperbola:n=2,r=1,3,eps=+,+
//! plane:kind=C,n=2,p=1        plane:kind=D,n=2
//! tube:AdS3:closed-indefinite:Gprime
//! tn:kappa=1,K=0              tn:kappa=1,K=0,L=12.566,a=0.5
//! tn:circle:R=1
//! ```
//!
//! Inside a `key=value` list a bare token continues the previous key's value
//! list, so `r=1,2` sets two radii.

mod bundle;
mod charts;
mod closed;
mod tubes;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use bundle::{make_rank_one_bundle, CurveData};
pub use charts::{
    hyperbola_certificate, make_hyperbola_product, make_hyperbola_product_with, make_plane, make_plane_with,
    make_torus, make_torus_with, plane_certificate, plane_metric, HyperbolaMap, PlaneKind, PlaneMap, TorusMap,
    LINE_TRUNCATION,
};
pub use closed::{ClosedFormFunctional, Integrand};
pub use tubes::{make_geodesic_tube, MetricChoice, SpaceForm, TubeRow, TUBE_ROWS};

use crate::analyzer::{hyperbola_witness, HyperbolaDirection, Label, ScalingFamily, ScalingPlan, Strategy};
use crate::error::{Error, Result};
use crate::geometry::Sign;
use crate::immersion::LagrangianChart;
use crate::testfn::{Profile, TestFunction};
use crate::variation::{MainTheoremFunctional, QuadraticFunctional};

/// What an id resolved to.
#[derive(Clone, Debug)]
pub enum EntryKind {
    Torus { radii: Vec<f64>, p: usize },
    Hyperbola { radii: Vec<f64>, branches: Vec<Sign> },
    Plane { kind: PlaneKind, n: usize, p: usize },
    Tube { row: TubeRow, metric: MetricChoice },
    Bundle { curve: CurveData },
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub functional: Arc<dyn QuadraticFunctional>,
    /// The immersion, for flat-ambient entries.
    pub chart: Option<LagrangianChart>,
    pub expected: Option<Label>,
    pub default_strategy: Strategy,
    pub scaling: Option<ScalingPlan>,
    pub provenance: String,
    pub warning: Option<String>,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("expected", &self.expected)
            .field("default_strategy", &self.default_strategy)
            .finish()
    }
}

/// Ids of the flat charts exercised by the structural checks.
pub fn flat_chart_ids() -> Vec<&'static str> {
    vec![
        "torus:n=1,r=1,p=0",
        "torus:n=1,r=1,p=1",
        "torus:n=2,r=1,1,p=1",
        "torus:n=2,r=1,2,p=0",
        "torus:n=2,r=1,2,p=1",
        "torus:n=2,r=1,2,p=2",
        "torus:n=3,r=1,2,3,p=1",
        "torus:n=3,r=1,2,3,p=2",
        "torus:n=4,r=1,1,1,1,p=2",
        "hyperbola:n=1,r=1,eps=+",
        "hyperbola:n=1,r=2,eps=-",
        "hyperbola:n=2,r=1,3,eps=+,+",
        "hyperbola:n=2,r=1,3,eps=+,-",
        "hyperbola:n=3,r=1,1,1,eps=+,+,+",
        "hyperbola:n=4,r=1,2,1,2,eps=+,-,+,-",
        "plane:kind=C,n=2,p=0",
        "plane:kind=C,n=2,p=1",
        "plane:kind=D,n=2",
        "plane:kind=D,n=2,p=1",
    ]
}

/// Ids of all 16 geodesic-tube functionals, in table order.
pub fn tube_ids() -> Vec<String> {
    TUBE_ROWS
        .iter()
        .flat_map(|r| [r.id(MetricChoice::G), r.id(MetricChoice::GPrime)])
        .collect()
}

fn malformed(id: &str, reason: impl Into<String>) -> Error {
    Error::MalformedCatalogId {
        id: id.to_string(),
        reason: reason.into(),
    }
}

/// Strict `key=value[,value…]` list parser.
struct Params<'a> {
    id: &'a str,
    map: BTreeMap<String, Vec<String>>,
}

impl<'a> Params<'a> {
    fn parse(id: &'a str, body: &str, allowed: &[&str]) -> Result<Self> {
        let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for tok in body.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(malformed(id, "empty list element"));
            }
            match tok.split_once('=') {
                Some((k, v)) => {
                    if !allowed.contains(&k) {
                        return Err(malformed(
                            id,
                            format!("unknown key `{k}` (allowed: {})", allowed.join(", ")),
                        ));
                    }
                    if map.contains_key(k) {
                        return Err(malformed(id, format!("duplicate key `{k}`")));
                    }
                    if v.is_empty() {
                        return Err(malformed(id, format!("empty value for `{k}`")));
                    }
                    map.insert(k.to_string(), vec![v.to_string()]);
                    current = Some(k.to_string());
                }
                None => match &current {
                    Some(k) => map.get_mut(k).expect("current key").push(tok.to_string()),
                    None => return Err(malformed(id, format!("`{tok}` has no key"))),
                },
            }
        }
        Ok(Self { id, map })
    }

    fn take(&mut self, key: &str) -> Option<Vec<String>> {
        self.map.remove(key)
    }

    fn required(&mut self, key: &str) -> Result<Vec<String>> {
        self.take(key)
            .ok_or_else(|| malformed(self.id, format!("missing `{key}`")))
    }

    fn one(&self, key: &str, v: Vec<String>) -> Result<String> {
        match <[String; 1]>::try_from(v) {
            Ok([x]) => Ok(x),
            Err(_) => Err(malformed(self.id, format!("`{key}` takes a single value"))),
        }
    }

    fn float(&self, key: &str, v: Vec<String>) -> Result<f64> {
        let s = self.one(key, v)?;
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| malformed(self.id, format!("`{key}={s}` is not a number")))
    }

    fn floats(&self, key: &str, v: Vec<String>) -> Result<Vec<f64>> {
        v.iter()
            .map(|s| {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| malformed(self.id, format!("`{key}` value `{s}` is not a number")))
            })
            .collect()
    }

    fn usize(&self, key: &str, v: Vec<String>) -> Result<usize> {
        let s = self.one(key, v)?;
        s.parse::<usize>()
            .map_err(|_| malformed(self.id, format!("`{key}={s}` is not a non-negative integer")))
    }

    fn signs(&self, key: &str, v: Vec<String>) -> Result<Vec<Sign>> {
        v.iter()
            .map(|s| match s.as_str() {
                "+" | "+1" | "1" => Ok(Sign::Plus),
                "-" | "-1" => Ok(Sign::Minus),
                other => Err(malformed(self.id, format!("`{key}` value `{other}` is not a sign"))),
            })
            .collect()
    }
}

fn check_len(id: &str, key: &str, n: usize, got: usize) -> Result<()> {
    if n == got {
        Ok(())
    } else {
        Err(malformed(id, format!("`{key}` needs {n} values, got {got}")))
    }
}

/// Resolves a catalog id.
pub fn lookup(id: &str) -> Result<CatalogEntry> {
    let (family, body) = id
        .split_once(':')
        .ok_or_else(|| malformed(id, "expected `<family>:<parameters>`"))?;
    match family {
        "torus" => parse_torus(id, body),
        "hyperbola" => parse_hyperbola(id, body),
        "plane" => parse_plane(id, body),
        "tube" => parse_tube(id, body),
        "tn" => parse_bundle(id, body),
        _ => Err(Error::UnknownCatalogId(id.to_string())),
    }
}

fn parse_torus(id: &str, body: &str) -> Result<CatalogEntry> {
    let mut p = Params::parse(id, body, &["n", "r", "p"])?;
    let n = p.required("n")?;
    let n = p.usize("n", n)?;
    let r = p.required("r")?;
    let radii = p.floats("r", r)?;
    check_len(id, "r", n, radii.len())?;
    let pp = match p.take("p") {
        Some(v) => p.usize("p", v)?,
        None => 0,
    };
    torus_entry(id, &radii, pp)
}

pub fn torus_entry(id: &str, radii: &[f64], p: usize) -> Result<CatalogEntry> {
    let chart = make_torus(radii, p)?;
    let n = radii.len();
    Ok(CatalogEntry {
        id: id.to_string(),
        kind: EntryKind::Torus {
            radii: radii.to_vec(),
            p,
        },
        functional: Arc::new(MainTheoremFunctional::new(chart.clone())),
        chart: Some(chart),
        expected: (p > 0 && p < n).then_some(Label::Indefinite),
        default_strategy: Strategy::FourierSweep,
        scaling: None,
        provenance: "flat torus of circles in C^n_p".into(),
        warning: None,
    })
}

fn parse_hyperbola(id: &str, body: &str) -> Result<CatalogEntry> {
    let mut p = Params::parse(id, body, &["n", "r", "eps"])?;
    let n = p.required("n")?;
    let n = p.usize("n", n)?;
    let r = p.required("r")?;
    let radii = p.floats("r", r)?;
    check_len(id, "r", n, radii.len())?;
    let branches = match p.take("eps") {
        Some(v) => p.signs("eps", v)?,
        None => vec![Sign::Plus; n],
    };
    check_len(id, "eps", n, branches.len())?;
    hyperbola_entry(id, &radii, &branches)
}

/// Isotropic scaling times used for hyperbola products of dimension ≥ 3.
pub const HYPERBOLA_SCHEDULE: [f64; 5] = [0.1, 0.316227766016838, 1.0, 3.16227766016838, 10.0];

pub fn hyperbola_entry(id: &str, radii: &[f64], branches: &[Sign]) -> Result<CatalogEntry> {
    let chart = make_hyperbola_product(radii, branches)?;
    let n = radii.len();
    let mut functional = MainTheoremFunctional::new(chart.clone());
    let (expected, strategy, scaling) = match hyperbola_certificate(radii, branches) {
        Some(sos) => {
            functional = functional.with_certificate(sos);
            (Label::NegativeDefinite, Strategy::SosCertificate, None)
        }
        None => {
            let base = hyperbola_witness(radii, branches, HyperbolaDirection::W)?;
            (
                Label::Indefinite,
                Strategy::ScalingProbe,
                Some(ScalingPlan {
                    base,
                    family: ScalingFamily::Isotropic,
                    schedule: HYPERBOLA_SCHEDULE.to_vec(),
                }),
            )
        }
    };
    Ok(CatalogEntry {
        id: id.to_string(),
        kind: EntryKind::Hyperbola {
            radii: radii.to_vec(),
            branches: branches.to_vec(),
        },
        functional: Arc::new(functional),
        chart: Some(chart),
        expected: Some(if n >= 3 { Label::Indefinite } else { expected }),
        default_strategy: strategy,
        scaling,
        provenance: "product of hyperbolas in D^n".into(),
        warning: None,
    })
}

fn parse_plane(id: &str, body: &str) -> Result<CatalogEntry> {
    let mut p = Params::parse(id, body, &["kind", "n", "p"])?;
    let kind = p.required("kind")?;
    let kind = match p.one("kind", kind)?.as_str() {
        "C" => PlaneKind::Complex,
        "D" => PlaneKind::Para,
        other => return Err(malformed(id, format!("plane kind must be C or D, got `{other}`"))),
    };
    let n = p.required("n")?;
    let n = p.usize("n", n)?;
    let pp = match p.take("p") {
        Some(v) => p.usize("p", v)?,
        None => 0,
    };
    let chart = make_plane(kind, n, pp)?;
    let eps = chart.eps();
    let sos = plane_certificate(eps, &plane_metric(kind, n, pp));
    Ok(CatalogEntry {
        id: id.to_string(),
        kind: EntryKind::Plane { kind, n, p: pp },
        functional: Arc::new(MainTheoremFunctional::new(chart.clone()).with_certificate(sos)),
        chart: Some(chart),
        expected: Some(Label::definite(eps)),
        default_strategy: Strategy::SosCertificate,
        scaling: None,
        provenance: "totally geodesic Lagrangian plane in a flat ambient".into(),
        warning: None,
    })
}

/// Product of unit Gaussians, the base of the default scaling families.
pub fn unit_bump(n: usize) -> TestFunction {
    TestFunction::product("gauss(1)^n", 1.0, vec![Profile::gaussian(0.0, 1.0); n])
}

fn parse_tube(id: &str, body: &str) -> Result<CatalogEntry> {
    let parts: Vec<&str> = body.split(':').collect();
    let [space, row, metric] = parts[..] else {
        return Err(malformed(id, "expected `tube:<space>:<row>:<G|Gprime>`"));
    };
    let space: SpaceForm = space.parse().map_err(|e: Error| malformed(id, e.to_string()))?;
    let row = TubeRow::find(space, row).map_err(|e| malformed(id, e.to_string()))?;
    let metric: MetricChoice = metric.parse().map_err(|e: Error| malformed(id, e.to_string()))?;
    Ok(tube_entry(row, metric))
}

pub fn tube_entry(row: &TubeRow, metric: MetricChoice) -> CatalogEntry {
    let f = make_geodesic_tube(row, metric);
    let all_lines = f.domains.iter().all(|d| !d.is_circle());
    let (strategy, scaling) = if f.spectral.is_some() {
        (Strategy::SpectralCriterion, None)
    } else if f.squares.is_some() {
        (Strategy::SosCertificate, None)
    } else if all_lines {
        (
            Strategy::ScalingProbe,
            Some(ScalingPlan {
                base: unit_bump(2),
                family: ScalingFamily::Isotropic,
                schedule: ScalingPlan::default_schedule(),
            }),
        )
    } else {
        (Strategy::FourierSweep, None)
    };
    CatalogEntry {
        id: row.id(metric),
        kind: EntryKind::Tube { row: *row, metric },
        expected: f.expected_verdict,
        provenance: f.provenance.clone(),
        warning: f.warning.clone(),
        functional: Arc::new(f),
        chart: None,
        default_strategy: strategy,
        scaling,
    }
}

fn parse_bundle(id: &str, body: &str) -> Result<CatalogEntry> {
    let curve = if let Some(rest) = body.strip_prefix("circle:") {
        let mut p = Params::parse(id, rest, &["R"])?;
        let r = p.required("R")?;
        CurveData::circle_in_plane(p.float("R", r)?)?
    } else {
        let mut p = Params::parse(id, body, &["kappa", "K", "L", "a"])?;
        let kappa = p.required("kappa")?;
        let kappa = p.float("kappa", kappa)?;
        let k = p.required("K")?;
        let k = p.float("K", k)?;
        let length = match p.take("L") {
            Some(v) => Some(p.float("L", v)?),
            None => None,
        };
        let a = match p.take("a") {
            Some(v) => Some(p.float("a", v)?),
            None => None,
        };
        let mut c = CurveData::constant(kappa, k, length)?;
        if let Some(a) = a.filter(|a| *a != 0.0) {
            c = c.with_a(Arc::new(move |_| a))?;
        }
        c
    };
    bundle_entry(id, curve)
}

pub fn bundle_entry(id: &str, curve: CurveData) -> Result<CatalogEntry> {
    let f = make_rank_one_bundle(&curve)?;
    let (strategy, scaling) = if f.squares.is_some() {
        (Strategy::SosCertificate, None)
    } else if curve.closed {
        (Strategy::FourierSweep, None)
    } else {
        (
            Strategy::ScalingProbe,
            Some(ScalingPlan {
                base: unit_bump(2),
                family: ScalingFamily::Anisotropic {
                    axes: vec![0],
                    exponent: 1.5,
                },
                schedule: ScalingPlan::default_schedule(),
            }),
        )
    };
    Ok(CatalogEntry {
        id: id.to_string(),
        expected: f.expected_verdict,
        provenance: f.provenance.clone(),
        warning: f.warning.clone(),
        functional: Arc::new(f),
        kind: EntryKind::Bundle { curve },
        chart: None,
        default_strategy: strategy,
        scaling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_ids() {
        for id in [
            "torus:n=2,r=1,2,p=1",
            "hyperbola:n=2,r=1,3,eps=+,+",
            "plane:kind=C,n=2,p=1",
            "plane:kind=D,n=2",
            "tube:AdS3:closed-indefinite:Gprime",
            "tube:S3:closed:G",
            "tn:kappa=0,K=-1",
            "tn:circle:R=1",
            "tn:kappa=1,K=0,L=12.5,a=0.5",
        ] {
            let e = lookup(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(e.id, id);
        }
        for id in flat_chart_ids() {
            assert!(lookup(id).unwrap().chart.is_some(), "{id}");
        }
        assert_eq!(tube_ids().len(), 16);
        for id in tube_ids() {
            assert_eq!(lookup(&id).unwrap().id, id);
        }
    }

    #[test]
    fn rejects_malformed_ids() {
        let bad = [
            "torus:n=2,r=1,p=1",
            "torus:n=2,r=1,2,q=1",
            "torus:n=2,n=2,r=1,2",
            "torus:r=1",
            "torus:n=2,r=1,x",
            "hyperbola:n=2,r=1,1,eps=+,0",
            "plane:kind=E,n=2",
            "tube:S3:open:G",
            "tube:S3:closed",
            "tn:kappa=1",
            "torus",
            "torus:,n=1",
        ];
        for id in bad {
            assert!(
                matches!(lookup(id), Err(Error::MalformedCatalogId { .. }) | Err(Error::InvalidArgument(_))),
                "{id}"
            );
        }
        assert!(matches!(lookup("sphere:n=2"), Err(Error::UnknownCatalogId(_))));
    }

    #[test]
    fn default_strategies() {
        assert_eq!(lookup("torus:n=2,r=1,1,p=1").unwrap().default_strategy, Strategy::FourierSweep);
        assert_eq!(lookup("hyperbola:n=2,r=1,3,eps=+,+").unwrap().default_strategy, Strategy::SosCertificate);
        assert_eq!(lookup("hyperbola:n=3,r=1,1,1").unwrap().default_strategy, Strategy::ScalingProbe);
        assert_eq!(lookup("tube:S3:closed:G").unwrap().default_strategy, Strategy::SpectralCriterion);
        assert_eq!(lookup("tube:AdS3:unbounded-definite:Gprime").unwrap().default_strategy, Strategy::ScalingProbe);
        assert_eq!(lookup("tn:kappa=1,K=0").unwrap().default_strategy, Strategy::ScalingProbe);
        assert_eq!(lookup("tn:kappa=0,K=-1").unwrap().default_strategy, Strategy::SosCertificate);
    }
}
