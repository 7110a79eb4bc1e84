use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::{assemble_form, eigen_range};
use super::library::witness_library;
use super::scaling::{scaling_probe, ScalingFamily, ScalingPlan};
use super::spectral::spectral_criterion;
use super::verdict::{Evidence, Label, StabilityVerdict, Strategy, Witness};
use crate::error::Result;
use crate::immersion::{sample_grid, AxisDomain};
use crate::jet::UJet;
use crate::quadrature::GridSpec;
use crate::testfn::{Profile, TestFunction};
use crate::variation::{evaluate, l2_norm_sq, QuadraticFunctional};

/// Largest pointwise gap tolerated between a density and its
/// sum-of-squares rewriting.
pub const SOS_RESIDUAL_TOL: f64 = 1e-10;

/// Probes evaluated per round of the witness search.
const CHUNK: usize = 8;

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Quadrature grid; `None` picks [`GridSpec::default_for`].
    pub grid: Option<GridSpec>,
    /// Seed for the random jets of the certificate check.
    pub seed: u64,
    pub scaling: Option<ScalingPlan>,
    /// Number of library probes on which the form is assembled as evidence.
    pub evidence_basis: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            grid: None,
            seed: 0,
            scaling: None,
            evidence_basis: 4,
        }
    }
}

pub fn classify(f: &dyn QuadraticFunctional, strategy: Strategy, opts: &ClassifyOptions) -> Result<StabilityVerdict> {
    let grid = opts.grid.clone().unwrap_or_else(|| GridSpec::default_for(f.dim()));
    let mut v = match strategy {
        Strategy::FourierSweep => fourier_sweep(f, &grid)?,
        Strategy::SosCertificate => sos_certificate(f, opts.seed)?,
        Strategy::SpectralCriterion => spectral(f, &grid)?,
        Strategy::ScalingProbe => scaling(f, opts.scaling.as_ref(), &grid)?,
    };
    if opts.evidence_basis > 0 && strategy != Strategy::ScalingProbe {
        let lib = witness_library(f.domains())?;
        let basis = &lib[..opts.evidence_basis.min(lib.len())];
        let q = assemble_form(f, basis, &grid)?;
        let (lo, hi) = eigen_range(&q)?;
        v.evidence.push(Evidence {
            basis_size: basis.len(),
            min_eigenvalue: lo,
            max_eigenvalue: hi,
        });
    }
    Ok(v)
}

fn witness(f: &dyn QuadraticFunctional, u: &TestFunction, grid: &GridSpec) -> Result<Witness> {
    let value = evaluate(f, u, grid)?;
    let norm2 = l2_norm_sq(u, f.domains(), grid)?;
    Ok(Witness::new(u, value, norm2))
}

fn record(v: &mut StabilityVerdict, w: Witness) {
    match w.sign() {
        1 if v.witness_pos.is_none() => v.witness_pos = Some(w),
        -1 if v.witness_neg.is_none() => v.witness_neg = Some(w),
        _ => {}
    }
}

fn settle(v: &mut StabilityVerdict) {
    if v.witness_pos.is_some() && v.witness_neg.is_some() {
        v.label = Label::Indefinite;
    }
}

fn fourier_sweep(f: &dyn QuadraticFunctional, grid: &GridSpec) -> Result<StabilityVerdict> {
    let mut v = StabilityVerdict::new(Label::Inconclusive, Strategy::FourierSweep);
    let lib = witness_library(f.domains())?;
    let mut evaluated = 0;
    for chunk in lib.chunks(CHUNK) {
        for u in chunk {
            record(&mut v, witness(f, u, grid)?);
            evaluated += 1;
        }
        if v.witness_pos.is_some() && v.witness_neg.is_some() {
            break;
        }
    }
    settle(&mut v);
    v.notes.push(format!("evaluated {evaluated} of {} library probes", lib.len()));
    if v.label == Label::Inconclusive {
        let missing = if v.witness_neg.is_none() { "negative" } else { "positive" };
        v.notes.push(format!(
            "no {missing} probe found; a definite verdict needs a certificate"
        ));
    }
    Ok(v)
}

fn random_jet(rng: &mut ChaCha8Rng, n: usize) -> UJet {
    let mut u = UJet::zero(n);
    u.v = rng.random_range(-1.0..1.0);
    for i in 0..n {
        u.d1[i] = rng.random_range(-1.0..1.0);
        for j in 0..=i {
            let x = rng.random_range(-1.0..1.0);
            u.d2[i][j] = x;
            u.d2[j][i] = x;
        }
    }
    u
}

/// Largest pointwise gap between the density and its sum-of-squares form,
/// over the certificate sample grid with four random jets per point.
/// Returns `(residual, jets checked)`, or `None` without a known form.
pub fn certificate_residual(f: &dyn QuadraticFunctional, seed: u64) -> Result<Option<(f64, usize)>> {
    let Some(sos) = f.sum_of_squares() else {
        return Ok(None);
    };
    let n = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for s in &certificate_points(f) {
        for _ in 0..4 {
            let u = random_jet(&mut rng, n);
            worst = worst.max((f.density(s, &u)? - sos.eval(s, &u)).abs());
            count += 1;
        }
    }
    Ok(Some((worst, count)))
}

fn certificate_points(f: &dyn QuadraticFunctional) -> Vec<Vec<f64>> {
    sample_grid(f.domains(), if f.dim() <= 2 { 17 } else { 5 })
}

fn sos_certificate(f: &dyn QuadraticFunctional, seed: u64) -> Result<StabilityVerdict> {
    let mut v = StabilityVerdict::new(Label::Inconclusive, Strategy::SosCertificate);
    let Some(sos) = f.sum_of_squares() else {
        v.notes.push("no sum-of-squares form is known for this functional".into());
        return Ok(v);
    };
    let (mut wmin, mut wmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in &certificate_points(f) {
        for t in &sos.terms {
            let w = t.weight.at(s);
            wmin = wmin.min(w);
            wmax = wmax.max(w);
        }
    }
    let sign = if wmin >= 0.0 && wmax > 0.0 {
        1.0
    } else if wmax <= 0.0 && wmin < 0.0 {
        -1.0
    } else {
        v.notes.push(format!("square weights range over [{wmin}, {wmax}]"));
        return Ok(v);
    };

    let (worst, count) = certificate_residual(f, seed)?.expect("checked above");
    if worst > SOS_RESIDUAL_TOL {
        v.notes.push(format!(
            "density differs from {} by up to {worst:.3e}",
            sos.describe()
        ));
        return Ok(v);
    }
    v.label = Label::definite(sign);
    v.certificate = Some(format!(
        "density = {} (max residual {worst:.1e} over {count} random jets)",
        sos.describe()
    ));
    Ok(v)
}

fn spectral(f: &dyn QuadraticFunctional, grid: &GridSpec) -> Result<StabilityVerdict> {
    let mut v = StabilityVerdict::new(Label::Inconclusive, Strategy::SpectralCriterion);
    let Some(data) = f.spectral() else {
        v.notes.push("functional carries no flat-torus spectral data".into());
        return Ok(v);
    };
    let report = spectral_criterion(&data.radii, data.c)?;
    v.notes.push(format!("λ₁ = {} vs c = {}", report.lambda1, report.c));
    if report.stable {
        v.label = Label::definite(data.eps);
        v.certificate = Some(format!("λ₁ = {} ≥ c = {}", report.lambda1, report.c));
        return Ok(v);
    }
    for m in [report.lowest_below(), report.lowest_above()].into_iter().flatten() {
        v.notes.push(format!("mode {:?}: λ = {}, λ(λ−c) = {}", m.k, m.lambda, m.factor));
        let u = TestFunction::fourier_mode(f.domains(), &m.k)?;
        record(&mut v, witness(f, &u, grid)?);
    }
    settle(&mut v);
    Ok(v)
}

fn default_plan(domains: &[AxisDomain]) -> Option<ScalingPlan> {
    if domains.iter().any(AxisDomain::is_circle) {
        return None;
    }
    Some(ScalingPlan {
        base: TestFunction::product("gauss(1)^n", 1.0, vec![Profile::gaussian(0.0, 1.0); domains.len()]),
        family: ScalingFamily::Isotropic,
        schedule: ScalingPlan::default_schedule(),
    })
}

fn scaling(f: &dyn QuadraticFunctional, plan: Option<&ScalingPlan>, grid: &GridSpec) -> Result<StabilityVerdict> {
    let mut v = StabilityVerdict::new(Label::Inconclusive, Strategy::ScalingProbe);
    let plan = match plan.cloned().or_else(|| default_plan(f.domains())) {
        Some(p) => p,
        None => {
            v.notes.push("no scaling family applies to periodic axes".into());
            return Ok(v);
        }
    };
    let report = scaling_probe(f, &plan, grid)?;
    v.notes.push(report.family.clone());
    for p in &report.points {
        v.notes.push(format!("t = {:.4}: value {:.6e}", p.t, p.value));
    }
    if !report.sign_changes.is_empty() {
        v.notes.push(format!("sign changes across {:?}", report.sign_changes));
    }
    v.witness_pos = report.positive_witness();
    v.witness_neg = report.negative_witness();
    settle(&mut v);
    Ok(v)
}
