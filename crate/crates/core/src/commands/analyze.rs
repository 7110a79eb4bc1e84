use serde::Serialize;

use super::{to_csv, to_json, Format, GridOverride};
use crate::analyzer::{classify, ClassifyOptions, Evidence, Label, StabilityVerdict, Strategy, Witness, SOS_RESIDUAL_TOL};
use crate::catalog::{lookup, CatalogEntry};
use crate::error::Result;
use crate::quadrature::{GridSpec, LEAK_TOL};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AnalyzeConfig {
    pub catalog_id: String,
    pub grid: GridOverride,
    /// Overrides the entry's default strategy.
    pub strategy: Option<Strategy>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// A witness counts when `|value| > witness_rel · ∫u²`.
    pub witness_rel: f64,
    pub sos_residual: f64,
    pub support_leak: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            witness_rel: Witness::REL_TOL,
            sos_residual: SOS_RESIDUAL_TOL,
            support_leak: LEAK_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub probe_id: String,
    pub value: f64,
    pub norm2: f64,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        Self {
            probe_id: w.probe_id.clone(),
            value: w.value,
            norm2: w.norm2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub catalog_id: String,
    pub label: Label,
    pub strategy: Strategy,
    /// Positive witness first.
    pub witnesses: Vec<WitnessRecord>,
    pub evidence: Vec<Evidence>,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub expected: Option<Label>,
    pub matches_expected: Option<bool>,
    pub certificate: Option<String>,
    pub warning: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    catalog_id: &'a str,
    label: &'a str,
    strategy: &'a str,
    expected: &'a str,
    matches_expected: Option<bool>,
    probe_id: &'a str,
    value: Option<f64>,
    norm2: Option<f64>,
}

impl AnalysisReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let base = CsvRow {
                    catalog_id: &self.catalog_id,
                    label: self.label.as_str(),
                    strategy: self.strategy.as_str(),
                    expected: self.expected.map_or("", Label::as_str),
                    matches_expected: self.matches_expected,
                    probe_id: "",
                    value: None,
                    norm2: None,
                };
                let rows: Vec<CsvRow> = if self.witnesses.is_empty() {
                    vec![base]
                } else {
                    self.witnesses
                        .iter()
                        .map(|w| CsvRow {
                            probe_id: &w.probe_id,
                            value: Some(w.value),
                            norm2: Some(w.norm2),
                            ..base
                        })
                        .collect()
                };
                to_csv(&rows)
            }
        }
    }
}

/// Classifies one catalog entry with `strategy`, or its default.
pub fn analyze_entry(
    entry: &CatalogEntry,
    strategy: Option<Strategy>,
    grid: Option<GridSpec>,
    seed: u64,
) -> Result<(StabilityVerdict, GridSpec)> {
    let f = entry.functional.as_ref();
    let resolved = grid.clone().unwrap_or_else(|| GridSpec::default_for(f.dim()));
    let opts = ClassifyOptions {
        grid,
        seed,
        scaling: entry.scaling.clone(),
        ..ClassifyOptions::default()
    };
    let verdict = classify(f, strategy.unwrap_or(entry.default_strategy), &opts)?;
    Ok((verdict, resolved))
}

pub fn analyze(cfg: &AnalyzeConfig) -> Result<AnalysisReport> {
    let entry = lookup(&cfg.catalog_id)?;
    let dim = entry.functional.dim();
    let (v, grid) = analyze_entry(&entry, cfg.strategy, cfg.grid.explicit(dim)?, cfg.seed)?;
    Ok(AnalysisReport {
        catalog_id: entry.id.clone(),
        label: v.label,
        strategy: v.strategy,
        witnesses: v.witnesses().into_iter().map(WitnessRecord::from).collect(),
        evidence: v.evidence.clone(),
        grid,
        tolerances: Tolerances::default(),
        expected: entry.expected,
        matches_expected: entry.expected.map(|e| e == v.label),
        certificate: v.certificate.clone(),
        warning: entry.warning.clone(),
        notes: v.notes,
    })
}
