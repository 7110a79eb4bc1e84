use rayon::prelude::*;
use serde::Serialize;

use super::analyze::analyze_entry;
use super::{to_csv, to_json, Format, GridOverride};
use crate::analyzer::{Label, Strategy};
use crate::catalog::{tube_entry, MetricChoice, TubeRow, TUBE_ROWS};
use crate::error::Result;

/// One recomputed verdict next to the published one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TubeCell {
    pub catalog_id: String,
    pub published: &'static str,
    pub computed: &'static str,
    pub label: Label,
    pub strategy: Strategy,
    /// Probes behind an indefinite verdict, positive first.
    pub probes: Vec<String>,
    /// Certificate behind a definite verdict.
    pub certificate: Option<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TubeTableRow {
    pub space: &'static str,
    pub row: &'static str,
    pub geodesic: &'static str,
    pub induced_metric: &'static str,
    pub eps: [i8; 4],
    pub topology: &'static str,
    pub g: TubeCell,
    pub g_prime: TubeCell,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TubeTable {
    pub rows: Vec<TubeTableRow>,
    pub mismatches: usize,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    space: &'a str,
    row: &'a str,
    geodesic: &'a str,
    induced_metric: &'a str,
    eps: String,
    metric: &'a str,
    published: &'a str,
    computed: &'a str,
    matches: bool,
    strategy: &'a str,
    probes: String,
    certificate: &'a str,
}

impl TubeTable {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut rows = Vec::with_capacity(2 * self.rows.len());
                for r in &self.rows {
                    for (metric, c) in [(MetricChoice::G, &r.g), (MetricChoice::GPrime, &r.g_prime)] {
                        rows.push(CsvRow {
                            space: r.space,
                            row: r.row,
                            geodesic: r.geodesic,
                            induced_metric: r.induced_metric,
                            eps: format!("{:?}", r.eps),
                            metric: metric.id(),
                            published: c.published,
                            computed: c.computed,
                            matches: c.matches,
                            strategy: c.strategy.as_str(),
                            probes: c.probes.join(";"),
                            certificate: c.certificate.as_deref().unwrap_or(""),
                        });
                    }
                }
                to_csv(&rows)
            }
        }
    }
}

fn cell(row: &TubeRow, metric: MetricChoice, grid: &GridOverride, seed: u64) -> Result<TubeCell> {
    let entry = tube_entry(row, metric);
    let (v, _) = analyze_entry(&entry, None, grid.explicit(2)?, seed)?;
    let published = if row.published_stable(metric) { "stable" } else { "unstable" };
    let computed = v.label.stability();
    Ok(TubeCell {
        catalog_id: entry.id,
        published,
        computed,
        label: v.label,
        strategy: v.strategy,
        probes: v.witnesses().iter().map(|w| w.probe_id.clone()).collect(),
        certificate: v.certificate,
        matches: published == computed,
    })
}

/// Recomputes both verdicts of every geodesic-tube row.
pub fn tube_table(grid: &GridOverride, seed: u64) -> Result<TubeTable> {
    let rows = TUBE_ROWS
        .par_iter()
        .map(|row| -> Result<TubeTableRow> {
            Ok(TubeTableRow {
                space: row.space.id(),
                row: row.name,
                geodesic: row.geodesic,
                induced_metric: row.induced_metric,
                eps: row.eps,
                topology: row.topology,
                g: cell(row, MetricChoice::G, grid, seed)?,
                g_prime: cell(row, MetricChoice::GPrime, grid, seed)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = rows
        .iter()
        .map(|r| usize::from(!r.g.matches) + usize::from(!r.g_prime.matches))
        .sum();
    Ok(TubeTable { rows, mismatches })
}
