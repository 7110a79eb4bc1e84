//! Batch front ends shared by the CLI and the tests. Every command returns a
//! serializable report; rendering to JSON or CSV is deterministic for a
//! fixed configuration, whatever the rayon thread count.

mod analyze;
mod sweep;
mod tube_table;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use analyze::{analyze, analyze_entry, AnalysisReport, AnalyzeConfig, Tolerances, WitnessRecord};
pub use sweep::{render_rows, sweep, SweepConfig, SweepRow, SweepSpec};
pub use tube_table::{tube_table, TubeCell, TubeTable, TubeTableRow};
pub use verify::{check_ids, verify_paper, Check, VerifyConfig, VerifyReport};

use crate::error::{Error, Result};
use crate::quadrature::GridSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}` (json or csv)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Quadrature settings from the command line; unset fields keep the
/// per-dimension defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridOverride {
    /// Nodes on every axis.
    pub nodes: Option<usize>,
    /// Fixed half-width of line-axis boxes.
    pub line_box: Option<f64>,
}

impl GridOverride {
    pub fn resolve(&self, dim: usize) -> Result<GridSpec> {
        let grid = match self.nodes {
            Some(n) => GridSpec::uniform(n)?,
            None => GridSpec::default_for(dim),
        };
        if let Some(b) = self.line_box {
            if !(b.is_finite() && b > 0.0) {
                return Err(Error::InvalidArgument(format!("box half-width must be positive, got {b}")));
            }
        }
        Ok(grid.with_line_box(self.line_box))
    }

    /// `None` when nothing is overridden, so callers fall back to defaults.
    pub fn explicit(&self, dim: usize) -> Result<Option<GridSpec>> {
        if self.nodes.is_none() && self.line_box.is_none() {
            Ok(None)
        } else {
            self.resolve(dim).map(Some)
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Serialization(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One CSV record per row, header from the row's field names.
pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// Shortest round-trip rendering, so reports are stable and exact.
pub(crate) fn num(x: f64) -> String {
    format!("{x:e}")
}
