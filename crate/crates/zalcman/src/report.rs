//! Campaign reports and their JSON / CSV encodings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use zalcman_core::{HerglotzMeasure, LiftedMapSpec, SpaceSpec, C64};

use crate::config::{CampaignKind, OutputFormat};
use crate::error::Result;

/// Serializable point of `C^n`, as `[[re, im], ...]`.
pub fn encode_point(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

pub fn decode_point(p: &[[f64; 2]]) -> Vec<C64> {
    p.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

/// Input that produced a sample, enough to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Measure {
        measure: HerglotzMeasure,
    },
    Lifted {
        space: SpaceSpec,
        spec: LiftedMapSpec,
        point: Vec<[f64; 2]>,
    },
    Point {
        space: SpaceSpec,
        point: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub value: f64,
    pub margin: f64,
    pub witness: Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: usize,
    pub value: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: CampaignKind,
    pub seed: u64,
    pub samples: usize,
    pub max_value: f64,
    pub bound: f64,
    pub min_margin: f64,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    /// Best measure found by the `search` campaign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extremizer: Option<Witness>,
    pub rows: Vec<SampleRow>,
    pub runtime_ms: u64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{}: samples={} max_value={:.15} bound={} min_margin={:.3e} violations={} runtime_ms={}",
            self.campaign,
            self.samples,
            self.max_value,
            self.bound,
            self.min_margin,
            self.violations.len(),
            self.runtime_ms
        )
    }
}

pub fn write_json<W: Write>(report: &CampaignReport, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One `sample` row per evaluated sample, then an `aggregate` footer holding
/// the sample count, max value, bound, min margin and violation count.
pub fn write_csv<W: Write>(report: &CampaignReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["row", "index", "value", "bound", "margin", "violation"])?;
    let violating: std::collections::HashSet<usize> =
        report.violations.iter().map(|v| v.index).collect();
    for row in &report.rows {
        w.write_record([
            "sample".to_owned(),
            row.index.to_string(),
            row.value.to_string(),
            report.bound.to_string(),
            row.margin.to_string(),
            violating.contains(&row.index).to_string(),
        ])?;
    }
    w.write_record([
        "aggregate".to_owned(),
        report.samples.to_string(),
        report.max_value.to_string(),
        report.bound.to_string(),
        report.min_margin.to_string(),
        report.violations.len().to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn write_report<W: Write>(report: &CampaignReport, format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(report, out),
        OutputFormat::Csv => write_csv(report, out),
    }
}

/// Writes `report` to `path` in `format`.
pub fn emit_report(report: &CampaignReport, format: OutputFormat, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_report(report, format, &mut out)?;
    out.flush()?;
    Ok(())
}
