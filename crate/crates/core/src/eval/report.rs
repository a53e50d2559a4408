use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{MosReport, MrtReport, RowConfusion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "TEXT" => Ok(ReportFormat::Text),
            "JSON" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown report format {s:?}")),
        }
    }
}

/// Combined scores. Sections that were not scored are `null` in JSON.
///
/// JSON keys: `mrt_percent_correct`, `mrt_correct`, `mrt_total`,
/// `mrt_rows` (per-row `row`, `correct`, `total` and `confusions`, a map
/// from played word to answer counts), `mos_distribution` (five
/// percentages for ratings 1 to 5), `mos_counts`, `mos_mean` and
/// `n_listeners`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EvalReport {
    pub mrt_percent_correct: Option<f64>,
    pub mrt_correct: Option<u64>,
    pub mrt_total: Option<u64>,
    pub mrt_rows: Vec<RowConfusion>,
    pub mos_distribution: Option<[f64; 5]>,
    pub mos_counts: Option<[u64; 5]>,
    pub mos_mean: Option<f64>,
    pub n_listeners: usize,
}

impl EvalReport {
    pub fn with_mrt(mut self, r: MrtReport) -> Self {
        self.mrt_percent_correct = Some(r.percent_correct);
        self.mrt_correct = Some(r.correct);
        self.mrt_total = Some(r.total);
        self.mrt_rows = r.rows;
        self.n_listeners = self.n_listeners.max(r.n_listeners);
        self
    }

    pub fn with_mos(mut self, r: MosReport) -> Self {
        self.mos_distribution = Some(r.distribution);
        self.mos_counts = Some(r.counts);
        self.mos_mean = Some(r.mean);
        self.n_listeners = self.n_listeners.max(r.n_listeners);
        self
    }
}

pub fn render_report(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        ReportFormat::Text => render_text(report),
    }
}

fn render_text(r: &EvalReport) -> String {
    let mut out = String::new();
    match (r.mrt_percent_correct, r.mrt_correct, r.mrt_total) {
        (Some(p), Some(c), Some(t)) => writeln!(out, "MRT correct: {p:.1}% ({c}/{t})").unwrap(),
        _ => writeln!(out, "MRT correct: -").unwrap(),
    }
    for row in &r.mrt_rows {
        writeln!(out, "  row {}: {}/{}", row.row + 1, row.correct, row.total).unwrap();
    }
    for (i, label) in super::Rating::LABELS.iter().enumerate() {
        match r.mos_distribution {
            Some(d) => writeln!(out, "{} {label}: {:.1}%", i + 1, d[i]).unwrap(),
            None => writeln!(out, "{} {label}: -", i + 1).unwrap(),
        }
    }
    match r.mos_mean {
        Some(m) => writeln!(out, "MOS mean: {m:.2}").unwrap(),
        None => writeln!(out, "MOS mean: -").unwrap(),
    }
    write!(out, "listeners: {}", r.n_listeners).unwrap();
    out
}
