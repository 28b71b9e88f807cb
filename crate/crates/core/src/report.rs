//! Check reports shared by the verification suites and the CLI. A report is
//! one named check on one algebra; renderers emit markdown, CSV, or JSON.

use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The check was not run because a resource budget refused it; this is
    /// not a failure.
    SkippedResource,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::SkippedResource => "skipped(resource)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    #[serde(rename = "type")]
    pub family: String,
    pub params: String,
    pub status: Status,
    pub details: String,
    pub millis: u128,
}

impl Report {
    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// Zero the wall time, for comparing runs that differ only in caching.
    pub fn strip_timing(mut self) -> Report {
        self.millis = 0;
        self
    }
}

/// Runs a check body and captures its wall time. The body returns the
/// status and a free-form details line.
pub fn timed(
    check: &str,
    family: &str,
    params: &str,
    body: impl FnOnce() -> (Status, String),
) -> Report {
    let start = Instant::now();
    let (status, details) = body();
    Report {
        check: check.into(),
        family: family.into(),
        params: params.into(),
        status,
        details,
        millis: start.elapsed().as_millis(),
    }
}

/// True when nothing failed; skipped checks do not count against this.
pub fn all_clear(reports: &[Report]) -> bool {
    reports.iter().all(|r| !r.is_fail())
}

pub fn render_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(reports: &[Report]) -> String {
    let mut out = String::from("check,type,params,status,millis,details\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&r.check),
            csv_field(&r.family),
            csv_field(&r.params),
            r.status.label(),
            r.millis,
            csv_field(&r.details),
        ));
    }
    out
}

pub fn render_md(reports: &[Report]) -> String {
    let header = ["check", "type", "params", "status", "ms"];
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.check.clone(),
                r.family.clone(),
                r.params.clone(),
                r.status.label().to_string(),
                r.millis.to_string(),
            ]
        })
        .collect();
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| -> String {
        let mut s = String::from("|");
        for (w, cell) in width.iter().zip(cells.iter()) {
            s.push_str(&format!(" {cell:<w$} |"));
        }
        s
    };
    let mut out = line(&header.map(String::from));
    out.push_str(" details |\n");
    out.push('|');
    for w in &width {
        out.push_str(&format!("{}|", "-".repeat(w + 2)));
    }
    out.push_str("---------|\n");
    for (row, r) in rows.iter().zip(reports.iter()) {
        out.push_str(&line(row));
        out.push_str(&format!(" {} |\n", r.details));
    }
    out
}
