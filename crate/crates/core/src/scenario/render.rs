use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{Report, Row};
use crate::error::{Error, Result};

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    /// Columns `scenario,check_id,outcome,lo,hi,witness,ms`.
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownName {
                kind: "format",
                name: other.into(),
            }),
        }
    }
}

pub const CSV_COLUMNS: [&str; 7] = ["scenario", "check_id", "outcome", "lo", "hi", "witness", "ms"];

fn num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv(reports: &[Report]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in reports {
        for row in &r.rows {
            w.write_record([
                row.scenario.as_str(),
                row.check_id.as_str(),
                &row.outcome.to_string(),
                &num(row.lo),
                &num(row.hi),
                row.witness.as_str(),
                &num(row.ms),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn table(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.all_expected_met {
            "all expected met"
        } else {
            "EXPECTATIONS NOT MET"
        };
        let _ = writeln!(out, "scenario {}: {status}", r.scenario);
        let cells: Vec<[String; 6]> = r.rows.iter().map(row_cells).collect();
        let header = ["check", "op", "outcome", "value", "expected", "met"];
        let mut widths = header.map(str::len);
        for c in &cells {
            for (w, s) in widths.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |cols: &[String]| {
            let mut s = String::from("  ");
            for (i, (c, w)) in cols.iter().zip(widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let pad = w.saturating_sub(c.chars().count());
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&header.map(String::from)));
        for (row, c) in r.rows.iter().zip(&cells) {
            let _ = writeln!(out, "{}", line(c));
            if !row.witness.is_empty() {
                let _ = writeln!(out, "      {}", row.witness);
            }
            if let Some(ms) = row.ms {
                let _ = writeln!(out, "      {ms:.3} ms");
            }
        }
        out.push('\n');
    }
    out
}

fn row_cells(row: &Row) -> [String; 6] {
    let value = match (row.lo, row.hi) {
        (Some(l), Some(h)) if l == h => format!("{l}"),
        (Some(l), Some(h)) => format!("[{l}, {h}]"),
        _ => String::new(),
    };
    [
        row.check_id.clone(),
        row.op.clone(),
        row.outcome.to_string(),
        value,
        row.expected.to_string(),
        if row.met { "yes" } else { "NO" }.into(),
    ]
}

#[derive(Serialize)]
struct JsonReport<'a> {
    scenario: &'a str,
    all_expected_met: bool,
    rows: &'a [Row],
}

pub fn render(reports: &[Report], format: Format) -> Result<String> {
    match format {
        Format::Table => Ok(table(reports)),
        Format::Csv => csv(reports),
        Format::Json => {
            let doc: Vec<JsonReport<'_>> = reports
                .iter()
                .map(|r| JsonReport {
                    scenario: &r.scenario,
                    all_expected_met: r.all_expected_met,
                    rows: &r.rows,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}
