//! Report encoders: JSON (array or NDJSON), CSV with header, and human text.

use std::collections::BTreeSet;
use std::io::{self, Write};

use harmonic_core::identities::{Param, Summary};
use harmonic_core::Report;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// `{"family", "params", "lhs", "rhs", "verdict", "diagnostic"}`, with
/// rationals as canonical `"p/q"` strings and `null` for a side that could
/// not be evaluated.
pub fn report_json(report: &Report) -> Value {
    let params: Map<String, Value> = report
        .params
        .iter()
        .map(|(k, v)| {
            let v = match v {
                Param::Int(i) => json!(i),
                Param::Text(s) => json!(s),
            };
            (k.to_string(), v)
        })
        .collect();
    json!({
        "family": report.family,
        "params": params,
        "lhs": report.lhs.as_ref().map(|r| r.to_string()),
        "rhs": report.rhs.as_ref().map(|r| r.to_string()),
        "verdict": report.verdict.as_str(),
        "diagnostic": report.diagnostic,
    })
}

pub fn summary_line(reports: &[Report]) -> String {
    let s = Summary::of(reports);
    let families: BTreeSet<&str> = reports.iter().map(|r| r.family.as_str()).collect();
    format!(
        "families: {}, instances: {}, pass: {}, inapplicable: {}, fail: {}",
        families.len(),
        s.instances,
        s.pass,
        s.inapplicable,
        s.fail
    )
}

pub fn write_reports<W: Write>(
    mut out: W,
    reports: &[Report],
    format: Format,
    ndjson: bool,
) -> io::Result<()> {
    match format {
        Format::Json if ndjson => {
            for r in reports {
                serde_json::to_writer(&mut out, &report_json(r))?;
                out.write_all(b"\n")?;
            }
        }
        Format::Json => {
            let all: Vec<Value> = reports.iter().map(report_json).collect();
            serde_json::to_writer_pretty(&mut out, &all)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["family", "params", "lhs", "rhs", "verdict", "diagnostic"])?;
            for r in reports {
                let show = |v: &Option<harmonic_core::Rational>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
                w.write_record([
                    r.family.as_str(),
                    &r.params_string(),
                    &show(&r.lhs),
                    &show(&r.rhs),
                    r.verdict.as_str(),
                    r.diagnostic.as_deref().unwrap_or(""),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{}", summary_line(reports))?;
        }
    }
    out.flush()
}

/// Multi-line description of a single report, including dual pairs.
pub fn write_check_human<W: Write>(mut out: W, report: &Report) -> io::Result<()> {
    let show = |v: &Option<harmonic_core::Rational>| v.as_ref().map_or_else(|| "-".into(), |r| r.to_string());
    writeln!(out, "family: {}", report.family)?;
    writeln!(out, "params: {}", report.params_string())?;
    writeln!(out, "lhs: {}", show(&report.lhs))?;
    writeln!(out, "rhs: {}", show(&report.rhs))?;
    if let Some((l, r)) = &report.duals {
        writeln!(out, "lhs dual: {l}")?;
        writeln!(out, "rhs dual: {r}")?;
    }
    writeln!(out, "verdict: {}", report.verdict)?;
    if let Some(d) = &report.diagnostic {
        writeln!(out, "diagnostic: {d}")?;
    }
    out.flush()
}
