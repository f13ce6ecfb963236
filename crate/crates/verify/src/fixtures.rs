//! Fixture corpora: stored reports that are re-derived from their family
//! and parameters and compared field by field.

use harmonic_core::identities::{Case, Param};
use harmonic_core::{Report, Verdict};
use serde_json::Value;

use crate::encode::report_json;
use crate::runner::run_cases;

/// One stored record.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub family: String,
    pub params: Vec<(String, Param)>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
}

#[derive(Debug)]
pub struct FixtureError(pub String);

impl std::fmt::Display for FixtureError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FixtureError {}

fn bad(index: usize, what: &str) -> FixtureError {
    FixtureError(format!("record {index}: {what}"))
}

/// Parse a JSON array of records, or NDJSON (one record per line).
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, FixtureError> {
    let values: Vec<Value> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| FixtureError(e.to_string()))?
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()
            .map_err(|e| FixtureError(e.to_string()))?
    };
    values.iter().enumerate().map(|(i, v)| fixture_from_json(i, v)).collect()
}

fn fixture_from_json(index: usize, v: &Value) -> Result<Fixture, FixtureError> {
    let family = v["family"].as_str().ok_or_else(|| bad(index, "missing family"))?.to_string();
    let params = v["params"]
        .as_object()
        .ok_or_else(|| bad(index, "missing params"))?
        .iter()
        .map(|(k, v)| {
            let p = match v {
                Value::Number(n) => Param::Int(n.as_i64().ok_or_else(|| bad(index, "non-integer param"))?),
                Value::String(s) => Param::Text(s.clone()),
                _ => return Err(bad(index, "param must be an integer or string")),
            };
            Ok((k.clone(), p))
        })
        .collect::<Result<_, _>>()?;
    let side = |key: &str| -> Result<Option<String>, FixtureError> {
        match &v[key] {
            Value::Null => Ok(None),
            Value::String(s) => Ok(Some(s.clone())),
            _ => Err(bad(index, "lhs/rhs must be a string or null")),
        }
    };
    let verdict = v["verdict"]
        .as_str()
        .and_then(Verdict::parse)
        .ok_or_else(|| bad(index, "bad verdict"))?;
    Ok(Fixture { family, params, lhs: side("lhs")?, rhs: side("rhs")?, verdict })
}

/// Re-evaluate every fixture. A record passes when the fresh evaluation
/// reproduces its lhs, rhs and verdict; the returned reports carry the
/// fresh values and a `fixture mismatch` diagnostic otherwise.
pub fn reverify(fixtures: &[Fixture], workers: usize, rhs_fault: bool) -> Vec<Report> {
    let cases: Vec<Result<Case, String>> = fixtures
        .iter()
        .map(|f| Case::from_params(&f.family, &f.params).map_err(|e| e.to_string()))
        .collect();
    let good: Vec<Case> = cases.iter().filter_map(|c| c.as_ref().ok().cloned()).collect();
    let mut fresh = run_cases(&good, workers, rhs_fault).into_iter();
    fixtures
        .iter()
        .zip(cases)
        .map(|(fixture, case)| match case {
            Err(e) => Report {
                family: fixture.family.clone(),
                params: Vec::new(),
                lhs: None,
                rhs: None,
                verdict: Verdict::Fail,
                diagnostic: Some(format!("malformed fixture: {e}")),
                duals: None,
            },
            Ok(_) => {
                let mut report = fresh.next().expect("one report per case");
                let json = report_json(&report);
                let mismatched: Vec<&str> = [
                    ("lhs", json["lhs"].as_str() != fixture.lhs.as_deref()),
                    ("rhs", json["rhs"].as_str() != fixture.rhs.as_deref()),
                    ("verdict", report.verdict != fixture.verdict),
                ]
                .into_iter()
                .filter(|(_, differs)| *differs)
                .map(|(k, _)| k)
                .collect();
                if !mismatched.is_empty() {
                    report.verdict = Verdict::Fail;
                    report.diagnostic = Some(format!("fixture mismatch: {}", mismatched.join(", ")));
                }
                report
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{write_reports, Format};
    use harmonic_core::identities::Sweep;

    fn corpus() -> Vec<Report> {
        let cases = Sweep::T { u: -3..=3, n: 0..=3 }.cases();
        run_cases(&cases, 2, false)
    }

    #[test]
    fn round_trip_passes() {
        for ndjson in [false, true] {
            let mut buf = Vec::new();
            write_reports(&mut buf, &corpus(), Format::Json, ndjson).unwrap();
            let fixtures = parse_fixtures(std::str::from_utf8(&buf).unwrap()).unwrap();
            assert_eq!(fixtures.len(), 24);
            let again = reverify(&fixtures, 3, false);
            assert!(again.iter().all(|r| r.verdict.is_pass()));
            assert_eq!(again, corpus());
        }
    }

    #[test]
    fn tampered_record_fails() {
        let mut buf = Vec::new();
        write_reports(&mut buf, &corpus(), Format::Json, true).unwrap();
        let text = String::from_utf8(buf).unwrap().replacen("\"lhs\":\"1\"", "\"lhs\":\"2\"", 1);
        let again = reverify(&parse_fixtures(&text).unwrap(), 1, false);
        let fails: Vec<_> = again.iter().filter(|r| r.verdict == Verdict::Fail).collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].diagnostic.as_deref(), Some("fixture mismatch: lhs"));
    }

    #[test]
    fn malformed_records() {
        assert!(parse_fixtures("[{\"family\": \"t\"}]").is_err());
        assert!(parse_fixtures("not json").is_err());
        let f = parse_fixtures(r#"[{"family":"t","params":{"u":0,"n":1},"lhs":"1","rhs":"1","verdict":"pass"}]"#).unwrap();
        let r = reverify(&f, 1, false);
        assert_eq!(r[0].verdict, Verdict::Fail);
        assert!(r[0].diagnostic.as_ref().unwrap().starts_with("malformed fixture"));
        assert!(parse_fixtures("[]").unwrap().is_empty());
    }
}
