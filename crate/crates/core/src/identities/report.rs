use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::dual_diff::Dual;
use crate::error::EvalError;
use crate::exact_arith::Rational;

/// Outcome of comparing the two sides of one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// A zero factor in some denominator: the instance is outside the
    /// identity's domain.
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s {
            "pass" => Some(Verdict::Pass),
            "fail" => Some(Verdict::Fail),
            "inapplicable" => Some(Verdict::Inapplicable),
            _ => None,
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One instance parameter as echoed in a report.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Int(i64),
    /// Lists and rationals, e.g. `"0,1,2,0"` or `"1/2"`.
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Result of verifying one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub family: String,
    pub params: Vec<(&'static str, Param)>,
    /// `None` when this side could not be evaluated.
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub verdict: Verdict,
    pub diagnostic: Option<String>,
    /// `(value, deriv)` of both sides for dual-number checks.
    pub duals: Option<(Dual, Dual)>,
}

impl Report {
    /// Build a report from independently evaluated sides.
    ///
    /// Zero-factor errors make the instance inapplicable; any other error or
    /// a mismatch is a failure.
    pub fn from_sides(
        family: impl Into<String>,
        params: Vec<(&'static str, Param)>,
        lhs: Result<Rational, EvalError>,
        rhs: Result<Rational, EvalError>,
    ) -> Report {
        let mut report = Report {
            family: family.into(),
            params,
            lhs: None,
            rhs: None,
            verdict: Verdict::Fail,
            diagnostic: None,
            duals: None,
        };
        let mut errors = Vec::new();
        match lhs {
            Ok(v) => report.lhs = Some(v),
            Err(e) => errors.push(("lhs", e)),
        }
        match rhs {
            Ok(v) => report.rhs = Some(v),
            Err(e) => errors.push(("rhs", e)),
        }
        if errors.is_empty() {
            report.reassess();
        } else {
            let inapplicable = errors.iter().all(|(_, e)| e.is_inapplicable());
            report.verdict = if inapplicable {
                Verdict::Inapplicable
            } else {
                Verdict::Fail
            };
            let text: Vec<String> = errors
                .iter()
                .map(|(side, e)| format!("{side}: {e}"))
                .collect();
            report.diagnostic = Some(text.join("; "));
        }
        report
    }

    /// Recompute the verdict from `lhs` and `rhs` (both must be present).
    pub fn reassess(&mut self) {
        match (&self.lhs, &self.rhs) {
            (Some(l), Some(r)) if l == r => {
                self.verdict = Verdict::Pass;
                self.diagnostic = None;
            }
            (Some(l), Some(r)) => {
                self.verdict = Verdict::Fail;
                self.diagnostic = Some(format!("lhs - rhs = {}", l - r));
            }
            _ => {}
        }
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    /// `k=v` pairs joined by spaces.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Rational>| v.as_ref().map_or_else(|| "-".to_string(), |r| r.to_string());
        write!(
            f,
            "{} [{}] lhs={} rhs={} {}",
            self.family,
            self.params_string(),
            show(&self.lhs),
            show(&self.rhs),
            self.verdict
        )?;
        if let Some(d) = &self.diagnostic {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Counts over a list of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub instances: usize,
    pub pass: usize,
    pub inapplicable: usize,
    pub fail: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            s.instances += 1;
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inapplicable => s.inapplicable += 1,
            }
        }
        s
    }
}
