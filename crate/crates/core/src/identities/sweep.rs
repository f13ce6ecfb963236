//! Instance families, concrete cases, parameter ranges and the sequential
//! `verify` driver. Parallel drivers enumerate [`Sweep::cases`] and call
//! [`Evaluator::evaluate`] from per-worker evaluators.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use super::examples::{example_params, ExampleId};
use super::paule_schneider::TSpec;
use super::report::{Param, Report};
use super::theorem::{corollary_params, IdentityInstance};
use super::Evaluator;
use crate::dual_diff::{binomial_derivatives, seed_x};
use crate::error::EvalError;
use crate::exact_arith::{parse_rational, Rational};
use crate::hyperg::{andrews_lhs, andrews_rhs, join_rationals, whipple_params, whipple_verify, AndrewsInstance};

/// Which identity a case belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Theorem,
    PreDerivative,
    Proposition,
    Corollary,
    Example(ExampleId),
    T,
    Whipple,
    Andrews,
    Deriv,
}

impl Family {
    pub fn name(self) -> String {
        match self {
            Family::Theorem => "theorem".into(),
            Family::PreDerivative => "pre-derivative".into(),
            Family::Proposition => "proposition".into(),
            Family::Corollary => "corollary".into(),
            Family::Example(id) => id.family_name(),
            Family::T => "t".into(),
            Family::Whipple => "whipple".into(),
            Family::Andrews => "andrews".into(),
            Family::Deriv => "deriv".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "theorem" => Family::Theorem,
            "pre-derivative" => Family::PreDerivative,
            "proposition" => Family::Proposition,
            "corollary" => Family::Corollary,
            "t" => Family::T,
            "whipple" => Family::Whipple,
            "andrews" => Family::Andrews,
            "deriv" => Family::Deriv,
            other => {
                let letter = other.strip_prefix("example:")?;
                let mut chars = letter.chars();
                let c = chars.next()?;
                if chars.next().is_some() {
                    return None;
                }
                Family::Example(ExampleId::from_letter(c)?)
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivSign {
    /// `D C(n+x, r)`
    Plus,
    /// `D C(n-x, r)`
    Minus,
}

impl DerivSign {
    fn as_str(self) -> &'static str {
        match self {
            DerivSign::Plus => "plus",
            DerivSign::Minus => "minus",
        }
    }
}

/// One concrete instance of some family.
#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    Theorem(IdentityInstance),
    PreDerivative(IdentityInstance),
    Proposition(IdentityInstance),
    Corollary { v: usize, n: usize, p: [u64; 4] },
    Example { id: ExampleId, params: Vec<u64>, n: usize },
    T(TSpec),
    Whipple { a: Rational, p: [Rational; 4], n: usize },
    Andrews(AndrewsInstance<Rational>),
    Deriv { n: usize, r: usize, sign: DerivSign },
}

impl Case {
    pub fn family(&self) -> Family {
        match self {
            Case::Theorem(_) => Family::Theorem,
            Case::PreDerivative(_) => Family::PreDerivative,
            Case::Proposition(_) => Family::Proposition,
            Case::Corollary { .. } => Family::Corollary,
            Case::Example { id, .. } => Family::Example(*id),
            Case::T(_) => Family::T,
            Case::Whipple { .. } => Family::Whipple,
            Case::Andrews(_) => Family::Andrews,
            Case::Deriv { .. } => Family::Deriv,
        }
    }

    /// Parameters as echoed in reports; [`Case::from_params`] inverts this.
    pub fn params(&self) -> Vec<(&'static str, Param)> {
        match self {
            Case::Theorem(i) | Case::PreDerivative(i) | Case::Proposition(i) => i.params(),
            Case::Corollary { v, n, p } => corollary_params(*v, *n, p),
            Case::Example { id, params, n } => example_params(*id, params, *n),
            Case::T(spec) => spec.params(),
            Case::Whipple { a, p, n } => whipple_params(a, p, *n),
            Case::Andrews(inst) => vec![
                ("a", Param::Text(inst.a.to_string())),
                ("p", Param::Text(join_rationals(&inst.p))),
                ("n", Param::Int(inst.n as i64)),
            ],
            Case::Deriv { n, r, sign } => vec![
                ("n", Param::Int(*n as i64)),
                ("r", Param::Int(*r as i64)),
                ("sign", Param::Text(sign.as_str().into())),
            ],
        }
    }

    /// Rebuild a case from a family name and `params()`-style pairs.
    pub fn from_params(family: &str, params: &[(String, Param)]) -> Result<Case, EvalError> {
        let fam = Family::parse(family)
            .ok_or_else(|| EvalError::InvalidInstance(format!("unknown family `{family}`")))?;
        let get = |key: &str| -> Result<&Param, EvalError> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v)
                .ok_or_else(|| EvalError::InvalidInstance(format!("missing parameter `{key}`")))
        };
        let uint = |key: &str| -> Result<u64, EvalError> {
            match get(key)? {
                Param::Int(v) if *v >= 0 => Ok(*v as u64),
                Param::Text(s) => s
                    .parse()
                    .map_err(|_| EvalError::InvalidInstance(format!("`{key}` is not a nonnegative integer"))),
                _ => Err(EvalError::InvalidInstance(format!("`{key}` is not a nonnegative integer"))),
            }
        };
        let text = |key: &str| -> Result<String, EvalError> { Ok(get(key)?.to_string()) };
        let uint_list = |key: &str| -> Result<Vec<u64>, EvalError> { parse_uint_list(&text(key)?) };
        let rational_list = |key: &str| -> Result<Vec<Rational>, EvalError> {
            text(key)?
                .split(',')
                .map(|s| {
                    parse_rational(s).map_err(|e| EvalError::InvalidInstance(format!("`{key}`: {e}")))
                })
                .collect()
        };
        let identity = || -> Result<IdentityInstance, EvalError> {
            IdentityInstance::new(
                uint("m")? as usize,
                uint("v")? as usize,
                uint("n")? as usize,
                uint_list("p")?,
            )
        };
        Ok(match fam {
            Family::Theorem => Case::Theorem(identity()?),
            Family::PreDerivative => Case::PreDerivative(identity()?),
            Family::Proposition => {
                let inst = identity()?;
                if inst.m() > 2 {
                    return Err(EvalError::InvalidInstance("proposition needs m <= 2".into()));
                }
                Case::Proposition(inst)
            }
            Family::Corollary => Case::Corollary {
                v: bounded_v(uint("v")? as usize, 4)?,
                n: uint("n")? as usize,
                p: four(uint_list("p")?)?,
            },
            Family::Example(id) => {
                let params = id
                    .param_names()
                    .iter()
                    .map(|k| uint(k))
                    .collect::<Result<Vec<_>, _>>()?;
                Case::Example { id, params, n: uint("n")? as usize }
            }
            Family::T => {
                let u = match get("u")? {
                    Param::Int(u) => *u,
                    Param::Text(s) => s
                        .parse()
                        .map_err(|_| EvalError::InvalidInstance("`u` is not an integer".into()))?,
                };
                Case::T(TSpec::new(u, uint("n")? as usize)?)
            }
            Family::Whipple => {
                let a = rational_list("a")?.remove(0);
                Case::Whipple { a, p: four(rational_list("p")?)?, n: uint("n")? as usize }
            }
            Family::Andrews => {
                let a = rational_list("a")?.remove(0);
                Case::Andrews(AndrewsInstance::new(a, rational_list("p")?, uint("n")? as usize)?)
            }
            Family::Deriv => {
                let (n, r) = (uint("n")? as usize, uint("r")? as usize);
                if r > n {
                    return Err(EvalError::InvalidInstance("deriv needs r <= n".into()));
                }
                let sign = match text("sign")?.as_str() {
                    "plus" => DerivSign::Plus,
                    "minus" => DerivSign::Minus,
                    other => return Err(EvalError::InvalidInstance(format!("bad sign `{other}`"))),
                };
                Case::Deriv { n, r, sign }
            }
        })
    }
}

/// Parse `"0,1,2"`.
pub fn parse_uint_list(s: &str) -> Result<Vec<u64>, EvalError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| EvalError::InvalidInstance(format!("`{x}` is not a nonnegative integer")))
        })
        .collect()
}

fn four<T: Clone>(v: Vec<T>) -> Result<[T; 4], EvalError> {
    let len = v.len();
    v.try_into()
        .map_err(|_| EvalError::InvalidInstance(format!("expected 4 parameters, got {len}")))
}

fn bounded_v(v: usize, max: usize) -> Result<usize, EvalError> {
    if v > max {
        return Err(EvalError::InvalidInstance(format!("v = {v} exceeds {max}")));
    }
    Ok(v)
}

impl Evaluator {
    /// Evaluate both sides of `case` independently.
    pub fn evaluate(&self, case: &Case) -> Report {
        let family = case.family().name();
        match case {
            Case::Theorem(inst) => {
                Report::from_sides(family, case.params(), Ok(self.theorem_lhs(inst)), self.theorem_rhs(inst))
            }
            Case::PreDerivative(inst) => {
                let x = seed_x();
                let lhs = self.pre_identity_lhs(inst, &x);
                let rhs = self.pre_identity_rhs(inst, &x);
                let mut report = Report::from_sides(
                    family,
                    case.params(),
                    lhs.clone().map(|d| d.deriv),
                    rhs.clone().map(|d| d.deriv),
                );
                if let (Ok(l), Ok(r)) = (lhs, rhs) {
                    report.duals = Some((l, r));
                }
                report
            }
            Case::Proposition(inst) => Report::from_sides(
                family,
                case.params(),
                Ok(self.theorem_lhs(inst)),
                self.proposition_rhs(inst),
            ),
            Case::Corollary { v, n, p } => self.corollary_instance(*v, *n, *p),
            Case::Example { id, params, n } => self.example_eval(*id, params, *n),
            Case::T(spec) => self.t_verify(spec),
            Case::Whipple { a, p, n } => whipple_verify(a, p, *n),
            Case::Andrews(inst) => {
                Report::from_sides(family, case.params(), andrews_lhs(inst), andrews_rhs(inst))
            }
            Case::Deriv { n, r, sign } => {
                let d = binomial_derivatives(*n, *r, self.harmonics(), self.factorials());
                let (lhs, rhs) = match sign {
                    DerivSign::Plus => (d.plus_dual, d.plus_closed),
                    DerivSign::Minus => (d.minus_dual, d.minus_closed),
                };
                Report::from_sides(family, case.params(), Ok(lhs), Ok(rhs))
            }
        }
    }
}

/// Parameter bounds for the theorem, pre-derivative and proposition sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRange {
    pub m: RangeInclusive<usize>,
    /// `None` sweeps every `v` in `0..=2m+2`.
    pub v: Option<usize>,
    pub n: RangeInclusive<usize>,
    /// Each `P_s` runs over `0..=p_max`.
    pub p_max: u64,
}

/// A Cartesian range of instances of one family.
#[derive(Clone, Debug, PartialEq)]
pub enum Sweep {
    Theorem(IdentityRange),
    PreDerivative(IdentityRange),
    /// `m` is clipped to `1..=2`.
    Proposition(IdentityRange),
    Corollary { v: Option<usize>, n: RangeInclusive<usize>, p_max: u64 },
    Example { id: ExampleId, params: Vec<RangeInclusive<u64>>, n: RangeInclusive<usize> },
    /// `u = 0` is skipped.
    T { u: RangeInclusive<i64>, n: RangeInclusive<usize> },
    /// Every `0 <= r <= n`, both signs.
    Deriv { n: RangeInclusive<usize> },
    /// Explicit list, e.g. generated rational instances.
    Cases(Vec<Case>),
}

impl Sweep {
    /// All cases, in canonical order.
    pub fn cases(&self) -> Vec<Case> {
        match self {
            Sweep::Theorem(r) => identity_cases(r, 1..=usize::MAX).map(Case::Theorem).collect(),
            Sweep::PreDerivative(r) => identity_cases(r, 1..=usize::MAX).map(Case::PreDerivative).collect(),
            Sweep::Proposition(r) => identity_cases(r, 1..=2).map(Case::Proposition).collect(),
            Sweep::Corollary { v, n, p_max } => {
                let vs = v.map_or(0..=4, |v| v..=v.min(4));
                let mut out = Vec::new();
                for v in vs {
                    for n in n.clone() {
                        for p in tuples(4, &vec![0..=*p_max; 4]) {
                            out.push(Case::Corollary { v, n, p: [p[0], p[1], p[2], p[3]] });
                        }
                    }
                }
                out
            }
            Sweep::Example { id, params, n } => {
                if params.len() != id.arity() {
                    return Vec::new();
                }
                let mut out = Vec::new();
                for p in tuples(id.arity(), params) {
                    for n in n.clone() {
                        out.push(Case::Example { id: *id, params: p.clone(), n });
                    }
                }
                out
            }
            Sweep::T { u, n } => {
                let mut out = Vec::new();
                for u in u.clone().filter(|&u| u != 0) {
                    for n in n.clone() {
                        out.push(Case::T(TSpec::new(u, n).expect("u != 0")));
                    }
                }
                out
            }
            Sweep::Deriv { n } => {
                let mut out = Vec::new();
                for n in n.clone() {
                    for r in 0..=n {
                        for sign in [DerivSign::Plus, DerivSign::Minus] {
                            out.push(Case::Deriv { n, r, sign });
                        }
                    }
                }
                out
            }
            Sweep::Cases(cases) => cases.clone(),
        }
    }
}

fn identity_cases(
    range: &IdentityRange,
    allowed_m: RangeInclusive<usize>,
) -> impl Iterator<Item = IdentityInstance> + '_ {
    let ms: Vec<usize> = range
        .m
        .clone()
        .filter(move |m| *m >= 1 && allowed_m.contains(m))
        .collect();
    ms.into_iter().flat_map(move |m| {
        let width = 2 * m + 2;
        let vs = match range.v {
            Some(v) if v <= width => v..=v,
            #[allow(clippy::reversed_empty_ranges)] // v out of range: no instances
            Some(_) => 1..=0,
            None => 0..=width,
        };
        let ps = tuples(width, &vec![0..=range.p_max; width]);
        vs.flat_map(move |v| {
            let ps = ps.clone();
            range.n.clone().flat_map(move |n| {
                ps.clone()
                    .into_iter()
                    .map(move |p| IdentityInstance::new(m, v, n, p).expect("valid by construction"))
            })
        })
    })
}

/// All tuples with `t[s]` in `ranges[s]`, last coordinate fastest.
fn tuples(len: usize, ranges: &[RangeInclusive<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for range in ranges.iter().take(len) {
        let mut next = Vec::with_capacity(out.len() * 3);
        for prefix in &out {
            for x in range.clone() {
                let mut t = prefix.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Evaluate every case of `sweep` with one evaluator, in canonical order.
pub fn verify(sweep: &Sweep) -> Vec<Report> {
    let ev = Evaluator::new();
    sweep.cases().iter().map(|c| ev.evaluate(c)).collect()
}
