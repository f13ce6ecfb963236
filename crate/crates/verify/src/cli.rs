//! Command-line front end.
//!
//! Exit statuses: 0 all pass, 1 some instance failed, 2 usage error,
//! 3 the checked instance is inapplicable (`check` only), 4 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonic_core::exact_arith::parse_rational;
use harmonic_core::identities::{
    parse_uint_list, Case, DerivSign, Family, IdentityInstance, IdentityRange, Sweep, TSpec,
};
use harmonic_core::{Rational, Report, Verdict};

use crate::encode::{report_json, summary_line, write_check_human, write_reports, Format};
use crate::fixtures::{parse_fixtures, reverify};
use crate::generate::{grid_cases, random_cases, RandomSpec};
use crate::runner::{default_workers, run_cases};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "harmonic-verify", version, about = "Exact verification of hypergeometric and harmonic number identities")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate both sides over a Cartesian range and report every instance.
    Verify(VerifyArgs),
    /// Evaluate a single instance.
    Check(CheckArgs),
    /// Write a JSON fixture corpus for a range.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// theorem, pre-derivative, proposition, corollary, example:<a..o>, t,
    /// whipple, andrews or deriv. Omit with --fixtures.
    family: Option<String>,
    #[command(flatten)]
    instances: InstanceArgs,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// With --format json, one record per line instead of an array.
    #[arg(long)]
    ndjson: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Re-verify a fixture corpus instead of sweeping.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_rhs_fault: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    family: String,
    #[command(flatten)]
    instances: InstanceArgs,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    #[arg(long, hide = true)]
    inject_rhs_fault: bool,
}

#[derive(Args, Debug)]
struct FixturesArgs {
    family: String,
    #[command(flatten)]
    instances: InstanceArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    ndjson: bool,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[arg(long, hide = true)]
    inject_rhs_fault: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Human => Format::Human,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SignArg {
    Plus,
    Minus,
}

/// Parameter bounds. A fixed value (`--n 3`) excludes the matching
/// `--n-min`/`--n-max`. Unset bounds fall back to per-family defaults.
#[derive(Args, Debug, Default)]
struct InstanceArgs {
    /// Depth of the multi-sum.
    #[arg(long, conflicts_with_all = ["m_min", "m_max"])]
    m: Option<usize>,
    #[arg(long)]
    m_min: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Split point between the two parameter groups; all values if unset.
    #[arg(long)]
    v: Option<usize>,
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Exact parameter list: nonnegative integers, or "p/q" rationals for
    /// whipple and andrews.
    #[arg(long, conflicts_with = "p_max")]
    p: Option<String>,
    /// Each integer parameter runs over 0..=P_MAX [default: 1].
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    f: Option<u64>,
    #[arg(long)]
    g: Option<u64>,
    /// Unfixed example parameters run over 0..=PARAM_MAX.
    #[arg(long, default_value_t = 2)]
    param_max: u64,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["u_min", "u_max"])]
    u: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    u_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    u_max: Option<i64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
    /// Rational "p/q" base parameter for whipple and andrews.
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    a: Option<String>,
    /// Number of random whipple/andrews instances.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated rationals; sweep every (a, P) drawn from them.
    #[arg(long, conflicts_with_all = ["a", "count"])]
    grid: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn bounds<T: Copy>(
    name: &str,
    fixed: Option<T>,
    min: Option<T>,
    max: Option<T>,
    default: RangeInclusive<T>,
) -> Result<RangeInclusive<T>, CliError> {
    if fixed.is_some() && (min.is_some() || max.is_some()) {
        return usage(format!("--{name} cannot be combined with --{name}-min/--{name}-max"));
    }
    Ok(match fixed {
        Some(x) => x..=x,
        None => min.unwrap_or(*default.start())..=max.unwrap_or(*default.end()),
    })
}

fn rationals(text: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).or_else(|e| usage(format!("--{flag}: {e}"))))
        .collect()
}

fn uints(text: &str) -> Result<Vec<u64>, CliError> {
    parse_uint_list(text).or_else(|e| usage(format!("--p: {e}")))
}

impl InstanceArgs {
    fn n_range(&self, default: RangeInclusive<usize>) -> Result<RangeInclusive<usize>, CliError> {
        bounds("n", self.n, self.n_min, self.n_max, default)
    }

    fn m_range(&self, default: RangeInclusive<usize>) -> Result<RangeInclusive<usize>, CliError> {
        let m = bounds("m", self.m, self.m_min, self.m_max, default)?;
        if *m.start() == 0 {
            return usage("m must be at least 1");
        }
        Ok(m)
    }

    fn example_values(&self) -> [Option<u64>; 6] {
        [self.b, self.c, self.d, self.e, self.f, self.g]
    }

    /// Every case the flags describe for `family`, in canonical order.
    fn cases(&self, family: Family, single: bool) -> Result<Vec<Case>, CliError> {
        let p_max = self.p_max.unwrap_or(1);
        match family {
            Family::Theorem | Family::PreDerivative | Family::Proposition => {
                let wrap = match family {
                    Family::Theorem => Case::Theorem,
                    Family::PreDerivative => Case::PreDerivative,
                    _ => Case::Proposition,
                };
                let n = self.n_range(0..=4)?;
                let Some(p) = &self.p else {
                    let m = self.m_range(1..=1)?;
                    let range = IdentityRange { m, v: self.v, n, p_max };
                    return Ok(match family {
                        Family::Theorem => Sweep::Theorem(range),
                        Family::PreDerivative => Sweep::PreDerivative(range),
                        _ => Sweep::Proposition(range),
                    }
                    .cases());
                };
                let p = uints(p)?;
                if p.len() < 4 || p.len() % 2 != 0 {
                    return usage(format!("--p needs 2m+2 entries, got {}", p.len()));
                }
                let m = (p.len() - 2) / 2;
                if self.m.is_some_and(|given| given != m) {
                    return usage(format!("--p has {} entries but --m is {}", p.len(), self.m.unwrap()));
                }
                if family == Family::Proposition && m > 2 {
                    return usage("proposition needs m <= 2");
                }
                let vs = match self.v {
                    Some(v) if v <= 2 * m + 2 => v..=v,
                    Some(v) => return usage(format!("v = {v} exceeds 2m+2 = {}", 2 * m + 2)),
                    None => 0..=2 * m + 2,
                };
                let mut out = Vec::new();
                for v in vs {
                    for n in n.clone() {
                        let inst = IdentityInstance::new(m, v, n, p.clone())
                            .or_else(|e| usage(e.to_string()))?;
                        out.push(wrap(inst));
                    }
                }
                Ok(out)
            }
            Family::Corollary => {
                let n = self.n_range(0..=4)?;
                if self.v.is_some_and(|v| v > 4) {
                    return usage("corollary needs v <= 4");
                }
                match &self.p {
                    None => Ok(Sweep::Corollary { v: self.v, n, p_max }.cases()),
                    Some(p) => {
                        let p: [u64; 4] = uints(p)?
                            .try_into()
                            .or_else(|_| usage("corollary --p needs 4 entries"))?;
                        let vs = self.v.map_or(0..=4, |v| v..=v);
                        Ok(vs
                            .flat_map(|v| n.clone().map(move |n| Case::Corollary { v, n, p }))
                            .collect())
                    }
                }
            }
            Family::Example(id) => {
                let given = self.example_values();
                let names = ["b", "c", "d", "e", "f", "g"];
                for (name, value) in names.iter().zip(given).skip(id.arity()) {
                    if value.is_some() {
                        return usage(format!("example {} takes no --{name}", id.letter()));
                    }
                }
                let params = given[..id.arity()]
                    .iter()
                    .map(|v| v.map_or(0..=self.param_max, |x| x..=x))
                    .collect();
                Ok(Sweep::Example { id, params, n: self.n_range(0..=4)? }.cases())
            }
            Family::T => {
                let u = bounds("u", self.u, self.u_min, self.u_max, -8..=12)?;
                if self.u == Some(0) {
                    return usage("u must be nonzero");
                }
                let n = self.n_range(0..=12)?;
                if single {
                    let (Some(u), Some(n)) = (self.u, self.n) else {
                        return usage("check t needs --u and --n");
                    };
                    return Ok(vec![Case::T(TSpec::new(u, n).or_else(|e| usage(e.to_string()))?)]);
                }
                Ok(Sweep::T { u, n }.cases())
            }
            Family::Deriv => {
                let n = self.n_range(0..=10)?;
                let signs: Vec<DerivSign> = match (self.sign, single) {
                    (Some(SignArg::Minus), _) => vec![DerivSign::Minus],
                    (Some(SignArg::Plus), _) | (None, true) => vec![DerivSign::Plus],
                    (None, false) => vec![DerivSign::Plus, DerivSign::Minus],
                };
                let mut out = Vec::new();
                for n in n {
                    let rs = self.r.map_or(0..=n, |r| r..=r.min(n));
                    for r in rs.filter(|&r| r <= n) {
                        for &sign in &signs {
                            out.push(Case::Deriv { n, r, sign });
                        }
                    }
                }
                Ok(out)
            }
            Family::Whipple | Family::Andrews => self.rational_cases(family == Family::Andrews),
        }
    }

    fn rational_cases(&self, andrews: bool) -> Result<Vec<Case>, CliError> {
        let n = self.n_range(0..=6)?;
        let m = self.m_range(1..=3)?;
        if let Some(grid) = &self.grid {
            return Ok(grid_cases(&rationals(grid, "grid")?, n, m, andrews));
        }
        if let Some(p) = &self.p {
            let Some(a) = &self.a else {
                return usage("--p for whipple/andrews needs --a");
            };
            let a = rationals(a, "a")?;
            let [a] = <[Rational; 1]>::try_from(a).or_else(|_| usage("--a takes one rational"))?;
            let p = rationals(p, "p")?;
            let mut out = Vec::new();
            for n in n {
                out.push(if andrews {
                    Case::Andrews(
                        harmonic_core::hyperg::AndrewsInstance::new(a.clone(), p.clone(), n)
                            .or_else(|e| usage(e.to_string()))?,
                    )
                } else {
                    let p: [Rational; 4] =
                        p.clone().try_into().or_else(|_| usage("whipple --p needs 4 rationals"))?;
                    Case::Whipple { a: a.clone(), p, n }
                });
            }
            return Ok(out);
        }
        let spec = RandomSpec {
            seed: self.seed,
            count: self.count.unwrap_or(if andrews { 100 } else { 50 }),
            n,
            m,
            ..RandomSpec::default()
        };
        let generated = random_cases(&spec, andrews);
        if generated.skipped > 0 {
            eprintln!("skipped: inapplicable {}", generated.skipped);
        }
        Ok(generated.cases)
    }
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    Family::parse(name).map_or_else(|| usage(format!("unknown family `{name}`")), Ok)
}

fn exit_for(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn open_out(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn verify(args: VerifyArgs) -> Result<i32, CliError> {
    let workers = args.workers.map_or_else(default_workers, |w| w as usize);
    let reports = match (&args.fixtures, &args.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let fixtures = parse_fixtures(&text).or_else(|e| usage(format!("{}: {e}", path.display())))?;
            reverify(&fixtures, workers, args.inject_rhs_fault)
        }
        (Some(_), Some(_)) => return usage("--fixtures takes no family"),
        (None, Some(name)) => {
            let cases = args.instances.cases(parse_family(name)?, false)?;
            run_cases(&cases, workers, args.inject_rhs_fault)
        }
        (None, None) => return usage("verify needs a family or --fixtures"),
    };
    let format = Format::from(args.format);
    write_reports(open_out(&args.out)?, &reports, format, args.ndjson)?;
    if format != Format::Human || args.out.is_some() {
        eprintln!("{}", summary_line(&reports));
    }
    Ok(exit_for(&reports))
}

fn check(args: CheckArgs) -> Result<i32, CliError> {
    let cases = args.instances.cases(parse_family(&args.family)?, true)?;
    let [case] = <[Case; 1]>::try_from(cases)
        .or_else(|c| usage(format!("check needs exactly one instance, the flags describe {}", c.len())))?;
    let report = run_cases(&[case], 1, args.inject_rhs_fault).remove(0);
    let mut out = io::stdout().lock();
    match args.format {
        FormatArg::Human => write_check_human(&mut out, &report)?,
        FormatArg::Json => {
            let mut v = report_json(&report);
            if let Some((l, r)) = &report.duals {
                v["lhs_dual"] = serde_json::json!([l.value.to_string(), l.deriv.to_string()]);
                v["rhs_dual"] = serde_json::json!([r.value.to_string(), r.deriv.to_string()]);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
        FormatArg::Csv => write_reports(&mut out, std::slice::from_ref(&report), Format::Csv, false)?,
    }
    Ok(match report.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inapplicable => EXIT_INAPPLICABLE,
    })
}

fn fixtures(args: FixturesArgs) -> Result<i32, CliError> {
    let workers = args.workers.map_or_else(default_workers, |w| w as usize);
    let cases = args.instances.cases(parse_family(&args.family)?, false)?;
    let reports = run_cases(&cases, workers, args.inject_rhs_fault);
    write_reports(open_out(&Some(args.out))?, &reports, Format::Json, args.ndjson)?;
    eprintln!("{}", summary_line(&reports));
    Ok(exit_for(&reports))
}

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Check(a) => check(a),
        Command::Fixtures(a) => fixtures(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_PASS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use harmonic_core::identities::ExampleId;

    fn parse(args: &[&str]) -> InstanceArgs {
        let mut full = vec!["harmonic-verify", "verify", "t"];
        full.extend_from_slice(args);
        match Cli::try_parse_from(full).unwrap().command {
            Command::Verify(v) => v.instances,
            _ => unreachable!(),
        }
    }

    #[test]
    fn case_counts() {
        let a = parse(&["--m", "1", "--n-max", "2", "--p-max", "1"]);
        assert_eq!(a.cases(Family::Theorem, false).unwrap().len(), 5 * 3 * 16);
        let a = parse(&["--u-min", "-2", "--u-max", "2", "--n-min", "1", "--n-max", "5"]);
        assert_eq!(a.cases(Family::T, false).unwrap().len(), 4 * 5);
        let a = parse(&["--b", "1", "--c", "1", "--n", "3"]);
        assert_eq!(a.cases(Family::Example(ExampleId::B), false).unwrap().len(), 1);
        let a = parse(&["--n", "2", "--r", "2"]);
        assert_eq!(a.cases(Family::Deriv, true).unwrap().len(), 1);
        assert_eq!(a.cases(Family::Deriv, false).unwrap().len(), 2);
        let a = parse(&["--a", "1", "--p", "1/2,1/3,1/5,1/7", "--n", "3"]);
        assert_eq!(a.cases(Family::Whipple, false).unwrap().len(), 1);
        let a = parse(&["--count", "7", "--seed", "4"]);
        assert_eq!(a.cases(Family::Andrews, false).unwrap().len(), 7);
    }

    #[test]
    fn usage_errors() {
        let a = parse(&["--p", "0,0,0"]);
        assert!(matches!(a.cases(Family::Theorem, false), Err(CliError::Usage(_))));
        let a = parse(&["--d", "1"]);
        assert!(matches!(a.cases(Family::Example(ExampleId::A), false), Err(CliError::Usage(_))));
        let a = parse(&["--p", "1/0,1,1,1", "--a", "1"]);
        assert!(matches!(a.cases(Family::Whipple, false), Err(CliError::Usage(_))));
        assert!(Cli::try_parse_from(["harmonic-verify", "verify", "t", "--n", "1", "--n-max", "2"]).is_err());
        assert!(Cli::try_parse_from(["harmonic-verify", "verify", "t", "--workers", "0"]).is_err());
        assert!(Cli::try_parse_from(["harmonic-verify", "verify", "t", "--a", "1"]).is_err());
    }
}
