//! Acceptance suite: nine criteria, exact equality throughout. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::Command;
use std::time::Instant;

use harmonic_core::dual_diff::check_binomial_derivatives;
use harmonic_core::exact_arith::{int, ratio};
use harmonic_core::identities::{Case, ExampleId, IdentityRange, Sweep, TSpec};
use harmonic_core::{seed_x, Evaluator, Rational, Report, Verdict};
use harmonic_verify::generate::{random_cases, RandomSpec, DENOMINATOR_PRIMES};
use harmonic_verify::runner::{default_workers, run_cases};

type Outcome = Result<String, String>;

fn tally(reports: &[Report]) -> (usize, usize, usize) {
    let count = |v| reports.iter().filter(|r| r.verdict == v).count();
    (count(Verdict::Pass), count(Verdict::Inapplicable), count(Verdict::Fail))
}

fn first_failure(reports: &[Report]) -> Option<String> {
    reports.iter().find(|r| r.verdict == Verdict::Fail).map(|r| r.to_string())
}

/// Sweep outcome: zero failures and at least one pass.
fn sweep_outcome(reports: &[Report]) -> Outcome {
    let (pass, inapplicable, fail) = tally(reports);
    let text = format!("{} instances, {pass} pass, {inapplicable} inapplicable, {fail} fail", reports.len());
    match first_failure(reports) {
        Some(f) => Err(format!("{text}; first failure: {f}")),
        None if pass == 0 => Err(format!("{text}; nothing verified")),
        None => Ok(text),
    }
}

// Independent oracles, written without the library's caches or helpers.

fn binomial_oracle(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

fn harmonic_oracle(n: u64) -> Rational {
    (1..=n).fold(int(0), |acc, k| acc + ratio(1, k as i64))
}

/// `Σ_k C(n,k)^u (1 + u(n-2k) H_k)` by direct summation.
fn t_oracle(u: i64, n: u64) -> Rational {
    let mut total = int(0);
    for k in 0..=n {
        let c = int(binomial_oracle(n, k));
        let mut power = int(1);
        for _ in 0..u.unsigned_abs() {
            power *= &c;
        }
        if u < 0 {
            power = int(1) / power;
        }
        total += power * (int(1) + int(u * (n as i64 - 2 * k as i64)) * harmonic_oracle(k));
    }
    total
}

/// `D C(n+x, r)` as the derivative of the polynomial `Π (n+x-j) / r!` at 0,
/// by the product rule over its linear factors.
fn plus_derivative_oracle(n: i64, r: i64) -> Rational {
    let mut total = int(0);
    for skip in 0..r {
        let mut term = int(1);
        for j in 0..r {
            if j != skip {
                term *= int(n - j);
            }
        }
        total += term;
    }
    let fact = (1..=r).fold(int(1), |acc, j| acc * int(j));
    total / fact
}

fn criterion_1() -> Outcome {
    let mut checks = 0;
    for n in 0..=30usize {
        for r in 0..=n {
            if !check_binomial_derivatives(n, r) {
                return Err(format!("dual and closed routes differ at n={n} r={r}"));
            }
            checks += 1;
        }
    }
    // both routes against the product rule, through the deriv family
    let cases = Sweep::Deriv { n: 0..=30 }.cases();
    let reports = run_cases(&cases, default_workers(), false);
    for r in &reports {
        let n = r.param("n").unwrap().to_string().parse::<i64>().unwrap();
        let k = r.param("r").unwrap().to_string().parse::<i64>().unwrap();
        let expected = match r.param("sign").unwrap().to_string().as_str() {
            "plus" => plus_derivative_oracle(n, k),
            _ => -plus_derivative_oracle(n, k),
        };
        if r.verdict != Verdict::Pass || r.lhs.as_ref() != Some(&expected) {
            return Err(format!("oracle mismatch: {r} (expected {expected})"));
        }
    }
    Ok(format!("{checks} (n, r) pairs, {} signed reports match the product rule", reports.len()))
}

fn rational_in_range(x: &Rational) -> bool {
    let d: i64 = x.denom().try_into().unwrap_or(0);
    let p: i64 = x.numer().try_into().unwrap_or(i64::MAX);
    (d == 1 || DENOMINATOR_PRIMES.contains(&d)) && p.abs() <= 3
}

fn random_family(count: usize, andrews: bool, seed: u64) -> Outcome {
    let spec = RandomSpec { seed, count, n: 0..=6, m: 1..=3, numerator_bound: 3 };
    let generated = random_cases(&spec, andrews);
    if generated.cases.len() != count {
        return Err(format!("only {} applicable instances generated", generated.cases.len()));
    }
    for case in &generated.cases {
        let ok = match case {
            Case::Whipple { a, p, n } => *n <= 6 && std::iter::once(a).chain(p).all(rational_in_range),
            Case::Andrews(inst) => {
                inst.n <= 6 && (1..=3).contains(&inst.m) && std::iter::once(&inst.a).chain(&inst.p).all(rational_in_range)
            }
            _ => false,
        };
        if !ok {
            return Err(format!("generated instance out of range: {case:?}"));
        }
    }
    let reports = run_cases(&generated.cases, default_workers(), false);
    let outcome = sweep_outcome(&reports)?;
    if tally(&reports).0 != count {
        return Err(format!("{outcome}; expected {count} passes"));
    }
    Ok(format!("{outcome}, {} draws skipped as inapplicable", generated.skipped))
}

fn criterion_2() -> Outcome {
    random_family(50, false, 2024)
}

fn criterion_3() -> Outcome {
    let out = random_family(100, true, 2025)?;
    let spec = RandomSpec { seed: 2025, count: 100, ..RandomSpec::default() };
    let depths: Vec<usize> = random_cases(&spec, true)
        .cases
        .iter()
        .filter_map(|c| match c {
            Case::Andrews(i) => Some(i.m),
            _ => None,
        })
        .collect();
    for m in 1..=3 {
        if !depths.contains(&m) {
            return Err(format!("no instance with m={m}"));
        }
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let cases = Sweep::Theorem(IdentityRange { m: 1..=2, v: None, n: 0..=6, p_max: 2 }).cases();
    let expected = 5 * 7 * 81 + 7 * 7 * 729;
    if cases.len() != expected {
        return Err(format!("sweep has {} instances, expected {expected}", cases.len()));
    }
    sweep_outcome(&run_cases(&cases, default_workers(), false))
}

fn criterion_5() -> Outcome {
    let range = IdentityRange { m: 1..=2, v: None, n: 0..=5, p_max: 2 };
    let theorem = run_cases(&Sweep::Theorem(range.clone()).cases(), default_workers(), false);
    let pre = run_cases(&Sweep::PreDerivative(range).cases(), default_workers(), false);
    let mut replayed = 0;
    for (t, p) in theorem.iter().zip(&pre) {
        if t.params != p.params {
            return Err("sweeps out of step".into());
        }
        match (p.verdict, &p.duals) {
            (Verdict::Inapplicable, _) => {
                if t.verdict != Verdict::Inapplicable {
                    return Err(format!("only the derivation is inapplicable: {p}"));
                }
            }
            (Verdict::Pass, Some((l, r))) => {
                let zero = int(0);
                if l.value != zero || r.value != zero || Some(&l.deriv) != t.lhs.as_ref() || Some(&r.deriv) != t.rhs.as_ref() {
                    return Err(format!("derivation {p} does not reproduce {t}"));
                }
                replayed += 1;
            }
            _ => return Err(format!("derivation failed: {p}")),
        }
    }
    // spot check directly against the dual evaluators
    let ev = Evaluator::new();
    let inst = harmonic_core::identities::IdentityInstance::new(2, 3, 5, vec![2, 0, 1, 2, 0, 1]).unwrap();
    let (l, r) = ev.pre_identity_eval(&inst, &seed_x()).map_err(|e| e.to_string())?;
    if l.deriv != ev.theorem_lhs(&inst) || Ok(r.deriv) != ev.theorem_rhs(&inst) {
        return Err("spot instance differs".into());
    }
    Ok(format!("{replayed} of {} instances replayed exactly, rest inapplicable", pre.len()))
}

fn criterion_6() -> Outcome {
    let ev = Evaluator::new();
    for (u, n, value) in [(4, 2, 6), (8, 1, -6), (-3, 1, 5), (-2, 1, 4)] {
        let spec = TSpec::new(u, n).unwrap();
        let oracle = t_oracle(u, n as u64);
        if oracle != int(value) || ev.t_closed(&spec) != oracle || ev.t_direct(&spec) != oracle {
            return Err(format!("spot value T_{n}^({u}) = {value} not reproduced"));
        }
    }
    let cases = Sweep::T { u: -8..=12, n: 0..=12 }.cases();
    let reports = run_cases(&cases, default_workers(), false);
    for r in &reports {
        let u = r.param("u").unwrap().to_string().parse().unwrap();
        let n = r.param("n").unwrap().to_string().parse().unwrap();
        if r.lhs.as_ref() != Some(&t_oracle(u, n)) {
            return Err(format!("direct sum disagrees with oracle: {r}"));
        }
    }
    if reports.len() != 20 * 13 {
        return Err(format!("{} instances", reports.len()));
    }
    let out = sweep_outcome(&reports)?;
    if tally(&reports).0 != reports.len() {
        return Err(format!("{out}; every T instance must pass"));
    }
    Ok(format!("{out}, 4 spot values"))
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    let mut total = 0;
    let mut inapplicable = 0;
    for id in ExampleId::ALL {
        let cases = Sweep::Example { id, params: vec![0..=2; id.arity()], n: 0..=4 }.cases();
        let reports = run_cases(&cases, default_workers(), false);
        sweep_outcome(&reports).map_err(|e| format!("example {}: {e}", id.letter()))?;
        let (_, i, _) = tally(&reports);
        if i > 0 {
            lines.push(format!("{}:{i}", id.letter()));
        }
        total += reports.len();
        inapplicable += i;
    }
    Ok(format!(
        "15 examples, {total} instances, 0 fail, {inapplicable} inapplicable ({})",
        lines.join(" ")
    ))
}

fn criterion_8() -> Outcome {
    let ev = Evaluator::new();
    for n in 0..=20 {
        let pairs = [
            ("c", ev.prop_c(1, n), ev.har_g(n), 5),
            ("d", ev.prop_d(1, n), ev.har_h(n), 6),
            ("e", ev.prop_e(1, n), ev.har_b(n), -1),
            ("f", ev.prop_f(1, n), ev.har_a(n), -2),
        ];
        for (which, prop, closed, u) in pairs {
            if prop != closed || closed != t_oracle(u, n as u64) {
                return Err(format!("reduction {which} fails at n={n}"));
            }
        }
    }
    Ok("4 reductions at m=1 for n <= 20, each equal to direct summation".into())
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_harmonic-verify"))
        .args(args)
        .output()
        .expect("spawn")
}

fn criterion_9() -> Outcome {
    let dir = std::env::temp_dir().join(format!("harmonic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let result = cli_contract(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn cli_contract(dir: &std::path::Path) -> Outcome {
    let sweep = ["verify", "whipple", "--count", "30", "--seed", "9", "--format", "json"];
    let a = cli(&[&sweep[..], &["--workers", "1"]].concat());
    let b = cli(&[&sweep[..], &["--workers", "3"]].concat());
    let c = cli(&[&sweep[..], &["--workers", "3"]].concat());
    if a.stdout.is_empty() || a.stdout != b.stdout || b.stdout != c.stdout {
        return Err("same seed produced different output".into());
    }
    let statuses = [
        (vec!["verify", "t", "--u-min", "-2", "--u-max", "3", "--n-max", "4"], 0),
        (vec!["verify", "t", "--u-min", "-2", "--u-max", "3", "--n-max", "4", "--inject-rhs-fault"], 1),
        (vec!["verify", "t", "--u", "x"], 2),
        (vec!["check", "theorem", "--m", "1", "--v", "3", "--n", "1", "--p", "0,0,0,0"], 3),
        (vec!["check", "t", "--u", "4", "--n", "2"], 0),
        (vec!["check", "t", "--u", "4", "--n", "2", "--inject-rhs-fault"], 1),
    ];
    for (args, want) in &statuses {
        let got = cli(args).status.code();
        if got != Some(*want) {
            return Err(format!("{args:?} exited {got:?}, expected {want}"));
        }
    }
    let mut records = 0;
    for (name, args) in [
        ("theorem", vec!["fixtures", "theorem", "--m-min", "1", "--m-max", "2", "--n-max", "3"]),
        ("andrews", vec!["fixtures", "andrews", "--count", "20", "--seed", "4"]),
        ("example", vec!["fixtures", "example:g", "--n-max", "3"]),
    ] {
        let path = dir.join(format!("{name}.json"));
        let p = path.to_str().unwrap();
        let out = cli(&[&args[..], &["--out", p]].concat());
        if out.status.code() != Some(0) {
            return Err(format!("fixture export {name} failed"));
        }
        let first = std::fs::read(&path).map_err(|e| e.to_string())?;
        cli(&[&args[..], &["--out", p]].concat());
        if std::fs::read(&path).map_err(|e| e.to_string())? != first {
            return Err(format!("fixture export {name} not byte-identical"));
        }
        let parsed: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        records += parsed.as_array().map_or(0, Vec::len);
        if cli(&["verify", "--fixtures", p]).status.code() != Some(0) {
            return Err(format!("fixtures {name} did not re-verify"));
        }
        if cli(&["verify", "--fixtures", p, "--inject-rhs-fault"]).status.code() != Some(1) {
            return Err(format!("corrupted re-verification of {name} did not fail"));
        }
    }
    Ok(format!(
        "determinism across 1/3 workers, {} exit statuses, {records} fixture records round-tripped",
        statuses.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("binomial derivatives, 0 <= r <= n <= 30", criterion_1),
        ("Whipple transformation, 50 random instances", criterion_2),
        ("Andrews transformation, 100 random instances, m <= 3", criterion_3),
        ("general identity sweep, m <= 2, n <= 6, P <= 2", criterion_4),
        ("derivation oracle, m <= 2, n <= 5, P <= 2", criterion_5),
        ("T family, u in [-8, 12] \\ {0}, n <= 12", criterion_6),
        ("examples a-o, parameters <= 2, n <= 4", criterion_7),
        ("reductions at m = 1, n <= 20", criterion_8),
        ("CLI contract", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
