//! Terminating hypergeometric series at unit argument, the Andrews
//! transformation of a `₂ₘ₊₅F₂ₘ₊₄` series into a nested multi-sum, and its
//! `m = 1` case (Whipple's `₇F₆ → ₄F₃` transformation).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::EvalError;
use crate::exact_arith::{pochhammer_ratio, ratio, Rational, Scalar};
use crate::identities::report::{Param, Report};

/// A terminating series `Σ_{k=0..terms} Π(a)_k / (k! Π(b)_k) z^k`.
///
/// The `k!` is implicit: `denom_params` lists only the `b`'s.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec<S> {
    pub numer_params: Vec<S>,
    pub denom_params: Vec<S>,
    pub argument: S,
    pub terms: usize,
}

impl<S: Scalar> SeriesSpec<S> {
    /// Checks that some numerator parameter equals `-terms`.
    pub fn new(
        numer_params: Vec<S>,
        denom_params: Vec<S>,
        argument: S,
        terms: usize,
    ) -> Result<Self, EvalError> {
        let stop = S::from_int(-(terms as i64));
        if !numer_params.contains(&stop) {
            return Err(EvalError::InvalidInstance(format!(
                "no numerator parameter equals -{terms}"
            )));
        }
        Ok(SeriesSpec {
            numer_params,
            denom_params,
            argument,
            terms,
        })
    }

    /// Series at `z = 1`.
    pub fn unit(numer_params: Vec<S>, denom_params: Vec<S>, terms: usize) -> Result<Self, EvalError> {
        Self::new(numer_params, denom_params, S::one(), terms)
    }
}

/// Sum a terminating series by successive term ratios.
pub fn eval_terminating_series<S: Scalar>(spec: &SeriesSpec<S>) -> Result<S, EvalError> {
    let mut term = S::one();
    let mut sum = S::one();
    for k in 0..spec.terms as i64 {
        let mut num = spec.argument.clone();
        for a in &spec.numer_params {
            num = num * a.shift(k);
        }
        let mut den = S::from_int(k + 1);
        for b in &spec.denom_params {
            let factor = b.shift(k);
            if factor.value().is_zero() {
                return Err(EvalError::zero_factor(format!(
                    "series denominator ({b})_{} has a zero factor at {b} + {k}",
                    k + 1
                )));
            }
            den = den * factor;
        }
        term = (term * num).try_div(&den)?;
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Parameters of one Andrews transformation instance: `a`, `P_1..P_{2m+2}`,
/// the truncation `n`, and the depth `m >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AndrewsInstance<S = Rational> {
    pub a: S,
    pub p: Vec<S>,
    pub n: usize,
    pub m: usize,
}

impl<S: Scalar> AndrewsInstance<S> {
    pub fn new(a: S, p: Vec<S>, n: usize) -> Result<Self, EvalError> {
        if p.len() < 4 || p.len() % 2 != 0 {
            return Err(EvalError::InvalidInstance(format!(
                "need 2m+2 parameters with m >= 1, got {}",
                p.len()
            )));
        }
        let m = (p.len() - 2) / 2;
        Ok(AndrewsInstance { a, p, n, m })
    }
}

/// Left side: the very-well-poised `₂ₘ₊₅F₂ₘ₊₄` series
/// `[a, 1+a/2, P_s, -n; a/2, 1+a-P_s, 1+a+n]` at `z = 1`.
pub fn andrews_lhs<S: Scalar>(inst: &AndrewsInstance<S>) -> Result<S, EvalError> {
    let a = &inst.a;
    let half_a = a.scale(&ratio(1, 2));
    let mut numer = vec![a.clone(), half_a.shift(1)];
    numer.extend(inst.p.iter().cloned());
    numer.push(S::from_int(-(inst.n as i64)));
    let mut denom = vec![half_a];
    denom.extend(inst.p.iter().map(|p| a.shift(1) - p.clone()));
    denom.push(a.shift(1 + inst.n as i64));
    eval_terminating_series(&SeriesSpec::unit(numer, denom, inst.n)?)
}

/// Right side: `[1+a, 1+a-P_{2m+1}-P_{2m+2}; 1+a-P_{2m+1}, 1+a-P_{2m+2}]_n`
/// times [`simplex_sum`].
pub fn andrews_rhs<S: Scalar>(inst: &AndrewsInstance<S>) -> Result<S, EvalError> {
    let a1 = inst.a.shift(1);
    let last = &inst.p[2 * inst.m];
    let after = &inst.p[2 * inst.m + 1];
    let prefactor = pochhammer_ratio(
        &[a1.clone(), a1.clone() - last.clone() - after.clone()],
        &[a1.clone() - last.clone(), a1 - after.clone()],
        inst.n,
    )
    .map_err(|e| e.in_context("prefactor"))?;
    Ok(prefactor * simplex_sum(&inst.a, &inst.p, inst.n)?)
}

/// Numerator and denominator parameters of bracket `r` (1-based) with
/// `i_{r+1} = upper`.
fn bracket_params<S: Scalar>(a: &S, p: &[S], r: usize, upper: usize) -> ([S; 4], [S; 4]) {
    let (p_lo, p_lo2) = (&p[2 * r - 2], &p[2 * r - 1]);
    let (p_hi, p_hi2) = (&p[2 * r], &p[2 * r + 1]);
    let a1 = a.shift(1);
    let upper = upper as i64;
    let numer = [
        S::from_int(-upper),
        p_hi.clone(),
        p_hi2.clone(),
        a1.clone() - p_lo.clone() - p_lo2.clone(),
    ];
    let denom = [
        S::one(),
        (p_hi.clone() + p_hi2.clone() - a.clone()).shift(-upper),
        a1.clone() - p_lo.clone(),
        a1 - p_lo2.clone(),
    ];
    (numer, denom)
}

/// Bracket `r` (1-based) of the multi-sum at `i_r = lower`, `i_{r+1} = upper`:
///
/// `[-i_{r+1}, P_{2r+1}, P_{2r+2}, 1+a-P_{2r-1}-P_{2r};
///   1, P_{2r+1}+P_{2r+2}-a-i_{r+1}, 1+a-P_{2r-1}, 1+a-P_{2r}]_{i_r}`.
pub fn simplex_bracket<S: Scalar>(
    a: &S,
    p: &[S],
    r: usize,
    lower: usize,
    upper: usize,
) -> Result<S, EvalError> {
    let (numer, denom) = bracket_params(a, p, r, upper);
    pochhammer_ratio(&numer, &denom, lower)
}

/// `simplex_bracket(a, p, r, i, upper)` for every `i` in `0..=upper`, each
/// obtained from the previous one by a single term ratio.
fn bracket_row<S: Scalar>(a: &S, p: &[S], r: usize, upper: usize) -> Result<Vec<S>, EvalError> {
    let (numer, denom) = bracket_params(a, p, r, upper);
    let mut row = Vec::with_capacity(upper + 1);
    let mut current = S::one();
    row.push(current.clone());
    for i in 0..upper as i64 {
        let mut num = S::one();
        let mut den = S::one();
        for (x, y) in numer.iter().zip(&denom) {
            let factor = y.shift(i);
            if factor.value().is_zero() {
                return Err(EvalError::zero_factor(format!(
                    "bracket r={r}, i_r={}, i_r+1={upper}: ({y})_{} has a zero factor at {y} + {i}",
                    i + 1,
                    i + 1
                )));
            }
            num = num * x.shift(i);
            den = den * factor;
        }
        current = (current * num).try_div(&den)?;
        row.push(current.clone());
    }
    Ok(row)
}

/// `Σ_{0 <= i_1 <= ... <= i_m <= n} Π_{r=1..m} bracket_r(i_r, i_{r+1})` with
/// `i_{m+1} = n` and `m = (p.len() - 2) / 2`.
///
/// Evaluated as a chain: `g_r(j) = Σ_{i<=j} bracket_r(i, j) g_{r-1}(i)`,
/// `g_0 = 1`, result `g_m(n)`. Every `(i_r, i_{r+1})` pair of the simplex is
/// visited, so a zero factor anywhere on it is reported.
pub fn simplex_sum<S: Scalar>(a: &S, p: &[S], n: usize) -> Result<S, EvalError> {
    let m = (p.len() - 2) / 2;
    let mut g: Vec<S> = vec![S::one(); n + 1];
    for r in 1..=m {
        let uppers = if r == m { n..=n } else { 0..=n };
        let mut next = vec![S::zero(); n + 1];
        for j in uppers {
            let row = bracket_row(a, p, r, j)?;
            next[j] = row
                .into_iter()
                .zip(&g)
                .fold(S::zero(), |acc, (b, gi)| acc + b * gi.clone());
        }
        g = next;
    }
    Ok(g.swap_remove(n))
}

/// Same value as [`simplex_sum`], enumerating every simplex point with an
/// odometer and multiplying the `m` brackets afresh. Reference evaluator.
pub fn simplex_sum_naive<S: Scalar>(a: &S, p: &[S], n: usize) -> Result<S, EvalError> {
    let m = (p.len() - 2) / 2;
    let mut total = S::zero();
    for idx in SimplexPoints::new(m, n) {
        let mut term = S::one();
        for r in 1..=m {
            let upper = if r == m { n } else { idx[r] };
            let b = simplex_bracket(a, p, r, idx[r - 1], upper)
                .map_err(|e| e.in_context(format_args!("simplex point {idx:?}, bracket r={r}")))?;
            term = term * b;
        }
        total = total + term;
    }
    Ok(total)
}

/// Odometer over `0 <= i_1 <= ... <= i_m <= n`, `i_1` turning fastest.
/// Yields a single empty point when `m = 0`.
#[derive(Clone, Debug)]
pub struct SimplexPoints {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl SimplexPoints {
    pub fn new(m: usize, n: usize) -> Self {
        SimplexPoints {
            idx: vec![0; m],
            n,
            done: false,
        }
    }
}

impl Iterator for SimplexPoints {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let m = self.idx.len();
        let mut r = 0;
        loop {
            if r == m {
                self.done = true;
                break;
            }
            let bound = if r + 1 == m { self.n } else { self.idx[r + 1] };
            if self.idx[r] < bound {
                self.idx[r] += 1;
                for lower in self.idx.iter_mut().take(r) {
                    *lower = 0;
                }
                break;
            }
            r += 1;
        }
        Some(out)
    }
}

/// Whipple's `₇F₆` side; the Andrews left side at `m = 1`.
pub fn whipple_lhs<S: Scalar>(a: &S, p: &[S; 4], n: usize) -> Result<S, EvalError> {
    andrews_lhs(&AndrewsInstance::new(a.clone(), p.to_vec(), n)?)
}

/// `[1+a, 1+a-P_3-P_4; 1+a-P_3, 1+a-P_4]_n ·
/// ₄F₃[-n, P_3, P_4, 1+a-P_1-P_2; P_3+P_4-a-n, 1+a-P_1, 1+a-P_2]`,
/// evaluated as a plain series.
pub fn whipple_rhs<S: Scalar>(a: &S, p: &[S; 4], n: usize) -> Result<S, EvalError> {
    let a1 = a.shift(1);
    let [p1, p2, p3, p4] = p.clone();
    let prefactor = pochhammer_ratio(
        &[a1.clone(), a1.clone() - p3.clone() - p4.clone()],
        &[a1.clone() - p3.clone(), a1.clone() - p4.clone()],
        n,
    )
    .map_err(|e| e.in_context("prefactor"))?;
    let series = SeriesSpec::unit(
        vec![
            S::from_int(-(n as i64)),
            p3.clone(),
            p4.clone(),
            a1.clone() - p1.clone() - p2.clone(),
        ],
        vec![
            (p3 + p4 - a.clone()).shift(-(n as i64)),
            a1.clone() - p1,
            a1 - p2,
        ],
        n,
    )?;
    Ok(prefactor * eval_terminating_series(&series)?)
}

/// Evaluate both sides of Whipple's transformation independently.
pub fn whipple_verify(a: &Rational, p: &[Rational; 4], n: usize) -> Report {
    Report::from_sides(
        "whipple",
        whipple_params(a, p, n),
        whipple_lhs(a, p, n),
        whipple_rhs(a, p, n),
    )
}

pub(crate) fn whipple_params(a: &Rational, p: &[Rational], n: usize) -> Vec<(&'static str, Param)> {
    vec![
        ("a", Param::Text(a.to_string())),
        ("p", Param::Text(join_rationals(p))),
        ("n", Param::Int(n as i64)),
    ]
}

pub(crate) fn join_rationals(p: &[Rational]) -> alloc::string::String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Convenience: are both sides of the Andrews transformation applicable and
/// equal?
pub fn andrews_holds(inst: &AndrewsInstance<Rational>) -> Result<bool, EvalError> {
    Ok(andrews_lhs(inst)? == andrews_rhs(inst)?)
}
