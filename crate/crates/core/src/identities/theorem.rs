//! The general harmonic number identity, the substituted identity it is
//! differentiated from, and its `m = 1, 2` specializations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::report::{Param, Report};
use super::Evaluator;
use crate::error::EvalError;
use crate::exact_arith::{pochhammer_ratio, Rational, Scalar};
use crate::hyperg::{eval_terminating_series, simplex_sum, SeriesSpec};

/// One instance `(m, v, n, P_1..P_{2m+2})` of the general identity.
///
/// The first `v` parameters enter as `T_s = 1 + P_s`, the rest as
/// `T_s = -n - P_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdentityInstance {
    m: usize,
    v: usize,
    n: usize,
    p: Vec<u64>,
}

impl IdentityInstance {
    pub fn new(m: usize, v: usize, n: usize, p: Vec<u64>) -> Result<Self, EvalError> {
        if m == 0 {
            return Err(EvalError::InvalidInstance("m must be positive".into()));
        }
        if p.len() != 2 * m + 2 {
            return Err(EvalError::InvalidInstance(format!(
                "m = {m} needs {} parameters, got {}",
                2 * m + 2,
                p.len()
            )));
        }
        if v > 2 * m + 2 {
            return Err(EvalError::InvalidInstance(format!(
                "v = {v} exceeds 2m+2 = {}",
                2 * m + 2
            )));
        }
        Ok(IdentityInstance { m, v, n, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &[u64] {
        &self.p
    }

    /// `T_1..T_{2m+2}`.
    pub fn t_values(&self) -> Vec<i64> {
        self.p
            .iter()
            .enumerate()
            .map(|(s, &p)| {
                if s < self.v {
                    1 + p as i64
                } else {
                    -(self.n as i64) - p as i64
                }
            })
            .collect()
    }

    pub(crate) fn params(&self) -> Vec<(&'static str, Param)> {
        vec![
            ("m", Param::Int(self.m as i64)),
            ("v", Param::Int(self.v as i64)),
            ("n", Param::Int(self.n as i64)),
            ("p", Param::Text(join(&self.p))),
        ]
    }
}

pub(crate) fn join(p: &[u64]) -> String {
    p.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl Evaluator {
    /// `Σ_k C(n,k)² Π_{s<=v} C(k+q_s,k)/C(n+q_s,k) Π_{s>v} C(n+q_s,k)/C(k+q_s,k)
    ///   · {1 + (n-2k)(2H_k - Σ_{s<=v} H_{k+q_s} + Σ_{s>v} H_{k+q_s})}`.
    ///
    /// The common left side of the general identity and all Chu-Donno type
    /// examples. Every binomial here is positive.
    pub fn weighted_harmonic_sum(&self, n: usize, v: usize, q: &[u64]) -> Rational {
        let mut total = Rational::zero();
        for k in 0..=n {
            let c = self.binomial_int(n as i64, k);
            let mut num = &c * &c;
            let mut den = BigInt::one();
            let mut h = self.harmonic(k) * Rational::from_integer(2.into());
            for (s, &qs) in q.iter().enumerate() {
                let qs = qs as usize;
                let low = self.binomial_int((k + qs) as i64, k);
                let high = self.binomial_int((n + qs) as i64, k);
                if s < v {
                    num *= low;
                    den *= high;
                    h -= self.harmonic(k + qs);
                } else {
                    num *= high;
                    den *= low;
                    h += self.harmonic(k + qs);
                }
            }
            let brace = Rational::one() + h * Rational::from_integer((n as i64 - 2 * k as i64).into());
            total += Rational::new(num, den) * brace;
        }
        total
    }

    /// Left side of the general identity.
    pub fn theorem_lhs(&self, inst: &IdentityInstance) -> Rational {
        self.weighted_harmonic_sum(inst.n, inst.v, &inst.p)
    }

    /// Right side of the general identity:
    /// `[-n, 1-n-T_{2m+1}-T_{2m+2}; 1-n-T_{2m+1}, 1-n-T_{2m+2}]_n` times the
    /// simplex multi-sum with `a = -n` and `P_s = T_s`.
    pub fn theorem_rhs(&self, inst: &IdentityInstance) -> Result<Rational, EvalError> {
        let t: Vec<Rational> = inst.t_values().into_iter().map(Rational::from_int).collect();
        let a = Rational::from_int(-(inst.n as i64));
        let prefactor = multi_sum_prefactor(&a, &a, &t, inst.n)?;
        Ok(prefactor * simplex_sum(&a, &t, inst.n)?)
    }

    /// Both sides of the identity obtained from the Andrews transformation by
    /// `a → -x-n`, `P_s → T_s`, evaluated at the scalar `x`:
    ///
    /// `Σ_k C(n,k)(x+n-2k) C(n+x,k)/C(k-x,k) Π_{s<=v} C(k+P_s,k)/C(x+n+P_s,k)
    ///   Π_{s>v} C(n+P_s,k)/C(-x+k+P_s,k)`
    ///
    /// and `x [-x-n, 1-x-n-T_{2m+1}-T_{2m+2}; 1-x-n-T_{2m+1}, 1-x-n-T_{2m+2}]_n`
    /// times the simplex multi-sum. At `x = seed_x()` the ε-parts are the two
    /// sides of the general identity.
    pub fn pre_identity_eval<S: Scalar>(
        &self,
        inst: &IdentityInstance,
        x: &S,
    ) -> Result<(S, S), EvalError> {
        Ok((self.pre_identity_lhs(inst, x)?, self.pre_identity_rhs(inst, x)?))
    }

    /// Left side of [`pre_identity_eval`](Self::pre_identity_eval).
    pub fn pre_identity_lhs<S: Scalar>(&self, inst: &IdentityInstance, x: &S) -> Result<S, EvalError> {
        let n = inst.n as i64;
        let factorials = self.factorials();
        let mut lhs = S::zero();
        for k in 0..=inst.n {
            let ki = k as i64;
            let mut num = S::from_rational(self.binomial(n, k))
                * x.shift(n - 2 * ki)
                * factorials.binomial_general(&x.shift(n), k);
            let mut den = factorials.binomial_general(&(-x.clone()).shift(ki), k);
            for (s, &p) in inst.p.iter().enumerate() {
                let p = p as i64;
                if s < inst.v {
                    num = num * S::from_rational(self.binomial(ki + p, k));
                    den = den * factorials.binomial_general(&x.shift(n + p), k);
                } else {
                    num = num * S::from_rational(self.binomial(n + p, k));
                    den = den * factorials.binomial_general(&(-x.clone()).shift(ki + p), k);
                }
            }
            if den.value().is_zero() {
                return Err(EvalError::zero_factor(format!(
                    "binomial denominator vanishes at k = {k}"
                )));
            }
            lhs = lhs + num.try_div(&den)?;
        }
        Ok(lhs)
    }

    /// Right side of [`pre_identity_eval`](Self::pre_identity_eval).
    pub fn pre_identity_rhs<S: Scalar>(&self, inst: &IdentityInstance, x: &S) -> Result<S, EvalError> {
        let t: Vec<S> = inst.t_values().into_iter().map(S::from_int).collect();
        let a = (-x.clone()).shift(-(inst.n as i64));
        let prefactor = multi_sum_prefactor(&a, &a, &t, inst.n)?;
        Ok(x.clone() * prefactor * simplex_sum(&a, &t, inst.n)?)
    }

    /// The single-sum `₄F₃` forms for `m = 1` and `m = 2`.
    ///
    /// `m = 1`: `[-n, 1-n-T_3-T_4; 1-n-T_3, 1-n-T_4]_n ·
    /// ₄F₃[-n, T_3, T_4, 1-n-T_1-T_2; T_3+T_4, 1-n-T_1, 1-n-T_2]`.
    ///
    /// `m = 2`: `[-n, 1-n-T_5-T_6; 1-n-T_5, 1-n-T_6]_n Σ_i
    /// [-n, T_5, T_6, 1-n-T_3-T_4; 1, T_5+T_6, 1-n-T_3, 1-n-T_4]_i ·
    /// ₄F₃[-i, T_3, T_4, 1-n-T_1-T_2; T_3+T_4+n-i, 1-n-T_1, 1-n-T_2]`.
    pub fn proposition_rhs(&self, inst: &IdentityInstance) -> Result<Rational, EvalError> {
        let n = inst.n as i64;
        let t: Vec<Rational> = inst.t_values().into_iter().map(Rational::from_int).collect();
        let one_minus_n = Rational::from_int(1 - n);
        let inner = |top: i64, shift: i64| -> Result<Rational, EvalError> {
            let spec = SeriesSpec::unit(
                vec![
                    Rational::from_int(-top),
                    t[2].clone(),
                    t[3].clone(),
                    &one_minus_n - &t[0] - &t[1],
                ],
                vec![
                    &t[2] + &t[3] + Rational::from_int(shift),
                    &one_minus_n - &t[0],
                    &one_minus_n - &t[1],
                ],
                top as usize,
            )?;
            eval_terminating_series(&spec)
        };
        let minus_n = Rational::from_int(-n);
        match inst.m {
            1 => {
                let prefactor = multi_sum_prefactor(&minus_n, &minus_n, &t, inst.n)?;
                Ok(prefactor * inner(n, 0)?)
            }
            2 => {
                let prefactor = multi_sum_prefactor(&minus_n, &minus_n, &t, inst.n)?;
                let mut sum = Rational::zero();
                for i in 0..=inst.n {
                    let outer = pochhammer_ratio(
                        &[
                            minus_n.clone(),
                            t[4].clone(),
                            t[5].clone(),
                            &one_minus_n - &t[2] - &t[3],
                        ],
                        &[
                            Rational::one(),
                            &t[4] + &t[5],
                            &one_minus_n - &t[2],
                            &one_minus_n - &t[3],
                        ],
                        i,
                    )
                    .map_err(|e| e.in_context(format_args!("outer term i={i}")))?;
                    let ii = i as i64;
                    sum += outer
                        * inner(ii, n - ii).map_err(|e| e.in_context(format_args!("inner 4F3 at i={i}")))?;
                }
                Ok(prefactor * sum)
            }
            m => Err(EvalError::InvalidInstance(format!(
                "the 4F3 proposition forms exist for m = 1, 2 only, got m = {m}"
            ))),
        }
    }

    /// The `m = 1` identity with every `P_s` replaced by `n·P_s`; both
    /// sides evaluated independently.
    pub fn corollary_instance(&self, v: usize, n: usize, p: [u64; 4]) -> Report {
        let scaled: Vec<u64> = p.iter().map(|&x| x * n as u64).collect();
        let params = corollary_params(v, n, &p);
        match IdentityInstance::new(1, v, n, scaled) {
            Ok(inst) => Report::from_sides(
                "corollary",
                params,
                Ok(self.theorem_lhs(&inst)),
                self.proposition_rhs(&inst),
            ),
            Err(e) => Report::from_sides("corollary", params, Err(e.clone()), Err(e)),
        }
    }
}

pub(crate) fn corollary_params(v: usize, n: usize, p: &[u64]) -> Vec<(&'static str, Param)> {
    vec![
        ("v", Param::Int(v as i64)),
        ("n", Param::Int(n as i64)),
        ("p", Param::Text(join(p))),
    ]
}

/// `[head, 1+a-T_{2m+1}-T_{2m+2}; 1+a-T_{2m+1}, 1+a-T_{2m+2}]_n`.
fn multi_sum_prefactor<S: Scalar>(head: &S, a: &S, t: &[S], n: usize) -> Result<S, EvalError> {
    let a1 = a.shift(1);
    let last = &t[t.len() - 2];
    let after = &t[t.len() - 1];
    pochhammer_ratio(
        &[head.clone(), a1.clone() - last.clone() - after.clone()],
        &[a1.clone() - last.clone(), a1 - after.clone()],
        n,
    )
    .map_err(|e| e.in_context("prefactor"))
}
