//! Chu-Donno type identities (examples a-o), with their closed-form right sides.
//!
//! Examples a-h take parameters `(b, c)` or `(b, c, d, e)` that enter
//! multiplied by `n`; examples i-o take six parameters used as they are.
//! All left sides share [`Evaluator::weighted_harmonic_sum`]; the right
//! sides are written out one by one.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::report::{Param, Report};
use super::{sign, Evaluator};
use crate::error::EvalError;
use crate::exact_arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExampleId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    O,
}

const NAMES: [&str; 6] = ["b", "c", "d", "e", "f", "g"];

impl ExampleId {
    pub const ALL: [ExampleId; 15] = [
        ExampleId::A,
        ExampleId::B,
        ExampleId::C,
        ExampleId::D,
        ExampleId::E,
        ExampleId::F,
        ExampleId::G,
        ExampleId::H,
        ExampleId::I,
        ExampleId::J,
        ExampleId::K,
        ExampleId::L,
        ExampleId::M,
        ExampleId::N,
        ExampleId::O,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<ExampleId> {
        let idx = (c as u32).checked_sub('a' as u32)? as usize;
        Self::ALL.get(idx).copied()
    }

    /// Number of parameters: 2, 4 or 6.
    pub fn arity(self) -> usize {
        match self as u8 {
            0..=2 => 2,
            3..=7 => 4,
            _ => 6,
        }
    }

    /// Names of the parameters, `b, c, ...`.
    pub fn param_names(self) -> &'static [&'static str] {
        &NAMES[..self.arity()]
    }

    /// How many parameters enter with a minus sign in the harmonic part
    /// (the `C(k+·,k)/C(n+·,k)` weights).
    pub fn lower_count(self) -> usize {
        match self {
            ExampleId::A => 2,
            ExampleId::B => 1,
            ExampleId::C => 0,
            ExampleId::D => 4,
            ExampleId::E => 3,
            ExampleId::F => 2,
            ExampleId::G => 1,
            ExampleId::H => 0,
            ExampleId::I => 6,
            ExampleId::J => 5,
            ExampleId::K => 4,
            ExampleId::L => 3,
            ExampleId::M => 2,
            ExampleId::N => 1,
            ExampleId::O => 0,
        }
    }

    /// Examples a-h scale their parameters by `n`.
    pub fn scales_by_n(self) -> bool {
        (self as u8) < 8
    }

    pub fn family_name(self) -> alloc::string::String {
        alloc::format!("example:{}", self.letter())
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

pub(crate) fn example_params(id: ExampleId, params: &[u64], n: usize) -> Vec<(&'static str, Param)> {
    let mut out: Vec<(&'static str, Param)> = id
        .param_names()
        .iter()
        .zip(params)
        .map(|(name, &v)| (*name, Param::Int(v as i64)))
        .collect();
    out.push(("n", Param::Int(n as i64)));
    out
}

impl Evaluator {
    /// Left side of example `id`.
    pub fn example_lhs(&self, id: ExampleId, params: &[u64], n: usize) -> Result<Rational, EvalError> {
        check_arity(id, params)?;
        let q: Vec<u64> = if id.scales_by_n() {
            params.iter().map(|p| p * n as u64).collect()
        } else {
            params.to_vec()
        };
        Ok(self.weighted_harmonic_sum(n, id.lower_count(), &q))
    }

    /// Right side of example `id` in closed form.
    pub fn example_rhs(&self, id: ExampleId, params: &[u64], n: usize) -> Result<Rational, EvalError> {
        check_arity(id, params)?;
        let nn = n as i64;
        let scale = if id.scales_by_n() { nn } else { 1 };
        let p: Vec<i64> = params.iter().map(|&x| x as i64 * scale).collect();
        let (b, c) = (p[0], p[1]);
        let (d, e) = (p.get(2).copied().unwrap_or(0), p.get(3).copied().unwrap_or(0));
        let (f, g) = (p.get(4).copied().unwrap_or(0), p.get(5).copied().unwrap_or(0));
        let cb = |a: i64, k: usize| self.binomial(a, k);
        let br = |num: &[(i64, usize)], den: &[(i64, usize)]| self.binomial_ratio(num, den);
        let base = [(n as i64 + b, n), (nn + c, n)];

        // C(1+b+c+n, n) / (C(n+b, n) C(n+c, n))
        let pref_plus = || br(&[(1 + b + c + nn, n)], &base);
        // (-1)^n C(b-c, n) / (...)
        let pref_diff = || Ok(sign(n) * br(&[(b - c, n)], &base)?);
        // (-1)^n C(2n+b+c, n) / (...)
        let pref_two = || Ok(sign(n) * br(&[(2 * nn + b + c, n)], &base)?);

        let sum = |body: &dyn Fn(usize) -> Result<Rational, EvalError>| -> Result<Rational, EvalError> {
            let mut s = Rational::zero();
            for i in 0..=n {
                s += body(i).map_err(|err| err.in_context(alloc::format!("summand i={i}")))?;
            }
            Ok(s)
        };
        let inner = |i: usize, body: &dyn Fn(usize) -> Result<Rational, EvalError>| -> Result<Rational, EvalError> {
            let mut s = Rational::zero();
            for j in 0..=i {
                s += body(j).map_err(|err| err.in_context(alloc::format!("summand j={j}")))?;
            }
            Ok(s)
        };

        match id {
            ExampleId::A => pref_plus(),
            ExampleId::B => pref_diff(),
            ExampleId::C => pref_two(),
            ExampleId::D => Ok(pref_plus()?
                * sum(&|i| {
                    let ii = i as i64;
                    Ok(cb(nn, i)
                        * br(
                            &[(ii + b, i), (ii + c, i), (1 + d + e + nn, i)],
                            &[(nn + d, i), (nn + e, i), (1 + b + c + ii, i)],
                        )?)
                })?),
            ExampleId::E => Ok(pref_plus()?
                * sum(&|i| {
                    let ii = i as i64;
                    Ok(sign(i)
                        * cb(nn, i)
                        * br(
                            &[(ii + b, i), (ii + c, i), (d - e, i)],
                            &[(nn + d, i), (ii + e, i), (1 + b + c + ii, i)],
                        )?)
                })?),
            ExampleId::F => Ok(pref_plus()?
                * sum(&|i| {
                    let ii = i as i64;
                    Ok(sign(i)
                        * cb(nn, i)
                        * br(
                            &[(ii + b, i), (ii + c, i), (nn + d + e + ii, i)],
                            &[(ii + d, i), (ii + e, i), (1 + b + c + ii, i)],
                        )?)
                })?),
            ExampleId::G => Ok(pref_diff()?
                * sum(&|i| {
                    let ii = i as i64;
                    Ok(cb(nn, i)
                        * br(
                            &[(ii + b, i), (nn + c, i), (ii + d + e + nn, i)],
                            &[(ii + d, i), (ii + e, i), (ii + b - c - nn, i)],
                        )?)
                })?),
            ExampleId::H => Ok(pref_two()?
                * sum(&|i| {
                    let ii = i as i64;
                    Ok(cb(nn, i)
                        * br(
                            &[(nn + b, i), (nn + c, i), (nn + d + e + ii, i)],
                            &[(ii + d, i), (ii + e, i), (2 * nn + b + c, i)],
                        )?)
                })?),
            ExampleId::I | ExampleId::J | ExampleId::K => {
                let tail = |i: usize| -> Result<Rational, EvalError> {
                    let ii = i as i64;
                    inner(i, &|j| {
                        let jj = j as i64;
                        let w = cb(ii, j);
                        match id {
                            ExampleId::I => Ok(w * br(
                                &[(jj + d, j), (jj + e, j), (1 + f + g + nn, j)],
                                &[(nn + f, j), (nn + g, j), (1 + d + e + nn - ii + jj, j)],
                            )?),
                            ExampleId::J => Ok(sign(j)
                                * w
                                * br(
                                    &[(jj + d, j), (jj + e, j), (f - g, j)],
                                    &[(nn + f, j), (jj + g, j), (1 + d + e + nn - ii + jj, j)],
                                )?),
                            _ => Ok(sign(j)
                                * w
                                * br(
                                    &[(jj + d, j), (jj + e, j), (nn + f + g + jj, j)],
                                    &[(jj + f, j), (jj + g, j), (1 + d + e + nn - ii + jj, j)],
                                )?),
                        }
                    })
                };
                Ok(pref_plus()?
                    * sum(&|i| {
                        let ii = i as i64;
                        Ok(cb(nn, i)
                            * br(
                                &[(ii + b, i), (ii + c, i), (1 + d + e + nn, i)],
                                &[(nn + d, i), (nn + e, i), (1 + b + c + ii, i)],
                            )?
                            * tail(i)?)
                    })?)
            }
            ExampleId::L => Ok(pref_plus()?
                * sum(&|i| {
                    let ii = i as i64;
                    let outer = sign(i)
                        * cb(nn, i)
                        * br(
                            &[(ii + b, i), (ii + c, i), (d - e, i)],
                            &[(nn + d, i), (ii + e, i), (1 + b + c + ii, i)],
                        )?;
                    let tail = inner(i, &|j| {
                        let jj = j as i64;
                        Ok(cb(ii, j)
                            * br(
                                &[(jj + d, j), (nn + e, j), (jj + f + g + nn, j)],
                                &[(jj + f, j), (jj + g, j), (jj + d - e - ii, j)],
                            )?)
                    })?;
                    Ok(outer * tail)
                })?),
            ExampleId::M | ExampleId::N | ExampleId::O => {
                // shared inner sum of m, n, o
                let tail = |i: usize| -> Result<Rational, EvalError> {
                    let ii = i as i64;
                    inner(i, &|j| {
                        let jj = j as i64;
                        Ok(cb(ii, j)
                            * br(
                                &[(nn + d, j), (nn + e, j), (jj + f + g + nn, j)],
                                &[(jj + f, j), (jj + g, j), (ii + d + e + nn, j)],
                            )?)
                    })
                };
                match id {
                    ExampleId::M => Ok(pref_plus()?
                        * sum(&|i| {
                            let ii = i as i64;
                            Ok(sign(i)
                                * cb(nn, i)
                                * br(
                                    &[(ii + b, i), (ii + c, i), (ii + d + e + nn, i)],
                                    &[(ii + d, i), (ii + e, i), (ii + b + c + 1, i)],
                                )?
                                * tail(i)?)
                        })?),
                    ExampleId::N => Ok(pref_diff()?
                        * sum(&|i| {
                            let ii = i as i64;
                            Ok(cb(nn, i)
                                * br(
                                    &[(ii + b, i), (nn + c, i), (ii + d + e + nn, i)],
                                    &[(ii + d, i), (ii + e, i), (ii + b - c - nn, i)],
                                )?
                                * tail(i)?)
                        })?),
                    _ => Ok(pref_two()?
                        * sum(&|i| {
                            let ii = i as i64;
                            Ok(cb(nn, i)
                                * br(
                                    &[(nn + b, i), (nn + c, i), (ii + d + e + nn, i)],
                                    &[(ii + d, i), (ii + e, i), (2 * nn + b + c, i)],
                                )?
                                * tail(i)?)
                        })?),
                }
            }
        }
    }

    /// Evaluate both sides of example `id`.
    pub fn example_eval(&self, id: ExampleId, params: &[u64], n: usize) -> Report {
        Report::from_sides(
            id.family_name(),
            example_params(id, params, n),
            self.example_lhs(id, params, n),
            self.example_rhs(id, params, n),
        )
    }
}

fn check_arity(id: ExampleId, params: &[u64]) -> Result<(), EvalError> {
    if params.len() != id.arity() {
        return Err(EvalError::InvalidInstance(alloc::format!(
            "example {id} takes {} parameters, got {}",
            id.arity(),
            params.len()
        )));
    }
    Ok(())
}
