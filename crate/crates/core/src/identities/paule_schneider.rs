//! The sums `T_n^(u) = Σ_k C(n,k)^u {1 + u(n-2k)H_k}` and their closed
//! forms.
//!
//! For `u` in `{-2, -1, 1, 2, 3, 4}` the closed forms are single
//! expressions; every other nonzero `u` maps onto one of four multi-sum
//! families over the simplex `0 <= i_1 <= ... <= i_m <= n`:
//!
//! | `u`          | family        | `m`         |
//! |--------------|---------------|-------------|
//! | odd, `>= 5`  | [`prop_c`]    | `(u-3)/2`   |
//! | even, `>= 6` | [`prop_d`]    | `(u-4)/2`   |
//! | odd, `<= -3` | [`prop_e`]    | `(1-u)/2`   |
//! | even, `<= -4`| [`prop_f`]    | `-u/2`      |
//!
//! [`prop_c`]: Evaluator::prop_c
//! [`prop_d`]: Evaluator::prop_d
//! [`prop_e`]: Evaluator::prop_e
//! [`prop_f`]: Evaluator::prop_f

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::report::{Param, Report};
use super::{sign, Evaluator};
use crate::error::EvalError;
use crate::exact_arith::{int, pochhammer_ratio, ratio, rising_factorial, Rational};
use crate::hyperg::SimplexPoints;

/// `(u, n)` with `u != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TSpec {
    u: i64,
    n: usize,
}

impl TSpec {
    pub fn new(u: i64, n: usize) -> Result<Self, EvalError> {
        if u == 0 {
            return Err(EvalError::InvalidInstance("u must be nonzero".into()));
        }
        Ok(TSpec { u, n })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn params(&self) -> Vec<(&'static str, Param)> {
        vec![("u", Param::Int(self.u)), ("n", Param::Int(self.n as i64))]
    }
}

impl Evaluator {
    /// `T_n^(u)` by direct summation. For `u < 0` the powers are exact
    /// reciprocals of `C(n,k)^|u|`.
    pub fn t_direct(&self, spec: &TSpec) -> Rational {
        let (u, n) = (spec.u, spec.n);
        let mut total = Rational::zero();
        for k in 0..=n {
            let c = num_traits::pow(self.binomial_int(n as i64, k), u.unsigned_abs() as usize);
            let power = if u > 0 {
                Rational::from_integer(c)
            } else {
                Rational::new(BigInt::one(), c)
            };
            let brace = Rational::one() + int(u * (n as i64 - 2 * k as i64)) * self.harmonic(k);
            total += power * brace;
        }
        total
    }

    /// The closed form or multi-sum matching `u` (see the module table).
    pub fn t_closed(&self, spec: &TSpec) -> Rational {
        let (u, n) = (spec.u, spec.n);
        match u {
            -2 => self.har_a(n),
            -1 => self.har_b(n),
            1 => self.har_c(n),
            2 => self.har_d(n),
            3 => self.har_e(n),
            4 => self.har_f(n),
            u if u >= 5 && u % 2 != 0 => self.prop_c(((u - 3) / 2) as usize, n),
            u if u >= 6 => self.prop_d(((u - 4) / 2) as usize, n),
            u if u % 2 != 0 => self.prop_e(((1 - u) / 2) as usize, n),
            u => self.prop_f((-u / 2) as usize, n),
        }
    }

    /// `T_n^(-2) = 2 (1+n)² / (2+n) · H_{n+1}`.
    pub fn har_a(&self, n: usize) -> Rational {
        let n1 = n as i64 + 1;
        ratio(2 * n1 * n1, n1 + 1) * self.harmonic(n + 1)
    }

    /// `T_n^(-1) = (1+n) H_{n+1}`.
    pub fn har_b(&self, n: usize) -> Rational {
        int(n as i64 + 1) * self.harmonic(n + 1)
    }

    /// `T_n^(1) = 1`.
    pub fn har_c(&self, _n: usize) -> Rational {
        Rational::one()
    }

    /// `T_n^(2) = 0` for `n >= 1`. At `n = 0` the sum is the single term
    /// `C(0,0)² = 1`, which the formula does not cover.
    pub fn har_d(&self, n: usize) -> Rational {
        if n == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// `T_n^(3) = (-1)^n`.
    pub fn har_e(&self, n: usize) -> Rational {
        sign(n)
    }

    /// `T_n^(4) = (-1)^n C(2n, n)`.
    pub fn har_f(&self, n: usize) -> Rational {
        sign(n) * self.binomial(2 * n as i64, n)
    }

    /// `T_n^(5) = (-1)^n Σ_i C(n,i)² C(n+i,n)`.
    pub fn har_g(&self, n: usize) -> Rational {
        let nn = n as i64;
        let s = (0..=n).fold(BigInt::zero(), |acc, i| {
            let c = self.binomial_int(nn, i);
            acc + &c * &c * self.binomial_int(nn + i as i64, n)
        });
        sign(n) * Rational::from_integer(s)
    }

    /// `T_n^(6) = (-1)^n Σ_i C(n,i)² C(n+i,n) C(2n-i,n)`.
    pub fn har_h(&self, n: usize) -> Rational {
        let nn = n as i64;
        let s = (0..=n).fold(BigInt::zero(), |acc, i| {
            let ii = i as i64;
            let c = self.binomial_int(nn, i);
            acc + &c * &c * self.binomial_int(nn + ii, n) * self.binomial_int(2 * nn - ii, n)
        });
        sign(n) * Rational::from_integer(s)
    }

    /// `T_n^(2m+3) = (-1)^n Σ C(n,i_m)² C(n+i_1,n)
    ///   Π_{r=1..m-1} C(n,i_r)² C(n+i_{r+1}-i_r, n)`.
    pub fn prop_c(&self, m: usize, n: usize) -> Rational {
        assert!(m >= 1, "m must be positive");
        let nn = n as i64;
        let mut total = BigInt::zero();
        for idx in SimplexPoints::new(m, n) {
            let top = self.binomial_int(nn, idx[m - 1]);
            let mut term = &top * &top * self.binomial_int(nn + idx[0] as i64, n);
            for r in 0..m - 1 {
                let c = self.binomial_int(nn, idx[r]);
                term *= &c * &c * self.binomial_int(nn + idx[r + 1] as i64 - idx[r] as i64, n);
            }
            total += term;
        }
        sign(n) * Rational::from_integer(total)
    }

    /// `T_n^(2m+4) = (-1)^n Σ C(n+i_1,n) Π_{r=1..m} C(n,i_r)² C(n+i_{r+1}-i_r, n)`
    /// with `i_{m+1} = n`.
    pub fn prop_d(&self, m: usize, n: usize) -> Rational {
        assert!(m >= 1, "m must be positive");
        let nn = n as i64;
        let mut total = BigInt::zero();
        for idx in SimplexPoints::new(m, n) {
            let mut term = self.binomial_int(nn + idx[0] as i64, n);
            for r in 0..m {
                let next = if r + 1 == m { n } else { idx[r + 1] };
                let c = self.binomial_int(nn, idx[r]);
                term *= &c * &c * self.binomial_int(nn + next as i64 - idx[r] as i64, n);
            }
            total += term;
        }
        sign(n) * Rational::from_integer(total)
    }

    /// `T_n^(1-2m) = (1+n)^m Σ 1/(1+n-i_1)
    ///   Π_{r=1..m-1} (1)_{i_r} (-i_{r+1})_{i_r} / ((-n)_{i_r} (1+n-i_{r+1})_{i_r+1})`.
    pub fn prop_e(&self, m: usize, n: usize) -> Rational {
        assert!(m >= 1, "m must be positive");
        let nn = n as i64;
        let mut total = Rational::zero();
        for idx in SimplexPoints::new(m, n) {
            let mut term = ratio(1, 1 + nn - idx[0] as i64);
            for r in 0..m - 1 {
                let (lo, hi) = (idx[r], idx[r + 1] as i64);
                let num = rising_factorial(&int(1), lo) * rising_factorial(&int(-hi), lo);
                // (-n)_lo with lo <= n and (1+n-hi)_{lo+1} with hi <= n never vanish
                let den = rising_factorial(&int(-nn), lo) * rising_factorial(&int(1 + nn - hi), lo + 1);
                term *= num / den;
            }
            total += term;
        }
        num_traits::pow(int(1 + nn), m) * total
    }

    /// `T_n^(-2m) = (1+n)^{m+1} Σ Π_{r=1..m} 1/(1+n-i_r)
    ///   [1, -i_{r+1}; -n, 2+n-i_{r+1}]_{i_r}` with `i_{m+1} = n`.
    pub fn prop_f(&self, m: usize, n: usize) -> Rational {
        assert!(m >= 1, "m must be positive");
        let nn = n as i64;
        let mut total = Rational::zero();
        for idx in SimplexPoints::new(m, n) {
            let mut term = Rational::one();
            for r in 0..m {
                let next = if r + 1 == m { nn } else { idx[r + 1] as i64 };
                let bracket = pochhammer_ratio(&[int(1), int(-next)], &[int(-nn), int(2 + nn - next)], idx[r])
                    .expect("(-n)_i with i <= n and (2+n-j)_i are nonzero");
                term *= ratio(1, 1 + nn - idx[r] as i64) * bracket;
            }
            total += term;
        }
        num_traits::pow(int(1 + nn), m + 1) * total
    }

    /// Compare [`t_direct`](Self::t_direct) with [`t_closed`](Self::t_closed).
    pub fn t_verify(&self, spec: &TSpec) -> Report {
        Report::from_sides("t", spec.params(), Ok(self.t_direct(spec)), Ok(self.t_closed(spec)))
    }
}
