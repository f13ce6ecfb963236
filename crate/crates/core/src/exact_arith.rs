//! Exact rational scalar kernel.
//!
//! All quantities are [`Rational`]s (canonical big rationals). The
//! combinatorial helpers are generic over [`Scalar`] so the same code runs on
//! plain rationals and on [`Dual`](crate::Dual) numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::EvalError;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. `Display` gives `p` or `p/q`.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` reduced. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a rational of the form `p` or `p/q` with q != 0")
    }
}

/// Parse `p` or `p/q` (sign allowed on either part, result canonical).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| ParseRationalError)?;
    let q: BigInt = q.parse().map_err(|_| ParseRationalError)?;
    if q.is_zero() {
        return Err(ParseRationalError);
    }
    Ok(Rational::new(p, q))
}

/// Field-like scalar the evaluators run over: [`Rational`] or
/// [`Dual`](crate::Dual).
///
/// `value()` is the part that decides whether a divisor vanishes; for a
/// rational it is the number itself, for a dual its real part.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(r: Rational) -> Self;

    fn value(&self) -> &Rational;

    /// Division, failing with [`EvalError::ZeroValueDivisor`] when the
    /// divisor's value part is zero.
    fn try_div(&self, rhs: &Self) -> Result<Self, EvalError>;

    /// Multiply by a rational constant.
    fn scale(&self, r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `self + k`.
    fn shift(&self, k: i64) -> Self {
        self.clone() + Self::from_int(k)
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn value(&self) -> &Rational {
        self
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, EvalError> {
        if rhs.is_zero() {
            return Err(EvalError::ZeroValueDivisor);
        }
        Ok(self / rhs)
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn shift(&self, k: i64) -> Self {
        self + int(k)
    }
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`. Uncached; see
/// [`HarmonicCache`] for repeated use.
pub fn harmonic(n: usize) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + ratio(1, k as i64))
}

/// Append-only table of harmonic numbers.
///
/// Growth goes through a `RefCell`, so a cache is `!Sync`: concurrent
/// workers each own one.
#[derive(Debug)]
pub struct HarmonicCache {
    values: RefCell<Vec<Rational>>,
}

impl Default for HarmonicCache {
    fn default() -> Self {
        Self::new()
    }
}

impl HarmonicCache {
    pub fn new() -> Self {
        HarmonicCache {
            values: RefCell::new(vec![Rational::zero()]),
        }
    }

    pub fn get(&self, n: usize) -> Rational {
        let mut values = self.values.borrow_mut();
        while values.len() <= n {
            let k = values.len();
            let next = &values[k - 1] + ratio(1, k as i64);
            values.push(next);
        }
        values[n].clone()
    }

    /// Number of entries computed so far.
    pub fn len(&self) -> usize {
        self.values.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Append-only table of factorials, plus the binomials built on it.
#[derive(Debug)]
pub struct FactorialCache {
    values: RefCell<Vec<BigInt>>,
}

impl Default for FactorialCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialCache {
    pub fn new() -> Self {
        FactorialCache {
            values: RefCell::new(vec![BigInt::one()]),
        }
    }

    pub fn get(&self, n: usize) -> BigInt {
        let mut values = self.values.borrow_mut();
        while values.len() <= n {
            let k = values.len();
            let next = &values[k - 1] * BigInt::from(k);
            values.push(next);
        }
        values[n].clone()
    }

    /// Generalized binomial `C(a, k)` for an integer upper argument of any
    /// sign; exact integer.
    pub fn binomial_int(&self, a: i64, k: usize) -> BigInt {
        let falling = (0..k as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(a - j));
        let (q, r) = falling.div_rem(&self.get(k));
        debug_assert!(r.is_zero());
        q
    }

    /// [`binomial_int`](Self::binomial_int) as a rational.
    pub fn binomial(&self, a: i64, k: usize) -> Rational {
        Rational::from_integer(self.binomial_int(a, k))
    }

    /// [`binomial_general`] with the `k!` taken from the cache.
    pub fn binomial_general<S: Scalar>(&self, a: &S, k: usize) -> S {
        let falling = falling_factorial(a, k);
        falling.scale(&Rational::new(BigInt::one(), self.get(k)))
    }
}

/// `n!` without caching.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Shifted factorial `(x)_n = x (x+1) ... (x+n-1)`, `(x)_0 = 1`.
pub fn rising_factorial<S: Scalar>(x: &S, n: usize) -> S {
    (0..n as i64).fold(S::one(), |acc, k| acc * x.shift(k))
}

/// `a (a-1) ... (a-k+1)`.
pub fn falling_factorial<S: Scalar>(a: &S, k: usize) -> S {
    (0..k as i64).fold(S::one(), |acc, j| acc * a.shift(-j))
}

/// `Π (a)_n / Π (b)_n`.
///
/// Fails with [`EvalError::ZeroDenominatorFactor`] when some `(b)_n`
/// vanishes, i.e. `b` is a non-positive integer with `b > -n` (for a dual,
/// when the value part is).
pub fn pochhammer_ratio<S: Scalar>(numer: &[S], denom: &[S], n: usize) -> Result<S, EvalError> {
    let mut den = S::one();
    for b in denom {
        for j in 0..n as i64 {
            let factor = b.shift(j);
            if factor.value().is_zero() {
                return Err(EvalError::zero_factor(format!(
                    "({b})_{n} has a zero factor at {b} + {j}"
                )));
            }
            den = den * factor;
        }
    }
    let num = numer
        .iter()
        .fold(S::one(), |acc, a| acc * rising_factorial(a, n));
    num.try_div(&den)
}

/// Generalized binomial `C(a, k) = a (a-1) ... (a-k+1) / k!` for any scalar
/// upper argument. Agrees with the usual binomial for integers `a >= k >= 0`
/// and is a polynomial in `a` otherwise (so `C(-2, 3) = -4`, `C(1, 3) = 0`).
pub fn binomial_general<S: Scalar>(a: &S, k: usize) -> S {
    falling_factorial(a, k).scale(&Rational::new(BigInt::one(), factorial(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(3), ratio(11, 6));
        let cache = HarmonicCache::new();
        assert_eq!(cache.get(3), ratio(11, 6));
        assert_eq!(cache.len(), 4);
        assert_eq!(cache.get(0), int(0));
    }

    #[test]
    fn harmonic_recurrence() {
        let cache = HarmonicCache::new();
        for n in 1..=200 {
            assert_eq!(cache.get(n) - cache.get(n - 1), ratio(1, n as i64));
        }
        assert_eq!(cache.get(37), harmonic(37));
    }

    #[test]
    fn rising_factorial_values() {
        assert_eq!(rising_factorial(&ratio(7, 3), 0), int(1));
        assert_eq!(rising_factorial(&int(2), 3), int(24));
        assert_eq!(rising_factorial(&int(-3), 5), int(0));
        // (1/2)_3 = 1/2 * 3/2 * 5/2
        assert_eq!(rising_factorial(&ratio(1, 2), 3), ratio(15, 8));
    }

    #[test]
    fn pochhammer_ratio_values() {
        let empty: [Rational; 0] = [];
        assert_eq!(pochhammer_ratio(&empty, &empty, 5).unwrap(), int(1));
        assert_eq!(pochhammer_ratio(&[int(2)], &[int(3)], 2).unwrap(), ratio(1, 2));
        let err = pochhammer_ratio(&[int(-1)], &[int(0)], 1).unwrap_err();
        assert!(matches!(err, EvalError::ZeroDenominatorFactor { .. }));
        // (-3)_3 is fine, (-3)_4 hits the factor -3 + 3.
        assert!(pochhammer_ratio(&[int(1)], &[int(-3)], 3).is_ok());
        assert!(pochhammer_ratio(&[int(1)], &[int(-3)], 4).is_err());
    }

    #[test]
    fn binomial_general_values() {
        assert_eq!(binomial_general(&int(5), 2), int(10));
        assert_eq!(binomial_general(&int(-2), 3), int(-4));
        assert_eq!(binomial_general(&ratio(-7, 5), 0), int(1));
        assert_eq!(binomial_general(&int(1), 3), int(0));
        // C(1/2, 2) = (1/2)(-1/2)/2
        assert_eq!(binomial_general(&ratio(1, 2), 2), ratio(-1, 8));

        let cache = FactorialCache::new();
        assert_eq!(cache.binomial(-2, 3), int(-4));
        assert_eq!(cache.binomial(10, 3), int(120));
        assert_eq!(cache.binomial_general(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn pascal_rule() {
        let cache = FactorialCache::new();
        for a in -10..=10 {
            for k in 1..=10 {
                assert_eq!(
                    cache.binomial_int(a, k),
                    cache.binomial_int(a - 1, k) + cache.binomial_int(a - 1, k - 1),
                    "a={a} k={k}"
                );
            }
        }
    }

    #[test]
    fn binomial_times_factorial_is_rising() {
        for n in 0..=20i64 {
            for k in 0..=n as usize {
                let lhs = binomial_general(&int(n), k) * Rational::from_integer(factorial(k));
                assert_eq!(lhs, rising_factorial(&int(n - k as i64 + 1), k));
            }
        }
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert_eq!(ratio(8, 4).to_string(), "2");
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("2/-4").unwrap().to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rational_division_by_zero() {
        assert_eq!(int(1).try_div(&int(0)), Err(EvalError::ZeroValueDivisor));
    }
}
