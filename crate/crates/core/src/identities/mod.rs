//! Both sides of every harmonic number identity in scope, plus the
//! bookkeeping to sweep them.
//!
//! All evaluators hang off [`Evaluator`], which owns the harmonic-number and
//! factorial caches. An `Evaluator` is `!Sync`; parallel sweeps give each
//! worker its own.

use alloc::format;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::EvalError;
use crate::exact_arith::{FactorialCache, HarmonicCache, Rational};

pub mod examples;
pub mod paule_schneider;
pub mod report;
pub mod sweep;
pub mod theorem;

pub use examples::ExampleId;
pub use paule_schneider::TSpec;
pub use report::{Param, Report, Summary, Verdict};
pub use sweep::{parse_uint_list, verify, Case, DerivSign, Family, IdentityRange, Sweep};
pub use theorem::IdentityInstance;

/// Cache-owning context for all identity evaluators.
#[derive(Debug, Default)]
pub struct Evaluator {
    harmonics: HarmonicCache,
    factorials: FactorialCache,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn harmonic(&self, n: usize) -> Rational {
        self.harmonics.get(n)
    }

    pub fn harmonics(&self) -> &HarmonicCache {
        &self.harmonics
    }

    pub fn factorials(&self) -> &FactorialCache {
        &self.factorials
    }

    /// `C(a, k)` for an integer `a` of any sign.
    pub fn binomial(&self, a: i64, k: usize) -> Rational {
        self.factorials.binomial(a, k)
    }

    pub(crate) fn binomial_int(&self, a: i64, k: usize) -> BigInt {
        self.factorials.binomial_int(a, k)
    }

    /// `Π C(num) / Π C(den)` over `(upper, lower)` pairs; a vanishing
    /// denominator binomial is reported as a zero factor.
    pub(crate) fn binomial_ratio(
        &self,
        num: &[(i64, usize)],
        den: &[(i64, usize)],
    ) -> Result<Rational, EvalError> {
        let mut d = BigInt::one();
        for &(a, k) in den {
            let c = self.binomial_int(a, k);
            if c.is_zero() {
                return Err(EvalError::zero_factor(format!("C({a}, {k}) = 0 in a denominator")));
            }
            d *= c;
        }
        let n = num
            .iter()
            .fold(BigInt::one(), |acc, &(a, k)| acc * self.binomial_int(a, k));
        Ok(Rational::new(n, d))
    }
}

/// `(-1)^k`.
pub(crate) fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
