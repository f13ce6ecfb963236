//! First-order dual numbers over [`Rational`] and the derivative operator
//! `D f = f'(0)`.
//!
//! Evaluating an expression at `x = 0 + 1ε` (see [`seed_x`]) yields
//! `f(0) + f'(0) ε` exactly, since `ε² = 0`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::EvalError;
use crate::exact_arith::{FactorialCache, HarmonicCache, Rational, Scalar};

/// `value + deriv·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dual {
    pub value: Rational,
    pub deriv: Rational,
}

impl Dual {
    pub fn new(value: Rational, deriv: Rational) -> Self {
        Dual { value, deriv }
    }

    pub fn constant(value: Rational) -> Self {
        Dual {
            value,
            deriv: Rational::zero(),
        }
    }
}

/// The formal variable `x`, evaluated at 0: `0 + 1ε`.
pub fn seed_x() -> Dual {
    Dual::new(Rational::zero(), Rational::one())
}

/// `D f = f'(0)`, computed as the ε-part of `f(seed_x())`.
///
/// `f` reports [`EvalError::ZeroValueDivisor`] (through
/// [`Scalar::try_div`]) when it divides by something vanishing at 0.
pub fn derivative_of<F>(f: F) -> Result<Rational, EvalError>
where
    F: FnOnce(&Dual) -> Result<Dual, EvalError>,
{
    f(&seed_x()).map(|d| d.deriv)
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.value, self.deriv)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        let deriv = &self.value * &rhs.deriv + &self.deriv * &rhs.value;
        Dual::new(self.value * rhs.value, deriv)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.value, -self.deriv)
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::constant(Rational::one())
    }
}

impl Scalar for Dual {
    fn from_rational(r: Rational) -> Self {
        Dual::constant(r)
    }

    fn value(&self) -> &Rational {
        &self.value
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, EvalError> {
        if rhs.value.is_zero() {
            return Err(EvalError::ZeroValueDivisor);
        }
        let value = &self.value / &rhs.value;
        let deriv =
            (&self.deriv * &rhs.value - &self.value * &rhs.deriv) / (&rhs.value * &rhs.value);
        Ok(Dual::new(value, deriv))
    }

    fn scale(&self, r: &Rational) -> Self {
        Dual::new(&self.value * r, &self.deriv * r)
    }

    fn shift(&self, k: i64) -> Self {
        Dual::new(&self.value + crate::exact_arith::int(k), self.deriv.clone())
    }
}

/// Both routes for `D C(n+x, r)` and `D C(n-x, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialDerivatives {
    /// ε-part of `C(n+x, r)` at the seed.
    pub plus_dual: Rational,
    /// `C(n,r)(H_n - H_{n-r})`.
    pub plus_closed: Rational,
    /// ε-part of `C(n-x, r)` at the seed.
    pub minus_dual: Rational,
    /// `C(n,r)(H_{n-r} - H_n)`.
    pub minus_closed: Rational,
}

impl BinomialDerivatives {
    pub fn holds(&self) -> bool {
        self.plus_dual == self.plus_closed && self.minus_dual == self.minus_closed
    }
}

/// Evaluate both binomial-derivative formulas by dual numbers and by their
/// harmonic-number closed forms. Requires `r <= n`.
pub fn binomial_derivatives(
    n: usize,
    r: usize,
    harmonics: &HarmonicCache,
    factorials: &FactorialCache,
) -> BinomialDerivatives {
    assert!(r <= n, "binomial derivative needs r <= n");
    let x = seed_x();
    let n_dual = Dual::from_int(n as i64);
    let plus = factorials.binomial_general(&(n_dual.clone() + x.clone()), r);
    let minus = factorials.binomial_general(&(n_dual - x), r);
    let c = factorials.binomial(n as i64, r);
    let diff = harmonics.get(n) - harmonics.get(n - r);
    BinomialDerivatives {
        plus_dual: plus.deriv,
        plus_closed: &c * &diff,
        minus_dual: minus.deriv,
        minus_closed: -(c * diff),
    }
}

/// True iff `D C(n+x, r) = C(n,r)(H_n - H_{n-r})` and
/// `D C(n-x, r) = C(n,r)(H_{n-r} - H_n)`.
pub fn check_binomial_derivatives(n: usize, r: usize) -> bool {
    binomial_derivatives(n, r, &HarmonicCache::new(), &FactorialCache::new()).holds()
}
