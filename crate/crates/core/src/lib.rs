//! Exact verification engine for hypergeometric transformations and the
//! harmonic number identities obtained from them by differentiation.
//!
//! Everything here is exact rational arithmetic over [`Rational`]; the
//! derivative operator `D f = f'(0)` is carried by first-order dual numbers
//! ([`Dual`]). The crate is `no_std` and needs only `alloc`.
//!
//! * [`exact_arith`]: rationals, harmonic numbers, Pochhammer symbols and
//!   generalized binomials, generic over the [`Scalar`] trait.
//! * [`dual_diff`]: dual numbers and the binomial-derivative formulas.
//! * [`hyperg`]: terminating series, the Andrews multi-sum transformation
//!   and its Whipple specialization.
//! * [`identities`]: the general harmonic number identity, its
//!   specializations, the `T_n^(u)` family and sweep reports.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dual_diff;
pub mod error;
pub mod exact_arith;
pub mod hyperg;
pub mod identities;

pub use dual_diff::{derivative_of, seed_x, Dual};
pub use error::EvalError;
pub use exact_arith::{Rational, Scalar};
pub use identities::{Evaluator, Report, Verdict};
