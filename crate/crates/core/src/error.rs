use alloc::format;
use alloc::string::String;
use core::fmt;

/// Failure while evaluating one side of an identity.
///
/// The first two variants mark an instance as outside the domain of the
/// identity (a sweep records it as inapplicable), the last one a malformed
/// request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A factor of a denominator Pochhammer symbol or binomial vanishes.
    ZeroDenominatorFactor { detail: String },
    /// Division by a scalar whose value part is zero.
    ZeroValueDivisor,
    /// Parameters violate the instance invariants.
    InvalidInstance(String),
}

impl EvalError {
    pub fn zero_factor(detail: impl Into<String>) -> Self {
        EvalError::ZeroDenominatorFactor {
            detail: detail.into(),
        }
    }

    /// Prefix the diagnostic with where the factor was hit.
    pub fn in_context(self, context: impl fmt::Display) -> Self {
        match self {
            EvalError::ZeroDenominatorFactor { detail } => EvalError::ZeroDenominatorFactor {
                detail: format!("{context}: {detail}"),
            },
            other => other,
        }
    }

    /// True for the errors that put an instance outside the identity's domain.
    pub fn is_inapplicable(&self) -> bool {
        matches!(
            self,
            EvalError::ZeroDenominatorFactor { .. } | EvalError::ZeroValueDivisor
        )
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::ZeroDenominatorFactor { detail } => {
                write!(f, "zero denominator factor: {detail}")
            }
            EvalError::ZeroValueDivisor => f.write_str("division by a scalar with zero value part"),
            EvalError::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
        }
    }
}

impl core::error::Error for EvalError {}
