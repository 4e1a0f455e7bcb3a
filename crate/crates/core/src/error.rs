use core::fmt;

/// Errors shared by the operations in this crate.
///
/// Mathematically negative answers (a polynomial that is not a CGF, a
/// quotient that is not a polynomial) are not errors; they are reported
/// through dedicated result enums in [`crate::forms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The zero polynomial was passed where a nonzero one is required.
    ZeroPolynomial,
    /// A coefficient was negative where only nonnegative ones are allowed.
    NegativeCoefficient,
    /// Exact division left a nonzero remainder or a non-integer quotient.
    NotDivisible,
    /// A parameter was outside the documented domain.
    InvalidParameter(&'static str),
    /// The variance is zero, so standardization is undefined.
    DegenerateVariance,
    /// An exhaustive enumeration would exceed its state budget.
    SizeGuard { states: u128, limit: u128 },
    /// An internal consistency check failed.
    Verification(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::NegativeCoefficient => f.write_str("negative coefficient"),
            Error::NotDivisible => f.write_str("not exactly divisible"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateVariance => f.write_str("variance is zero"),
            Error::SizeGuard { states, limit } => {
                write!(f, "enumeration needs {states} states, limit is {limit}")
            }
            Error::Verification(what) => write!(f, "verification failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
