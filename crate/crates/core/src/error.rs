use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A matrix or vector entry is NaN or infinite.
    NonFiniteEntry,
    /// Schatten exponent below 1.
    InvalidExponent {
        p: f64,
    },
    /// Smallest singular value is at or below `1e-12` times the largest.
    RankDeficient,
    ShapeMismatch(&'static str),
    /// Harmonic frame rows repeat or fall outside `[0, M)`.
    InvalidRowSet,
    /// The difference set search exhausted its candidates.
    NoSuchSet {
        modulus: usize,
        size: usize,
    },
    OutOfRange(&'static str),
    InvalidProbability(f64),
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// Exact enumeration requested beyond its budget.
    TooLarge {
        count: usize,
        limit: usize,
    },
    InvalidDimension(&'static str),
    /// Exhaustive subset search exceeds the `10^6` subset budget.
    BudgetExceeded {
        subsets: u128,
        limit: u128,
    },
    IllConditioned {
        cond: f64,
        limit: f64,
    },
    Singular,
    UnsupportedDistribution,
    InvalidParameter(&'static str),
    NoConvergence,
}

impl Error {
    /// Stable variant name, used in run manifests.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFiniteEntry => "NonFiniteEntry",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::RankDeficient => "RankDeficient",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::InvalidRowSet => "InvalidRowSet",
            Error::NoSuchSet { .. } => "NoSuchSet",
            Error::OutOfRange(_) => "OutOfRange",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::IllConditioned { .. } => "IllConditioned",
            Error::Singular => "Singular",
            Error::UnsupportedDistribution => "UnsupportedDistribution",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NoConvergence => "NoConvergence",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFiniteEntry => f.write_str("matrix has a non-finite entry"),
            Error::InvalidExponent { p } => write!(f, "Schatten exponent {p} is below 1"),
            Error::RankDeficient => f.write_str("matrix is numerically rank deficient"),
            Error::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            Error::InvalidRowSet => f.write_str("row set must hold distinct integers in [0, M)"),
            Error::NoSuchSet { modulus, size } => {
                write!(f, "no ({modulus}, {size}, 1) difference set exists")
            }
            Error::OutOfRange(what) => write!(f, "argument out of range: {what}"),
            Error::InvalidProbability(p) => write!(f, "keep probability {p} is not in (0, 1]"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
            Error::TooLarge { count, limit } => {
                write!(
                    f,
                    "{count} summands exceed the enumeration limit of {limit}"
                )
            }
            Error::InvalidDimension(what) => write!(f, "invalid dimension: {what}"),
            Error::BudgetExceeded { subsets, limit } => {
                write!(
                    f,
                    "{subsets} subsets exceed the exhaustive budget of {limit}"
                )
            }
            Error::IllConditioned { cond, limit } => {
                write!(f, "condition number {cond:e} exceeds the limit {limit:e}")
            }
            Error::Singular => f.write_str("matrix is singular"),
            Error::UnsupportedDistribution => {
                f.write_str("unsupported distribution (expected rademacher or uniform)")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::NoConvergence => f.write_str("eigenvalue iteration did not converge"),
        }
    }
}

impl core::error::Error for Error {}
