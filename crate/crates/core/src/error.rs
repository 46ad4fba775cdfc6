use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Series division by a series whose constant term is (numerically) zero.
    NearSingularDivision {
        constant: f64,
    },
    /// `exp` of a series with a nonzero constant term.
    NonzeroConstantTerm,
    /// The point lies on (or too close to) the exceptional set of the norm.
    ExceptionalPoint {
        distance: f64,
    },
    /// An operation that needs `z != 0` received the origin.
    ZeroVector,
    /// A direction that had to lie on the unit sphere does not.
    InvalidDirection {
        norm: f64,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    InvalidMeasure(&'static str),
    InvalidSpec(&'static str),
    InvalidSpace(&'static str),
    InvalidOrder {
        m: usize,
        n: usize,
    },
    TruncationTooHigh {
        requested: usize,
        max: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NearSingularDivision { constant } => {
                write!(
                    f,
                    "division by a series with constant term of modulus {constant:e}"
                )
            }
            Error::NonzeroConstantTerm => f.write_str("exp requires a zero constant term"),
            Error::ExceptionalPoint { distance } => {
                write!(f, "point is within {distance:e} of the exceptional set")
            }
            Error::ZeroVector => f.write_str("the zero vector is not allowed here"),
            Error::InvalidDirection { norm } => {
                write!(f, "direction must have unit norm, got {norm}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidMeasure(why) => write!(f, "invalid Herglotz measure: {why}"),
            Error::InvalidSpec(why) => write!(f, "invalid lifted map: {why}"),
            Error::InvalidSpace(why) => write!(f, "invalid space: {why}"),
            Error::InvalidOrder { m, n } => {
                write!(
                    f,
                    "unsupported Zalcman order ({m}, {n}); need 2 <= m, n <= 4"
                )
            }
            Error::TruncationTooHigh { requested, max } => {
                write!(
                    f,
                    "truncation order {requested} exceeds the supported maximum {max}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
