use core::fmt;

use crate::pair::AdmissiblePair;

/// Errors raised by the pair arithmetic, the diagram tracer and the
/// invariant assemblers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An input was zero or beyond the supported integer width.
    Domain { what: &'static str, value: u64 },
    /// `gcd(p, q) != 1` or `q` even.
    NotAdmissible { p: u64, q: u64 },
    /// T3 requested on a pair with `p <= q`.
    MoveNotApplicable { pair: AdmissiblePair },
    /// A move would push a component past [`crate::pair::MAX_COMPONENT`].
    Overflow { pair: AdmissiblePair },
    /// A sequence argument had the wrong length.
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    /// The diagram model or a derived object broke one of its invariants.
    ModelViolation { pair: AdmissiblePair, reason: &'static str },
    /// A trapezoid-dependent operation was given a non-trapezoidal profile.
    NotTrapezoidal,
    /// The closed-form Alexander expansion produced a vanishing or
    /// wrongly-signed coefficient.
    OracleShape { pair: AdmissiblePair, index: usize, coefficient: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of range: {value}"),
            Error::NotAdmissible { p, q } => {
                write!(f, "({p},{q}) is not admissible: need gcd(p,q)=1 and q odd")
            }
            Error::MoveNotApplicable { pair } => {
                write!(f, "T3 is not applicable to {pair}: requires p > q")
            }
            Error::Overflow { pair } => write!(f, "move on {pair} exceeds the supported range"),
            Error::LengthMismatch { what, expected, found } => {
                write!(f, "{what}: expected length {expected}, found {found}")
            }
            Error::ModelViolation { pair, reason } => {
                write!(f, "diagram model violation for {pair}: {reason}")
            }
            Error::NotTrapezoidal => f.write_str("coefficient sequence is not trapezoidal"),
            Error::OracleShape { pair, index, coefficient } => write!(
                f,
                "closed-form Alexander polynomial of {pair} has coefficient {coefficient} at t^{index}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
