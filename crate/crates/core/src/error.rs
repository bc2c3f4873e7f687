//! Error type shared by every module of the crate.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is reducible over Q (factor: {factor})")]
    NotIrreducible { factor: String },

    #[error("zero element where a nonzero one is required")]
    ZeroElement,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Dedekind's criterion failed at `p`: the order Z[theta] is not maximal
    /// at `p`, so Dedekind-Kummer splitting does not apply with this theta.
    #[error("{p} divides the index [O_k : Z[theta]]; choose another defining polynomial or exclude the prime")]
    IndexDivisor { p: BigInt },

    #[error("negative exponent at a prime outside S: input was not an S-integer")]
    NegativeExponentOutsideS,

    #[error("element is not an S-unit")]
    NotAnSUnit,

    #[error("element lies on the divisor (f(a) = 0)")]
    OnDivisor,

    #[error("point lies in the support of the divisor")]
    OnSupport,

    #[error("point does not satisfy the curve equation")]
    NotOnCurve,

    #[error("P = Q: translate ideal is undefined")]
    EqualPoints,

    #[error("torsion point of order {order}")]
    TorsionPoint { order: u32 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
