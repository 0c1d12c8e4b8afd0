use thiserror::Error;

use crate::diophantine::ContinuedFraction;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("magnitude out of range: value does not fit in a double (use the scaled evaluation)")]
    MagnitudeOutOfRange,

    #[error("asymptotic regime not reached: n * sin(theta) = {0} < 1")]
    AsymptoticRegimeNotReached(f64),

    #[error("no threshold exists: the phase gap vanishes, condition (ii) fails")]
    NoThreshold,

    #[error("root not bracketed: f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign")]
    NotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("precision exhausted after {} partial quotients", partial.terms.len())]
    PrecisionExhausted { partial: ContinuedFraction },

    #[error("invalid order parameter: {0}")]
    InvalidOrder(String),

    #[error("invalid rational angle {p}/{q}: need 0 < p < q and gcd(p, q) = 1")]
    InvalidAngle { p: i64, q: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: point set lives on S^{points} but the cap is on S^{cap}")]
    DimensionMismatch { points: usize, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
