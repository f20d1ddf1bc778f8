//! Error type shared by the series ring, the special functions, and the
//! pair-verification machinery.
//!
//! A deliberate distinction runs through the whole crate: a *mismatch*
//! (two series disagree on a coefficient that both guarantee) is a result,
//! reported through [`crate::series::Comparison`] and verification reports,
//! while an *insufficient guaranteed order* is an error. A truncation
//! shortfall must never masquerade as a counterexample or as a pass.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero series")]
    DivisionByZero,

    /// Inverting an exact polynomial would need an infinite window; the
    /// caller must pick one with `truncate` first.
    #[error("inverting an exact non-monomial requires truncating to a working order first")]
    InvertRequiresTruncation,

    #[error("substitution requires a Laurent polynomial (exact series), got a truncated one")]
    SubstitutionRequiresPolynomial,

    #[error("coefficient of t^{exp} requested, but only order {order} is guaranteed")]
    BeyondGuaranteedOrder { exp: i64, order: i64 },

    #[error("insufficient guaranteed order: need {needed}, have {have}")]
    InsufficientOrder { needed: i64, have: i64 },

    #[error("cannot extend guaranteed order from {have} to {requested}")]
    CannotExtendOrder { have: i64, requested: i64 },

    #[error("divergent formal product: Pochhammer argument with t-exponent {k} <= 0")]
    DivergentProduct { k: i64 },

    #[error("negative Pochhammer count {count}; callers rely on the vanishing convention instead")]
    NegativePochhammerCount { count: i64 },

    #[error("trinomial mode must be 0 or 1, got {0}")]
    InvalidMode(i64),

    #[error("L must be nonnegative, got {0}")]
    NegativeLength(i64),

    #[error("relative parameter ell must be nonnegative, got {0}")]
    NegativeEll(i64),

    /// Raised when a quotient that is provably a polynomial comes out with a
    /// nonzero coefficient beyond its degree bound. Indicates an internal bug.
    #[error("inexact quotient: nonzero coefficient beyond the degree bound at t^{exp}")]
    InexactQuotient { exp: i64 },

    #[error("trinomial pair modes differ: {0} vs {1}")]
    ModeMismatch(i64, i64),

    /// Formal convergence of an infinite sum must be witnessed by growth of
    /// the summand's minimum exponent; a term dipping below zero breaks it.
    #[error("summand at index {index} has minimum t-exponent {min_exp} < 0; sum does not converge formally")]
    NonconvergentSum { index: i64, min_exp: i64 },

    #[error("scan cap {cap} reached before order {order} was certified")]
    ScanCapReached { cap: i64, order: i64 },

    #[error("unknown builtin pair '{0}'")]
    UnknownBuiltin(String),

    #[error("pair document parse error: {0}")]
    DocumentParse(String),

    #[error("invalid pair document: {0}")]
    DocumentInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
