//! Exact computer algebra for q-trinomial coefficients and Bailey pairs.
//!
//! The crate works in the ring of truncated Laurent series in t = q^(1/2)
//! over the rationals, with per-series guaranteed-order bookkeeping so
//! that every identity check is an exact coefficient comparison on a
//! certified window. On top of the series ring sit:
//!
//! - [`qspecial`]: q-Pochhammer symbols, the q-trinomial coefficients and
//!   their T/Q normalizations, with two independent evaluation routes;
//! - [`bailey`]: binomial and trinomial Bailey pairs, the binomial-to-
//!   trinomial transform, and series-level verification of the trinomial
//!   Bailey lemma and its corollaries;
//! - [`catalog`]: built-in pairs (Slater's A(1) and friends) plus a strict
//!   declarative document format for user-defined pairs.
//!
//! The series core is generic over the coefficient field; the rest of the
//! crate uses the concrete rational instantiation below.

pub mod bailey;
pub mod catalog;
pub mod error;
pub mod qspecial;
pub mod series;

pub use error::{Error, Result};
pub use series::{equal_to_order, Comparison, Series, Units};

/// Exact rational coefficient (arbitrary precision).
pub type QRat = num_rational::BigRational;

/// The concrete series type used throughout: Laurent series in t = q^(1/2)
/// with exact rational coefficients.
pub type QSeries = Series<QRat>;

/// Convenience: the rational n/1.
pub fn qrat(n: i64) -> QRat {
    QRat::from_integer(n.into())
}

/// Convenience: the rational n/d.
pub fn qrat_frac(n: i64, d: i64) -> QRat {
    QRat::new(n.into(), d.into())
}
