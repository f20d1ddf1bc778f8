//! Exact arithmetic in the ring of truncated Laurent series in t = q^(1/2).
//!
//! Everything else in the crate is built on this module. Exponents are
//! measured in *t-units*: the q-monomial q^(x/2) is stored at t-exponent x,
//! so genuinely half-integer q-powers (which the trinomial T_0 produces)
//! always have integer exponents.
//!
//! Every series carries a conservative guarantee: either it is `exact`
//! (a Laurent polynomial, all coefficients beyond the stored support are
//! exactly zero) or it is truncated with a guaranteed `order` — the largest
//! t-exponent whose coefficient is known to be correct. Arithmetic
//! propagates the guarantee, and [`equal_to_order`] refuses (with a
//! distinct error, not a verdict) to compare beyond it.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};

/// Coefficient field for the series ring. Exact arithmetic is assumed:
/// `Zero`/`One`/ring ops must be exact, which rationals satisfy and floats
/// do not.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Signed {}

impl<T: Clone + PartialEq + fmt::Debug + fmt::Display + Signed> Coefficient for T {}

/// A truncated Laurent series in t with exact coefficients.
///
/// Invariants (maintained by every constructor and operation):
/// - `coeffs[i]` is the coefficient of `t^(min_exp + i)`;
/// - when truncated, `coeffs` covers `min_exp..=order` and the leading
///   coefficient is nonzero (an all-zero window is stored with empty
///   `coeffs` and `min_exp == order + 1`);
/// - when exact, `coeffs` covers the full support with nonzero first and
///   last entries; the zero series has empty support and `min_exp == 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    min_exp: i64,
    coeffs: Vec<C>,
    /// `None` means exact: all coefficients beyond the stored support are 0.
    order: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<C: Coefficient> Series<C> {
    /// The canonical zero series: empty support, exact.
    pub fn zero() -> Self {
        Series { min_exp: 0, coeffs: Vec::new(), order: None }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// The exact series `c * t^exp` (zero if `c` is zero).
    pub fn monomial(exp: i64, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Series { min_exp: exp, coeffs: vec![c], order: None }
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// Exact series from dense coefficients starting at `min_exp`.
    pub fn exact_from_coeffs(min_exp: i64, coeffs: Vec<C>) -> Self {
        let mut s = Series { min_exp, coeffs, order: None };
        s.canonicalize();
        s
    }

    /// Truncated series from dense coefficients starting at `min_exp`,
    /// guaranteed correct up to `order` inclusive. The vector is padded or
    /// cropped to cover exactly `min_exp..=order`.
    pub fn truncated_from_coeffs(min_exp: i64, mut coeffs: Vec<C>, order: i64) -> Self {
        let want = (order - min_exp + 1).max(0) as usize;
        coeffs.resize(want, C::zero());
        let mut s = Series { min_exp, coeffs, order: Some(order) };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                match self.order {
                    None => self.min_exp = 0,
                    Some(n) => self.min_exp = n + 1,
                }
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.min_exp += k as i64;
                }
                if self.order.is_none() {
                    let tail = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                    self.coeffs.truncate(tail + 1);
                }
            }
        }
    }

    /// True only for the identically-zero series (exact, empty support).
    /// A truncated series that is zero on its whole window is not
    /// identically zero.
    pub fn is_zero(&self) -> bool {
        self.order.is_none() && self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Guaranteed order; `None` means exact (every exponent is guaranteed).
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    /// t-exponent of the lowest known nonzero term; `None` if there is none
    /// (the zero series, or a truncated series that vanishes on its window).
    pub fn min_exp(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Lower bound for the support: every coefficient below this exponent
    /// is exactly zero. Defined for every series (unlike `min_exp`).
    pub fn support_bound(&self) -> i64 {
        self.min_exp
    }

    /// t-exponent of the highest stored term, if any.
    pub fn max_stored_exp(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Known terms, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let base = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (base + i as i64, c))
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Dense copy of the coefficient window `lo..=hi`. Internal fast path;
    /// the whole window must be guaranteed.
    pub(crate) fn window_vec(&self, lo: i64, hi: i64) -> Vec<C> {
        debug_assert!(self.order.map_or(true, |n| hi <= n));
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for e in lo..=hi {
            let i = e - self.min_exp;
            if i < 0 || i as usize >= self.coeffs.len() {
                out.push(C::zero());
            } else {
                out.push(self.coeffs[i as usize].clone());
            }
        }
        out
    }

    /// Exact coefficient of `t^exp`. Exponents below the support bound are
    /// zero; beyond the guaranteed order of a truncated series the value is
    /// unknown and asking for it is an error.
    pub fn coefficient(&self, exp: i64) -> Result<C> {
        if let Some(order) = self.order {
            if exp > order {
                return Err(Error::BeyondGuaranteedOrder { exp, order });
            }
        }
        let i = exp - self.min_exp;
        if i < 0 || i as usize >= self.coeffs.len() {
            Ok(C::zero())
        } else {
            Ok(self.coeffs[i as usize].clone())
        }
    }

    /// Coefficientwise sum. The result is guaranteed to the smaller of the
    /// two orders (exact only when both inputs are exact).
    pub fn add(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Series { min_exp: order.map_or(0, |n| n + 1), coeffs: Vec::new(), order };
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi_stored = self
            .max_stored_exp()
            .into_iter()
            .chain(other.max_stored_exp())
            .max()
            .unwrap();
        let hi = match order {
            None => hi_stored,
            Some(n) => n.min(hi_stored),
        };
        let mut coeffs = vec![C::zero(); (hi - lo + 1).max(0) as usize];
        for src in [self, other] {
            for (e, c) in src.terms() {
                if e <= hi {
                    let i = (e - lo) as usize;
                    coeffs[i] = coeffs[i].clone() + c.clone();
                }
            }
        }
        match order {
            None => Series::exact_from_coeffs(lo, coeffs),
            Some(n) => Series::truncated_from_coeffs(lo, coeffs, n),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return match self.order {
                None => Self::zero(),
                Some(n) => Series { min_exp: n + 1, coeffs: Vec::new(), order: Some(n) },
            };
        }
        Series {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    /// Multiply by `t^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        Series {
            min_exp: self.min_exp + exp,
            coeffs: self.coeffs.clone(),
            order: self.order.map(|n| n + exp),
        }
    }

    /// Cauchy product. The guarantee is
    /// `min(a.order + b.support_bound, b.order + a.support_bound)`
    /// (exact factors count as unbounded); the product with the exact zero
    /// series is the exact zero.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let order = min_order(
            self.order.map(|n| n + other.support_bound()),
            other.order.map(|n| n + self.support_bound()),
        );
        let lo = self.support_bound() + other.support_bound();
        let hi = match order {
            None => match (self.max_stored_exp(), other.max_stored_exp()) {
                (Some(a), Some(b)) => a + b,
                _ => {
                    // exact * (truncated window of zeros) cannot happen with
                    // order == None; both are exact and nonzero here
                    unreachable!("exact series with empty support is the zero series")
                }
            },
            Some(n) => n,
        };
        if hi < lo {
            return match order {
                None => Self::zero(),
                Some(n) => Series { min_exp: n + 1, coeffs: Vec::new(), order: Some(n) },
            };
        }
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        // iterate the operand with fewer nonzero terms on the outside
        let (outer, inner) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        for (e1, c1) in outer.terms() {
            for (e2, c2) in inner.terms() {
                let e = e1 + e2;
                if e > hi {
                    break;
                }
                let i = (e - lo) as usize;
                coeffs[i] = coeffs[i].clone() + c1.clone() * c2.clone();
            }
        }
        match order {
            None => Series::exact_from_coeffs(lo, coeffs),
            Some(n) => Series::truncated_from_coeffs(lo, coeffs, n),
        }
    }

    /// Restrict (or, for exact series, fix) the guarantee to exactly
    /// `order`. Truncated input with a smaller guarantee is refused; the
    /// guarantee can never grow.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if let Some(have) = self.order {
            if have < order {
                return Err(Error::CannotExtendOrder { have, requested: order });
            }
        }
        let mut coeffs = Vec::new();
        if !self.coeffs.is_empty() && self.min_exp <= order {
            let keep = ((order - self.min_exp + 1) as usize).min(self.coeffs.len());
            coeffs.extend_from_slice(&self.coeffs[..keep]);
        }
        let min_exp = if self.coeffs.is_empty() { order + 1 } else { self.min_exp };
        Ok(Series::truncated_from_coeffs(min_exp, coeffs, order))
    }

    /// Multiplicative inverse.
    ///
    /// For a truncated series with nonzero leading coefficient at exponent
    /// m and order n the result has min_exp -m and order n - 2m, so that
    /// `mul(a, invert(a))` is 1 on the whole guaranteed window. Exact
    /// monomials invert exactly; other exact series must be truncated
    /// first (their inverse is an infinite series).
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        match self.order {
            None => {
                if self.coeffs.len() == 1 {
                    let c = self.coeffs[0].clone();
                    Ok(Series::monomial(-self.min_exp, C::one() / c))
                } else {
                    Err(Error::InvertRequiresTruncation)
                }
            }
            Some(order) => {
                let m = self.min_exp;
                let len = (order - m + 1) as usize;
                debug_assert_eq!(self.coeffs.len(), len);
                let lead_inv = C::one() / self.coeffs[0].clone();
                let mut inv: Vec<C> = Vec::with_capacity(len);
                inv.push(lead_inv.clone());
                for n in 1..len {
                    let mut acc = C::zero();
                    for i in 1..=n {
                        let a = &self.coeffs[i];
                        if !a.is_zero() && !inv[n - i].is_zero() {
                            acc = acc + a.clone() * inv[n - i].clone();
                        }
                    }
                    inv.push(-(lead_inv.clone() * acc));
                }
                Ok(Series::truncated_from_coeffs(-m, inv, order - 2 * m))
            }
        }
    }

    /// The q -> 1/q substitution: every stored t-exponent e becomes -e.
    /// Only well defined on a full Laurent polynomial, so truncated input
    /// is an error.
    pub fn substitute_q_inverse(&self) -> Result<Self> {
        if self.order.is_some() {
            return Err(Error::SubstitutionRequiresPolynomial);
        }
        if self.coeffs.is_empty() {
            return Ok(Self::zero());
        }
        let max = self.max_stored_exp().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Series::exact_from_coeffs(-max, coeffs))
    }

    /// Value at q = 1 (the sum of all coefficients). Only meaningful for
    /// exact series.
    pub fn eval_at_one(&self) -> Option<C> {
        if self.order.is_some() {
            return None;
        }
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc = acc + c.clone();
        }
        Some(acc)
    }

    pub fn display(&self, units: Units) -> SeriesDisplay<'_, C> {
        SeriesDisplay { series: self, units }
    }
}

/// Outcome of an exact coefficient comparison on a shared window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison<C> {
    Equal,
    Mismatch { exp_t: i64, lhs: C, rhs: C },
}

impl<C> Comparison<C> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// Compare all coefficients with t-exponent <= n. Both inputs must
/// guarantee that window; otherwise this is an `InsufficientOrder` error,
/// deliberately distinct from a mismatch verdict.
pub fn equal_to_order<C: Coefficient>(
    a: &Series<C>,
    b: &Series<C>,
    n: i64,
) -> Result<Comparison<C>> {
    for s in [a, b] {
        if let Some(have) = s.order() {
            if have < n {
                return Err(Error::InsufficientOrder { needed: n, have });
            }
        }
    }
    let lo = a.support_bound().min(b.support_bound());
    for e in lo..=n {
        let x = a.coefficient(e)?;
        let y = b.coefficient(e)?;
        if x != y {
            return Ok(Comparison::Mismatch { exp_t: e, lhs: x, rhs: y });
        }
    }
    Ok(Comparison::Equal)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Display units for exponents: raw t-powers, or q-powers (so t^3 prints
/// as q^(3/2)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    T,
    Q,
}

pub struct SeriesDisplay<'a, C> {
    series: &'a Series<C>,
    units: Units,
}

fn power_str(exp_t: i64, units: Units) -> String {
    match units {
        Units::T => match exp_t {
            0 => "1".to_string(),
            1 => "t".to_string(),
            e if e > 1 => format!("t^{}", e),
            e => format!("t^({})", e),
        },
        Units::Q => {
            if exp_t % 2 == 0 {
                let k = exp_t / 2;
                match k {
                    0 => "1".to_string(),
                    1 => "q".to_string(),
                    k if k > 1 => format!("q^{}", k),
                    k => format!("q^({})", k),
                }
            } else {
                format!("q^({}/2)", exp_t)
            }
        }
    }
}

impl<C: Coefficient> fmt::Display for SeriesDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.series;
        let mut wrote_term = false;
        for (e, c) in s.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote_term {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                f.write_str(&power_str(e, self.units))?;
            } else {
                write!(f, "{}*{}", mag, power_str(e, self.units))?;
            }
            wrote_term = true;
        }
        match s.order() {
            None => {
                if !wrote_term {
                    f.write_str("0")?;
                }
            }
            Some(n) => {
                if !wrote_term {
                    f.write_str("0")?;
                }
                write!(f, " + O({})", power_str(n + 1, self.units))?;
            }
        }
        Ok(())
    }
}
