//! The special functions of the q-trinomial world.
//!
//! Built here, all as exact objects over the series ring:
//!
//! - finite and infinite q-Pochhammer symbols (a)_n with monomial argument
//!   a = sign * t^k;
//! - the q-trinomial coefficient: the j-sum with summand
//!   q^(j(j+B)) (q)_L / [(q)_j (q)_{j+A} (q)_{L-2j-A}], an exact Laurent
//!   polynomial for every integer A, B;
//! - T_n(L,A) = q^((L(L-n)-A(A-n))/2) * trinomial(L, A-n, A) evaluated at
//!   q -> 1/q, for n in {0,1};
//! - Q_n(L,A) = T_n(L,A)/(q)_L computed independently through the s-sum
//!   sum_{s = L+A (mod 2)} q^(s(s-n)/2) / [(q)_{(L-A-s)/2} (q)_{(L+A-s)/2} (q)_s].
//!
//! The s-sum is the primary route for Q_n (it is manifestly symmetric in
//! A -> -A, which the lemma checks need near the boundary); T_n/(q)_L is
//! the independent cross-check route.
//!
//! Everywhere the negative-index convention 1/(q)_m = 0 for m < 0 is
//! implemented by skipping the offending terms; it is what makes the
//! coefficients vanish outside -L <= A <= L.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::Series;
use crate::{QRat, QSeries};

/// Trinomial relative mode: the n in T_n, Q_n and "pair relative to n".
/// Restricted to 0 and 1; the s-sum representation exists only for these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Zero,
    One,
}

impl Mode {
    pub fn try_new(n: i64) -> Result<Mode> {
        match n {
            0 => Ok(Mode::Zero),
            1 => Ok(Mode::One),
            _ => Err(Error::InvalidMode(n)),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Mode::Zero => 0,
            Mode::One => 1,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// Pochhammer argument a = sign * t^k (t-units, so k = 2 is the plain q).
///
/// Covers every argument used downstream: (q)_n is (+1, 2), (-1)_L is
/// (-1, 0), (-q)_n is (-1, 2), (-1/q)_L is (-1, -2), and (q^(l+1))_m is
/// (+1, 2l+2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialArg {
    sign: i8,
    k: i64,
}

impl MonomialArg {
    /// `sign` must be +1 or -1.
    pub fn new(sign: i8, k: i64) -> MonomialArg {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        MonomialArg { sign, k }
    }

    pub fn q() -> MonomialArg {
        MonomialArg { sign: 1, k: 2 }
    }

    pub fn minus_one() -> MonomialArg {
        MonomialArg { sign: -1, k: 0 }
    }

    pub fn minus_q() -> MonomialArg {
        MonomialArg { sign: -1, k: 2 }
    }

    pub fn minus_q_inverse() -> MonomialArg {
        MonomialArg { sign: -1, k: -2 }
    }

    /// The argument aq for a = q^ell, i.e. q^(ell+1).
    pub fn q_shifted(ell: i64) -> MonomialArg {
        MonomialArg { sign: 1, k: 2 * ell + 2 }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The exact binomial 1 - sign * t^(k + 2i), the i-th product factor.
    pub(crate) fn factor(&self, i: i64) -> QSeries {
        let e = self.k + 2 * i;
        let c = -QRat::from_integer(self.sign.into());
        if e == 0 {
            Series::constant(QRat::one() + c)
        } else {
            Series::monomial(0, QRat::one()).add(&Series::monomial(e, c))
        }
    }
}

/// Finite Pochhammer (a)_count = prod_{i=0}^{count-1} (1 - sign t^(k+2i)),
/// an exact Laurent polynomial. The empty product is 1; a negative count
/// is an error (callers implement the vanishing convention by skipping
/// terms instead).
pub fn poch_finite(arg: MonomialArg, count: i64) -> Result<QSeries> {
    if count < 0 {
        return Err(Error::NegativePochhammerCount { count });
    }
    let mut acc = QSeries::one();
    for i in 0..count {
        acc = acc.mul(&arg.factor(i));
    }
    Ok(acc)
}

/// Infinite Pochhammer (a)_inf truncated at `order` t-units. The argument
/// must tend to zero as a formal series (k >= 1), otherwise the product
/// does not converge formally.
pub fn poch_infinite(arg: MonomialArg, order: i64) -> Result<QSeries> {
    if arg.k < 1 {
        return Err(Error::DivergentProduct { k: arg.k });
    }
    let mut acc = QSeries::one().truncate(order)?;
    let mut i = 0;
    while arg.k + 2 * i <= order {
        acc = acc.mul(&arg.factor(i));
        i += 1;
    }
    acc.truncate(order)
}

// ---------------------------------------------------------------------------
// Dense-window kernels
//
// The hot paths (the s-sums and the trinomial j-terms) work on a dense
// coefficient window [0..=order] in t-units. Multiplying or dividing by a
// single Pochhammer factor (1 - t^g) is a linear-time prefix recurrence,
// which is what makes the desk-scale sweeps cheap.
// ---------------------------------------------------------------------------

/// In place: v *= (1 - t^g), on a window starting at t^0.
pub(crate) fn mul_one_minus(v: &mut [QRat], g: i64) {
    assert!(g > 0);
    let g = g as usize;
    if g >= v.len() {
        return;
    }
    for i in (g..v.len()).rev() {
        if !v[i - g].is_zero() {
            v[i] = v[i].clone() - v[i - g].clone();
        }
    }
}

/// In place: v /= (1 - t^g), on a window starting at t^0.
pub(crate) fn div_one_minus(v: &mut [QRat], g: i64) {
    assert!(g > 0);
    let g = g as usize;
    for i in g..v.len() {
        if !v[i - g].is_zero() {
            v[i] = v[i].clone() + v[i - g].clone();
        }
    }
}

pub(crate) fn add_shifted(acc: &mut [QRat], v: &[QRat], shift: i64) {
    let shift = shift as usize;
    for (i, c) in v.iter().enumerate() {
        let j = i + shift;
        if j >= acc.len() {
            break;
        }
        if !c.is_zero() {
            acc[j] = acc[j].clone() + c.clone();
        }
    }
}

/// In place: v /= (q)_m, one factor at a time.
pub(crate) fn div_poch_window(v: &mut [QRat], m: i64) {
    for i in 1..=m {
        div_one_minus(v, 2 * i);
    }
}

pub(crate) fn add_scaled_shifted(acc: &mut [QRat], v: &[QRat], shift: i64, scale: &QRat) {
    if shift >= acc.len() as i64 {
        return;
    }
    let shift = shift as usize;
    for (i, c) in v.iter().enumerate() {
        let j = i + shift;
        if j >= acc.len() {
            break;
        }
        if !c.is_zero() {
            acc[j] = acc[j].clone() + c.clone() * scale.clone();
        }
    }
}

// ---------------------------------------------------------------------------
// Memoized inverted Pochhammers
// ---------------------------------------------------------------------------

type InvPochKey = (i64, i64, i64); // (k_t, m, order)

fn inv_poch_cache() -> &'static Mutex<HashMap<InvPochKey, QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<InvPochKey, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// 1/(a)_m truncated at `order`, for a = t^k with k >= 1 (so (q)_m is
/// k = 2, (q^(l+1))_m is k = 2l+2). Cached per (k, m, order); the cache is
/// observationally pure.
pub fn inv_poch_finite(k_t: i64, m: i64, order: i64) -> QSeries {
    assert!(k_t >= 1, "inverted Pochhammer needs an argument vanishing at t=0");
    assert!(m >= 0 && order >= 0);
    if m == 0 {
        return QSeries::one();
    }
    let mut cache = inv_poch_cache().lock().unwrap();
    if let Some(hit) = cache.get(&(k_t, m, order)) {
        return hit.clone();
    }
    // extend from the largest cached prefix
    let mut j = m - 1;
    while j > 0 && !cache.contains_key(&(k_t, j, order)) {
        j -= 1;
    }
    let mut v = if j == 0 {
        let mut v = vec![QRat::zero(); (order + 1) as usize];
        v[0] = QRat::one();
        v
    } else {
        cache[&(k_t, j, order)].window_vec(0, order)
    };
    while j < m {
        div_one_minus(&mut v, k_t + 2 * j);
        j += 1;
        cache.insert((k_t, j, order), Series::truncated_from_coeffs(0, v.clone(), order));
    }
    cache[&(k_t, m, order)].clone()
}

// ---------------------------------------------------------------------------
// q-trinomial coefficients
// ---------------------------------------------------------------------------

/// One multinomial quotient (q)_l / [(q)_x (q)_y (q)_z] with x+y+z = l,
/// as an exact polynomial. The largest of the three indices is cancelled
/// against (q)_l, leaving the Pochhammer tail (q^(m+1))_{l-m}; the two
/// remaining denominators are divided off factor by factor. The quotient
/// is a polynomial of t-degree exactly 2(xy+xz+yz), and the computed
/// window extends beyond that bound, so vanishing up there is asserted —
/// a free check that the division was remainder-free.
fn multinomial_quotient(l: i64, x: i64, y: i64, z: i64) -> Result<QSeries> {
    debug_assert!(x >= 0 && y >= 0 && z >= 0 && x + y + z == l);
    let mut idx = [x, y, z];
    idx.sort_unstable();
    let [u, v, m] = idx;
    let window = l * (l + 1) - m * (m + 1);
    let deg = 2 * (x * y + x * z + y * z);
    debug_assert!(deg <= window);
    let mut w = vec![QRat::zero(); (window + 1) as usize];
    w[0] = QRat::one();
    for i in (m + 1)..=l {
        mul_one_minus(&mut w, 2 * i);
    }
    for i in 1..=u {
        div_one_minus(&mut w, 2 * i);
    }
    for i in 1..=v {
        div_one_minus(&mut w, 2 * i);
    }
    for e in (deg + 1)..=window {
        if !w[e as usize].is_zero() {
            return Err(Error::InexactQuotient { exp: e });
        }
    }
    debug_assert!(w.iter().all(|c| c.is_integer()), "multinomial coefficients must be integral");
    w.truncate((deg + 1) as usize);
    Ok(Series::exact_from_coeffs(0, w))
}

/// The q-trinomial coefficient: the exact Laurent polynomial
///
///   sum_j q^(j(j+B)) (q)_L / [(q)_j (q)_{j+A} (q)_{L-2j-A}]
///
/// with j running over max(0,-A) <= j <= floor((L-A)/2) (terms whose
/// Pochhammer index would go negative vanish). Zero for |A| > L; a genuine
/// Laurent polynomial when B is negative enough for some q^(j(j+B)) shift
/// to dip below zero.
pub fn trinomial(l: i64, b: i64, a: i64) -> Result<QSeries> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let jmin = 0.max(-a);
    let jmax = (l - a).div_euclid(2);
    let mut acc = QSeries::zero();
    for j in jmin..=jmax {
        let term = multinomial_quotient(l, j, j + a, l - 2 * j - a)?;
        acc = acc.add(&term.shift(2 * j * (j + b)));
    }
    Ok(acc)
}

/// Classical trinomial coefficient: the coefficient of x^(L+A) in
/// (1+x+x^2)^L, by integer polynomial expansion. Test oracle for the
/// q = 1 specialization; zero for |A| > L.
pub fn classical_trinomial(l: i64, a: i64) -> BigInt {
    assert!(l >= 0, "classical_trinomial needs L >= 0");
    if a.abs() > l {
        return BigInt::zero();
    }
    let mut coeffs: Vec<BigInt> = vec![BigInt::one()];
    for _ in 0..l {
        let mut next = vec![BigInt::zero(); coeffs.len() + 2];
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                for d in 0..3 {
                    next[i + d] = &next[i + d] + c;
                }
            }
        }
        coeffs = next;
    }
    coeffs[(l + a) as usize].clone()
}

/// T_n(L,A): the trinomial coefficient with B = A-n evaluated at q -> 1/q,
/// shifted by t^(L(L-n) - A(A-n)). Exact; empirically a polynomial with
/// nonnegative t-exponents for |A| <= L.
pub fn t_n(mode: Mode, l: i64, a: i64) -> Result<QSeries> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let n = mode.as_i64();
    let p = trinomial(l, a - n, a)?;
    let flipped = p.substitute_q_inverse()?;
    Ok(flipped.shift(l * (l - n) - a * (a - n)))
}

type QnKey = (Mode, i64, i64, i64);

fn qn_cache() -> &'static Mutex<HashMap<QnKey, QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<QnKey, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Q_n(L,A) = T_n(L,A)/(q)_L through the s-sum representation
///
///   sum_{s >= 0, s = L+A (mod 2)} q^(s(s-n)/2)
///       / [(q)_{(L-A-s)/2} (q)_{(L+A-s)/2} (q)_s],
///
/// truncated at `order` t-units. The sum is finite (s <= L - |A|),
/// manifestly symmetric under A -> -A, and empty — hence zero — for
/// |A| > L or L < 0.
///
/// The running product over s is maintained incrementally: stepping
/// s -> s+2 multiplies by two Pochhammer factors and divides by two, each
/// a linear-time window recurrence.
pub fn q_n(mode: Mode, l: i64, a: i64, order: i64) -> QSeries {
    assert!(order >= 0);
    let aa = a.abs();
    if l < 0 || aa > l {
        return QSeries::zero();
    }
    let key = (mode, l, aa, order);
    if let Some(hit) = qn_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let n = mode.as_i64();
    let parity = (l + aa) % 2;
    let s_max = l - aa;
    // the single empty term: Q_n(0,0) is exactly 1
    if l == 0 {
        return QSeries::one();
    }
    let len = (order + 1) as usize;
    let mut acc = vec![QRat::zero(); len];
    // r = window of 1/[(q)_{m1} (q)_{m2} (q)_s] at s = parity
    let mut m1 = (l - aa - parity) / 2;
    let mut m2 = (l + aa - parity) / 2;
    let mut r = inv_poch_finite(2, m1.max(0), order).window_vec(0, order);
    for i in 1..=m2 {
        div_one_minus(&mut r, 2 * i);
    }
    if parity == 1 {
        div_one_minus(&mut r, 2);
    }
    let mut s = parity;
    loop {
        let shift = s * (s - n);
        if shift > order {
            break;
        }
        add_shifted(&mut acc, &r, shift);
        if s + 2 > s_max {
            break;
        }
        mul_one_minus(&mut r, 2 * m1);
        mul_one_minus(&mut r, 2 * m2);
        div_one_minus(&mut r, 2 * (s + 1));
        div_one_minus(&mut r, 2 * (s + 2));
        m1 -= 1;
        m2 -= 1;
        s += 2;
    }
    let result = Series::truncated_from_coeffs(0, acc, order);
    qn_cache().lock().unwrap().insert(key, result.clone());
    result
}
