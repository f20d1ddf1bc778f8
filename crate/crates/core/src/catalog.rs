//! Built-in pairs and the declarative pair-document format.
//!
//! Every alpha in the catalog (and in Slater's list generally) is a
//! piecewise pattern of signed monomials q^(aj^2+bj+d) supported on an
//! arithmetic progression of indices; [`SequenceSpec`] captures exactly
//! that shape, with *additive* branch semantics: an index hit by several
//! branches gets their sum. Betas are either closed Pochhammer quotients
//! ([`ClosedBeta`]), derived from the Bailey relation, or — for trinomial
//! pairs — one of the two parity s-sums / the corollary construction.
//!
//! Documents are strict JSON: unknown fields are rejected at parse time,
//! and semantic problems (reachable negative Pochhammer count, bad
//! modulus, unresolvable corollary source) are rejected at load time.
//!
//! Builtins:
//! - `A1`: Slater's entry A(1), a Bailey pair relative to 1
//!   (beta_L = 1/(q)_{2L});
//! - `A1-trinomial:n`: its corollary-derived trinomial pair, n = 0 or 1
//!   (alpha support on even indices 6j, 6j+-2);
//! - `A1-trinomial-as-printed:n`: the variant that circulates in print
//!   with alpha support on odd indices 6j+-1 — it fails verification at
//!   L = 1 and is kept as a pinned negative control;
//! - `AB-A2-trinomial:n`: the A(2)-side trinomial pair (alpha on 6j+-1
//!   and 6j+-3, opposite-parity s-sum beta);
//! - `delta:<ell>`: alpha_r = [r = 0] with derived beta.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bailey::{to_trinomial, AlphaFn, BetaFn, BinomialPair, TrinomialPair};
use crate::error::{Error, Result};
use crate::qspecial::{
    add_shifted, div_one_minus, inv_poch_finite, mul_one_minus, poch_finite, Mode, MonomialArg,
};
use crate::series::Series;
use crate::{QRat, QSeries};

// ---------------------------------------------------------------------------
// Document schema
// ---------------------------------------------------------------------------

/// One branch of a sequence pattern: indices modulus*j + offset for j in
/// [jmin, jmax] (either bound may be open) carry sign * t^(a j^2 + b j + c)
/// with `exp_t = [a, b, c]` in t-units (twice the q-exponent quadratic, so
/// that half-integer q-exponents stay integral).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Branch {
    pub modulus: i64,
    pub offset: i64,
    pub jmin: Option<i64>,
    pub jmax: Option<i64>,
    pub sign: i64,
    pub exp_t: [i64; 3],
}

/// A piecewise-quadratic monomial sequence; evaluation sums all matching
/// branches and defaults to 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub branches: Vec<Branch>,
}

/// Pochhammer factor (sign q^(k/2))_{uL+v}, stored in t-units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PochFactor {
    pub sign: i64,
    pub k_t: i64,
    pub count: [i64; 2],
}

/// Closed-form beta: t^(prefactor(L)) * prod(num) / prod(den), with the
/// prefactor a quadratic in L (t-units) and every factor count affine in
/// L. Counts must stay nonnegative for all L >= 0 (checked at load).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedBeta {
    pub prefactor_t: [i64; 3],
    pub num: Vec<PochFactor>,
    pub den: Vec<PochFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaKeyword {
    #[serde(rename = "derived")]
    Derived,
}

/// Binomial beta: the literal string "derived" or a closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Keyword(BetaKeyword),
    Closed(ClosedBeta),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TbetaMode {
    #[serde(rename = "from-corollary")]
    FromCorollary,
    #[serde(rename = "s-sum")]
    SSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Same,
    Opposite,
}

/// Trinomial beta: either rebuilt from a named binomial source through
/// the corollary construction, or one of the two parity s-sums
/// sum_{s (not)= L (2)} q^(s(s-n)/2) / [(q)_s (q)_{L-s}].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TbetaSpec {
    pub mode: TbetaMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Binomial,
    Trinomial,
}

/// Declarative on-disk description of a pair. Strict: unknown fields are
/// parse errors, inconsistent field combinations are load errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub name: String,
    pub kind: PairKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub alpha: SequenceSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tbeta: Option<TbetaSpec>,
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluate a sequence pattern at an index: the sum of sign * t^(exp(j))
/// over all branches matched by the index. Unmatched indices are 0.
pub fn alpha_eval(spec: &SequenceSpec, index: i64) -> QSeries {
    let mut acc = QSeries::zero();
    for branch in &spec.branches {
        if (index - branch.offset).rem_euclid(branch.modulus) != 0 {
            continue;
        }
        let j = (index - branch.offset) / branch.modulus;
        if branch.jmin.map_or(false, |lo| j < lo) || branch.jmax.map_or(false, |hi| j > hi) {
            continue;
        }
        let [a, b, c] = branch.exp_t;
        let e = a * j * j + b * j + c;
        acc = acc.add(&QSeries::monomial(e, QRat::from_integer(branch.sign.into())));
    }
    acc
}

impl PochFactor {
    fn arg(&self) -> MonomialArg {
        MonomialArg::new(self.sign as i8, self.k_t)
    }

    fn count_at(&self, l: i64) -> i64 {
        self.count[0] * l + self.count[1]
    }

    fn describe(&self, l: i64) -> String {
        let base = match (self.sign, self.k_t) {
            (1, 2) => "q".to_string(),
            (-1, 2) => "-q".to_string(),
            (-1, 0) => "-1".to_string(),
            (-1, -2) => "-1/q".to_string(),
            (s, k) => {
                let sgn = if s < 0 { "-" } else { "" };
                if k % 2 == 0 {
                    format!("{}q^{}", sgn, k / 2)
                } else {
                    format!("{}q^({}/2)", sgn, k)
                }
            }
        };
        format!("({})_{}", base, self.count_at(l))
    }
}

impl ClosedBeta {
    /// Evaluate at index L to (at least) the requested order.
    pub fn eval(&self, l: i64, order: i64) -> Result<QSeries> {
        let [a, b, c] = self.prefactor_t;
        let shift = a * l * l + b * l + c;
        let mut num = QSeries::one();
        for f in &self.num {
            let count = f.count_at(l);
            if count < 0 {
                return Err(Error::NegativePochhammerCount { count });
            }
            num = num.mul(&poch_finite(f.arg(), count)?);
        }
        // boost the internal order so the final guarantee is >= order even
        // when the numerator or prefactor shifts the series downward
        let num_min = num.min_exp().unwrap_or(0);
        let w = order - (num_min + shift).min(0);
        let mut acc = num.truncate(w)?;
        for f in &self.den {
            let count = f.count_at(l);
            if count < 0 {
                return Err(Error::NegativePochhammerCount { count });
            }
            let inv = if f.sign == 1 {
                inv_poch_finite(f.k_t, count, w)
            } else {
                poch_finite(f.arg(), count)?.truncate(w)?.invert()?
            };
            acc = acc.mul(&inv);
        }
        Ok(acc.shift(shift))
    }

    /// Human-readable instance at index L, e.g. "1/(q)_6".
    pub fn describe(&self, l: i64) -> String {
        let [a, b, c] = self.prefactor_t;
        let shift = a * l * l + b * l + c;
        let mut num_parts: Vec<String> = Vec::new();
        if shift != 0 {
            if shift % 2 == 0 {
                num_parts.push(format!("q^{}", shift / 2));
            } else {
                num_parts.push(format!("q^({}/2)", shift));
            }
        }
        num_parts.extend(self.num.iter().map(|f| f.describe(l)));
        let num = if num_parts.is_empty() { "1".to_string() } else { num_parts.join(" ") };
        if self.den.is_empty() {
            num
        } else {
            let den: Vec<String> = self.den.iter().map(|f| f.describe(l)).collect();
            format!("{}/{}", num, den.join(" "))
        }
    }
}

/// The parity s-sum tbeta_L = sum q^(s(s-n)/2) / [(q)_s (q)_{L-s}] over
/// 0 <= s <= L with s = L (mod 2) (`Same`) or s != L (mod 2)
/// (`Opposite`), maintained incrementally over s.
fn s_sum_beta(parity: Parity, n: Mode, l: i64, order: i64) -> QSeries {
    let start = match parity {
        Parity::Same => l.rem_euclid(2),
        Parity::Opposite => (l + 1).rem_euclid(2),
    };
    let len = (order + 1) as usize;
    let mut acc = vec![QRat::zero(); len];
    if start > l {
        return Series::truncated_from_coeffs(0, acc, order);
    }
    let mut w = inv_poch_finite(2, l - start, order).window_vec(0, order);
    if start == 1 {
        div_one_minus(&mut w, 2);
    }
    let mut s = start;
    loop {
        let shift = s * (s - n.as_i64());
        if shift <= order {
            add_shifted(&mut acc, &w, shift);
        }
        if s + 2 > l {
            break;
        }
        div_one_minus(&mut w, 2 * (s + 1));
        div_one_minus(&mut w, 2 * (s + 2));
        mul_one_minus(&mut w, 2 * (l - s));
        mul_one_minus(&mut w, 2 * (l - s - 1));
        s += 2;
    }
    Series::truncated_from_coeffs(0, acc, order)
}

// ---------------------------------------------------------------------------
// Loading, validation, instantiation
// ---------------------------------------------------------------------------

/// Parse and validate a pair document. Parse errors carry serde's
/// line/column diagnostics; semantic errors are reported separately.
pub fn load_pair_document(text: &str) -> Result<PairDocument> {
    let doc: PairDocument =
        serde_json::from_str(text).map_err(|e| Error::DocumentParse(e.to_string()))?;
    validate_document(&doc)?;
    Ok(doc)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::DocumentInvalid(msg.into())
}

fn validate_document(doc: &PairDocument) -> Result<()> {
    for (i, b) in doc.alpha.branches.iter().enumerate() {
        if b.modulus < 1 {
            return Err(invalid(format!("alpha branch {i}: modulus must be >= 1")));
        }
        if b.sign != 1 && b.sign != -1 {
            return Err(invalid(format!("alpha branch {i}: sign must be 1 or -1")));
        }
        if let (Some(lo), Some(hi)) = (b.jmin, b.jmax) {
            if lo > hi {
                return Err(invalid(format!("alpha branch {i}: empty j-range {lo}..{hi}")));
            }
        }
    }
    match doc.kind {
        PairKind::Binomial => {
            let ell = doc.ell.ok_or_else(|| invalid("binomial document needs 'ell'"))?;
            if ell < 0 {
                return Err(invalid("'ell' must be nonnegative"));
            }
            if doc.n.is_some() || doc.tbeta.is_some() {
                return Err(invalid("binomial document must not carry 'n' or 'tbeta'"));
            }
            let beta =
                doc.beta.as_ref().ok_or_else(|| invalid("binomial document needs 'beta'"))?;
            if let BetaSpec::Closed(closed) = beta {
                validate_closed_beta(closed)?;
            }
        }
        PairKind::Trinomial => {
            let n = doc.n.ok_or_else(|| invalid("trinomial document needs 'n'"))?;
            Mode::try_new(n).map_err(|_| invalid("'n' must be 0 or 1"))?;
            if doc.ell.is_some() || doc.beta.is_some() {
                return Err(invalid("trinomial document must not carry 'ell' or 'beta'"));
            }
            let tbeta =
                doc.tbeta.as_ref().ok_or_else(|| invalid("trinomial document needs 'tbeta'"))?;
            match tbeta.mode {
                TbetaMode::FromCorollary => {
                    if tbeta.source.is_none() {
                        return Err(invalid("from-corollary tbeta needs 'source'"));
                    }
                    if tbeta.parity.is_some() {
                        return Err(invalid("from-corollary tbeta must not carry 'parity'"));
                    }
                }
                TbetaMode::SSum => {
                    if tbeta.parity.is_none() {
                        return Err(invalid("s-sum tbeta needs 'parity'"));
                    }
                    if tbeta.source.is_some() {
                        return Err(invalid("s-sum tbeta must not carry 'source'"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn validate_closed_beta(closed: &ClosedBeta) -> Result<()> {
    for (which, factors) in [("num", &closed.num), ("den", &closed.den)] {
        for (i, f) in factors.iter().enumerate() {
            if f.sign != 1 && f.sign != -1 {
                return Err(invalid(format!("beta {which} factor {i}: sign must be 1 or -1")));
            }
            // count = uL + v must be nonnegative for every L >= 0
            let [u, v] = f.count;
            if u < 0 || v < 0 {
                return Err(invalid(format!(
                    "beta {which} factor {i}: count {u}L+{v} goes negative for some L >= 0"
                )));
            }
        }
    }
    for (i, f) in closed.den.iter().enumerate() {
        if f.k_t < 1 {
            return Err(invalid(format!(
                "beta den factor {i}: argument exponent {} not invertible as a power series",
                f.k_t
            )));
        }
    }
    Ok(())
}

/// A catalog pair: binomial or trinomial.
#[derive(Clone, Debug)]
pub enum Pair {
    Binomial(BinomialPair),
    Trinomial(TrinomialPair),
}

impl Pair {
    pub fn label(&self) -> &str {
        match self {
            Pair::Binomial(p) => p.label(),
            Pair::Trinomial(p) => p.label(),
        }
    }

    pub fn as_binomial(&self) -> Option<&BinomialPair> {
        match self {
            Pair::Binomial(p) => Some(p),
            Pair::Trinomial(_) => None,
        }
    }

    pub fn as_trinomial(&self) -> Option<&TrinomialPair> {
        match self {
            Pair::Trinomial(p) => Some(p),
            Pair::Binomial(_) => None,
        }
    }
}

/// Wire a validated document into an evaluable pair.
pub fn instantiate(doc: &PairDocument) -> Result<Pair> {
    validate_document(doc)?;
    let spec = doc.alpha.clone();
    let alpha: AlphaFn = Arc::new(move |i| alpha_eval(&spec, i));
    match doc.kind {
        PairKind::Binomial => {
            let ell = doc.ell.expect("validated");
            let beta: BetaFn = match doc.beta.clone().expect("validated") {
                BetaSpec::Keyword(BetaKeyword::Derived) => {
                    let spec = doc.alpha.clone();
                    Arc::new(move |l, order| {
                        crate::bailey::beta_from_alpha(&|r| alpha_eval(&spec, r), ell, l, order)
                            .expect("derived beta evaluation")
                    })
                }
                BetaSpec::Closed(closed) => {
                    Arc::new(move |l, order| closed.eval(l, order).expect("validated closed beta"))
                }
            };
            Ok(Pair::Binomial(BinomialPair::new(doc.name.clone(), ell, alpha, beta)?))
        }
        PairKind::Trinomial => {
            let n = Mode::try_new(doc.n.expect("validated"))?;
            let tbeta = doc.tbeta.clone().expect("validated");
            let beta: BetaFn = match tbeta.mode {
                TbetaMode::SSum => {
                    let parity = tbeta.parity.expect("validated");
                    Arc::new(move |l, order| s_sum_beta(parity, n, l, order))
                }
                TbetaMode::FromCorollary => {
                    let source_name = tbeta.source.expect("validated");
                    let source = match builtin(&source_name)? {
                        Pair::Binomial(p) => p,
                        Pair::Trinomial(_) => {
                            return Err(invalid(format!(
                                "corollary source '{source_name}' must be a binomial pair"
                            )))
                        }
                    };
                    let derived = to_trinomial(&source, n);
                    Arc::new(move |l, order| derived.beta(l, order))
                }
            };
            Ok(Pair::Trinomial(TrinomialPair::new(doc.name.clone(), n, alpha, beta)))
        }
    }
}

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

fn branch(
    modulus: i64,
    offset: i64,
    jmin: Option<i64>,
    jmax: Option<i64>,
    sign: i64,
    exp_t: [i64; 3],
) -> Branch {
    Branch { modulus, offset, jmin, jmax, sign, exp_t }
}

/// Slater's entry A(1): a Bailey pair relative to 1 (ell = 0) with
/// beta_L = 1/(q)_{2L}. The four alpha cases are transcribed verbatim,
/// relying on the additive branch semantics for the doubled L = 3j index.
fn a1_document() -> PairDocument {
    PairDocument {
        name: "A1".into(),
        kind: PairKind::Binomial,
        ell: Some(0),
        n: None,
        alpha: SequenceSpec {
            branches: vec![
                branch(3, 0, Some(0), None, 1, [12, -2, 0]),
                branch(3, 0, Some(1), None, 1, [12, 2, 0]),
                branch(3, -1, Some(1), None, -1, [12, -10, 2]),
                branch(3, 1, Some(0), None, -1, [12, 10, 2]),
            ],
        },
        beta: Some(BetaSpec::Closed(ClosedBeta {
            prefactor_t: [0, 0, 0],
            num: vec![],
            den: vec![PochFactor { sign: 1, k_t: 2, count: [2, 0] }],
        })),
        tbeta: None,
    }
}

/// The corollary image of A(1): alpha interleaved onto even indices
/// (support 6j and 6j+-2), beta rebuilt from the A(1) beta.
fn a1_trinomial_document(n: i64) -> PairDocument {
    PairDocument {
        name: format!("A1-trinomial:{n}"),
        kind: PairKind::Trinomial,
        ell: None,
        n: Some(n),
        alpha: SequenceSpec {
            branches: vec![
                branch(6, 0, Some(0), None, 1, [12, -2, 0]),
                branch(6, 0, Some(1), None, 1, [12, 2, 0]),
                branch(6, -2, Some(1), None, -1, [12, -10, 2]),
                branch(6, 2, Some(0), None, -1, [12, 10, 2]),
            ],
        },
        beta: None,
        tbeta: Some(TbetaSpec {
            mode: TbetaMode::FromCorollary,
            parity: None,
            source: Some("A1".into()),
        }),
    }
}

/// The same pair as it circulates in print, with the negative alpha
/// branches on odd indices 6j+-1. Fails verification at L = 1; kept as a
/// pinned negative control.
fn a1_trinomial_as_printed_document(n: i64) -> PairDocument {
    PairDocument {
        name: format!("A1-trinomial-as-printed:{n}"),
        kind: PairKind::Trinomial,
        ell: None,
        n: Some(n),
        alpha: SequenceSpec {
            branches: vec![
                branch(6, 0, Some(0), None, 1, [12, -2, 0]),
                branch(6, 0, Some(1), None, 1, [12, 2, 0]),
                branch(6, -1, Some(1), None, -1, [12, -10, 2]),
                branch(6, 1, Some(0), None, -1, [12, 10, 2]),
            ],
        },
        beta: None,
        tbeta: Some(TbetaSpec { mode: TbetaMode::SSum, parity: Some(Parity::Same), source: None }),
    }
}

/// The A(2)-side trinomial pair: alpha on 6j+-1 (positive) and 6j+-3
/// (negative), opposite-parity s-sum beta.
fn ab_a2_trinomial_document(n: i64) -> PairDocument {
    PairDocument {
        name: format!("AB-A2-trinomial:{n}"),
        kind: PairKind::Trinomial,
        ell: None,
        n: Some(n),
        alpha: SequenceSpec {
            branches: vec![
                branch(6, -1, Some(1), None, 1, [12, -2, 0]),
                branch(6, 1, Some(0), None, 1, [12, 2, 0]),
                branch(6, -3, Some(1), None, -1, [12, -10, 2]),
                branch(6, 3, Some(0), None, -1, [12, 10, 2]),
            ],
        },
        beta: None,
        tbeta: Some(TbetaSpec {
            mode: TbetaMode::SSum,
            parity: Some(Parity::Opposite),
            source: None,
        }),
    }
}

fn delta_document(ell: i64) -> PairDocument {
    PairDocument {
        name: format!("delta:{ell}"),
        kind: PairKind::Binomial,
        ell: Some(ell),
        n: None,
        alpha: SequenceSpec { branches: vec![branch(1, 0, Some(0), Some(0), 1, [0, 0, 0])] },
        beta: Some(BetaSpec::Keyword(BetaKeyword::Derived)),
        tbeta: None,
    }
}

/// Builtin names accepted by [`builtin`]; `delta:<ell>` stands for any
/// nonnegative ell.
pub fn builtin_names() -> Vec<String> {
    vec![
        "A1".to_string(),
        "A1-trinomial:0".to_string(),
        "A1-trinomial:1".to_string(),
        "A1-trinomial-as-printed:0".to_string(),
        "A1-trinomial-as-printed:1".to_string(),
        "AB-A2-trinomial:0".to_string(),
        "AB-A2-trinomial:1".to_string(),
        "delta:<ell>".to_string(),
    ]
}

/// The document behind a builtin name.
pub fn builtin_document(name: &str) -> Result<PairDocument> {
    if let Some(rest) = name.strip_prefix("delta:") {
        let ell: i64 = rest.parse().map_err(|_| Error::UnknownBuiltin(name.to_string()))?;
        if ell < 0 {
            return Err(Error::UnknownBuiltin(name.to_string()));
        }
        return Ok(delta_document(ell));
    }
    let doc = match name {
        "A1" => a1_document(),
        "A1-trinomial:0" => a1_trinomial_document(0),
        "A1-trinomial:1" => a1_trinomial_document(1),
        "A1-trinomial-as-printed:0" => a1_trinomial_as_printed_document(0),
        "A1-trinomial-as-printed:1" => a1_trinomial_as_printed_document(1),
        "AB-A2-trinomial:0" => ab_a2_trinomial_document(0),
        "AB-A2-trinomial:1" => ab_a2_trinomial_document(1),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(doc)
}

/// A fully wired builtin pair.
pub fn builtin(name: &str) -> Result<Pair> {
    instantiate(&builtin_document(name)?)
}

/// Canonical serialization of a document (stable field order, pretty
/// JSON, trailing newline).
pub fn document_to_json(doc: &PairDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bailey::{verify_binomial_pair, verify_trinomial_pair, Outcome};
    use crate::qrat;
    use crate::series::equal_to_order;

    #[test]
    fn alpha_eval_a1_instances() {
        let spec = a1_document().alpha;
        // index 0: the j=0 case of the 3j branch
        assert_eq!(alpha_eval(&spec, 0), QSeries::one());
        // index 1: j=0 of the 3j+1 branch, -q
        assert_eq!(alpha_eval(&spec, 1), QSeries::monomial(2, qrat(-1)));
        // index 2: j=1 of the 3j-1 branch, -q^2
        assert_eq!(alpha_eval(&spec, 2), QSeries::monomial(4, qrat(-1)));
        // index 3: both 3j branches at j=1, q^5 + q^7
        let expect = QSeries::monomial(10, qrat(1)).add(&QSeries::monomial(14, qrat(1)));
        assert_eq!(alpha_eval(&spec, 3), expect);
    }

    #[test]
    fn a1_beta_is_inverse_even_pochhammer() {
        let order = 60;
        let pair = builtin("A1").unwrap();
        let pair = pair.as_binomial().unwrap();
        let b3 = pair.beta(3, order);
        let expect = inv_poch_finite(2, 6, order);
        assert!(equal_to_order(&b3, &expect, order).unwrap().is_equal());
    }

    #[test]
    fn a1_is_a_pair_relative_to_one_not_q() {
        let order = 80;
        let a1 = builtin("A1").unwrap();
        let a1 = a1.as_binomial().unwrap();
        let report = verify_binomial_pair(a1, 6, order);
        assert!(report.passed(), "A1 failed:\n{report}");

        // the ell = 1 reading breaks immediately at L = 1
        let wrong = BinomialPair::new(
            "A1-ell1",
            1,
            Arc::new({
                let p = a1.clone();
                move |r| p.alpha(r)
            }),
            Arc::new({
                let p = a1.clone();
                move |l, order| p.beta(l, order)
            }),
        )
        .unwrap();
        let report = verify_binomial_pair(&wrong, 3, order);
        assert_eq!(report.outcome(), Outcome::Fail);
        assert_eq!(report.first_failure().unwrap().index, 1);
    }

    #[test]
    fn a2_tbeta_single_term() {
        // tbeta_1 of the A(2) pair: single s=0 term 1/(q)_1
        let order = 40;
        let pair = builtin("AB-A2-trinomial:0").unwrap();
        let pair = pair.as_trinomial().unwrap();
        let expect = inv_poch_finite(2, 1, order);
        assert!(equal_to_order(&pair.beta(1, order), &expect, order).unwrap().is_equal());
    }

    #[test]
    fn a1_trinomial_corollary_matches_s_sum() {
        // for A(1) the corollary beta and the same-parity s-sum coincide
        // because beta_L = 1/(q)_{2L}
        let order = 60;
        let pair = builtin("A1-trinomial:0").unwrap();
        let pair = pair.as_trinomial().unwrap();
        for l in 0..=10 {
            let direct = s_sum_beta(Parity::Same, Mode::Zero, l, order);
            assert!(
                equal_to_order(&pair.beta(l, order), &direct, order).unwrap().is_equal(),
                "mismatch at L={l}"
            );
        }
    }

    #[test]
    fn a1_trinomial_alpha_interleaves_a1() {
        let a1 = builtin("A1").unwrap();
        let a1 = a1.as_binomial().unwrap();
        let tri = builtin("A1-trinomial:0").unwrap();
        let tri = tri.as_trinomial().unwrap();
        let derived = to_trinomial(a1, Mode::Zero);
        for i in 0..=40 {
            assert_eq!(tri.alpha(i), derived.alpha(i), "alpha branch mismatch at index {i}");
        }
    }

    #[test]
    fn printed_variant_differs_from_corrected() {
        let tri = builtin("A1-trinomial:0").unwrap();
        let tri = tri.as_trinomial().unwrap();
        let printed = builtin("A1-trinomial-as-printed:0").unwrap();
        let printed = printed.as_trinomial().unwrap();
        // the printed variant puts the negative branches on odd indices
        assert!(tri.alpha(1).is_zero());
        assert_eq!(printed.alpha(1), QSeries::monomial(2, qrat(-1)));
        assert_eq!(tri.alpha(2), QSeries::monomial(2, qrat(-1)));
        assert!(printed.alpha(2).is_zero());
    }

    #[test]
    fn printed_variant_fails_at_l1() {
        let printed = builtin("A1-trinomial-as-printed:0").unwrap();
        let report = verify_trinomial_pair(printed.as_trinomial().unwrap(), 3, 60);
        assert_eq!(report.outcome(), Outcome::Fail);
        assert_eq!(report.first_failure().unwrap().index, 1);
    }

    #[test]
    fn builtin_round_trip_through_documents() {
        for name in ["A1", "A1-trinomial:0", "AB-A2-trinomial:1", "delta:2"] {
            let doc = builtin_document(name).unwrap();
            let json = document_to_json(&doc);
            let reloaded = load_pair_document(&json).unwrap();
            assert_eq!(doc, reloaded);
            assert_eq!(json, document_to_json(&reloaded));
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn document_strictness() {
        let json = document_to_json(&a1_document());
        // unknown field rejected at parse
        let bad = json.replace("\"name\"", "\"gamma\": 1,\n  \"name\"");
        assert!(matches!(load_pair_document(&bad), Err(Error::DocumentParse(_))));
        // reachable negative count rejected at load
        let mut doc = a1_document();
        if let Some(BetaSpec::Closed(c)) = doc.beta.as_mut() {
            c.den[0].count = [2, -1];
        }
        let json = document_to_json(&doc);
        assert!(matches!(load_pair_document(&json), Err(Error::DocumentInvalid(_))));
        // bad modulus
        let mut doc = a1_document();
        doc.alpha.branches[0].modulus = 0;
        assert!(matches!(
            load_pair_document(&document_to_json(&doc)),
            Err(Error::DocumentInvalid(_))
        ));
        // bad n
        let mut doc = a1_trinomial_document(0);
        doc.n = Some(2);
        assert!(matches!(
            load_pair_document(&document_to_json(&doc)),
            Err(Error::DocumentInvalid(_))
        ));
    }

    #[test]
    fn closed_beta_describe() {
        let doc = a1_document();
        let Some(BetaSpec::Closed(closed)) = doc.beta else { panic!() };
        assert_eq!(closed.describe(3), "1/(q)_6");
    }
}
