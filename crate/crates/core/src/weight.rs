//! The weighting function 𝒲 that makes D10 abelian-normal, plus the pure
//! (multinomial) weighting.
//!
//! * Words without binary digits weigh their number of distinct rearrangements.
//! * A single binary digit weighs 1.
//! * A binary word `b` with `|b| >= 2` weighs
//!   `64 · 10^|b| · Σ_{k>=|b|} 10^-(k+2) · Σ_{j=0_b}^{k-1_b} C(k, j)`.
//!   The inner sum counts binary words of length `k` with at least `0_b` zeros
//!   and `1_b` ones. The 64 counts the `8 · 8` choices of non-binary digits
//!   that bracket such a maximal run.
//! * Mixed words weigh their multinomial plus `10^|w|` times the difference of
//!   the limiting Case 2 and Case 1 frequencies. Those limits have no closed
//!   form here, so the value is an estimate from a finite prefix and is marked
//!   as such.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cases::{case_counts, CaseOptions};
use crate::error::{Error, Result};
use crate::word::Word;

/// Which regime of 𝒲 produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Pure,
    Nonbinary,
    SingleBinary,
    BinarySeries,
    MixedEstimated,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Pure => "pure",
            CaseTag::Nonbinary => "nonbinary",
            CaseTag::SingleBinary => "single-binary",
            CaseTag::BinarySeries => "binary-series",
            CaseTag::MixedEstimated => "mixed-estimated",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error attached to a weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ErrorBound {
    /// The true value lies within this absolute distance.
    Certified(f64),
    /// Finite-prefix estimate with no known bound.
    Uncertified,
}

impl fmt::Display for ErrorBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorBound::Certified(e) => write!(f, "{e:e}"),
            ErrorBound::Uncertified => f.write_str("uncertified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightValue {
    pub value: f64,
    pub abs_error: ErrorBound,
    pub case_tag: CaseTag,
    /// Prefix length behind a mixed-case estimate.
    pub estimator_n: Option<u64>,
    /// Exact value when one is known (closed forms and truncated series).
    pub exact: Option<BigRational>,
}

impl WeightValue {
    fn exact(value: BigRational, case_tag: CaseTag) -> Self {
        WeightValue {
            value: to_f64(&value),
            abs_error: ErrorBound::Certified(0.0),
            case_tag,
            estimator_n: None,
            exact: Some(value),
        }
    }

    /// `value,abs_error,case_tag,estimator_n`
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.value,
            self.abs_error,
            self.case_tag,
            self.estimator_n.map(|n| n.to_string()).unwrap_or_default()
        )
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `len! / Π counts!`, computed as a product of binomials so every
/// intermediate stays an integer.
fn multinomial(counts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &c in counts {
        total += c;
        acc *= binomial(total, c);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of distinct rearrangements of `e`.
pub fn pure_weight(e: &Word) -> WeightValue {
    let m = multinomial(e.parikh().counts());
    WeightValue::exact(BigRational::from_integer(m.into()), CaseTag::Pure)
}

/// 𝒲 for words with no binary digit.
pub fn weight_nonbinary(w: &Word) -> Result<WeightValue> {
    if w.has_binary() {
        return Err(Error::HasBinaryDigit(w.to_string()));
    }
    let m = multinomial(&w.parikh().nonbinary());
    Ok(WeightValue::exact(
        BigRational::from_integer(m.into()),
        CaseTag::Nonbinary,
    ))
}

/// Terms of the binary-word series for a word with `zeros` zeros and `ones`
/// ones. Yields `(k, term_k)` with `term_k = 10^-(k+2) · Σ_{j=zeros}^{k-ones} C(k, j)`.
pub fn binary_series_terms(zeros: u64, ones: u64) -> impl Iterator<Item = (u64, BigRational)> {
    let len = zeros + ones;
    (len..).map(move |k| {
        let count = binary_word_count(k, zeros, ones);
        let denom = num_bigint::BigInt::from(10u8).pow((k + 2) as u32);
        (k, BigRational::new(count.into(), denom))
    })
}

/// `Σ_{j=zeros}^{k-ones} C(k, j)`: binary words of length `k` with at least
/// `zeros` zeros and at least `ones` ones. Empty sum when `zeros > k - ones`.
pub fn binary_word_count(k: u64, zeros: u64, ones: u64) -> BigUint {
    if zeros + ones > k {
        return BigUint::zero();
    }
    (zeros..=k - ones).map(|j| binomial(k, j)).sum()
}

/// Bound on `Σ_{k>=first} term_k`, using `C(k, j)` sums `<= 2^k`:
/// `Σ_{k>=K} 2^k / 10^(k+2) = (1/5)^K / 80`.
pub fn binary_tail_bound(first: u64) -> BigRational {
    BigRational::new(
        1.into(),
        num_bigint::BigInt::from(5u8).pow(first as u32) * 80,
    )
}

/// 𝒲 for binary words, truncated once the scaled tail bound drops below `tol`.
pub fn weight_binary(b: &Word, tol: f64) -> Result<WeightValue> {
    if !b.is_binary() {
        return Err(Error::NotBinary(b.to_string()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    if b.len() == 1 {
        return Ok(WeightValue::exact(
            BigRational::one(),
            CaseTag::SingleBinary,
        ));
    }
    let p = b.parikh();
    let len = b.len() as u64;
    let scale = BigRational::from_integer(num_bigint::BigInt::from(10u8).pow(len as u32) * 64);
    let tol_r = BigRational::from_float(tol).ok_or(Error::BadTolerance(tol))?;
    let mut sum = BigRational::zero();
    let mut bound = &scale * binary_tail_bound(len);
    for (k, term) in binary_series_terms(p.zeros(), p.ones()) {
        if bound < tol_r {
            break;
        }
        sum += term;
        bound = &scale * binary_tail_bound(k + 1);
    }
    let value = &scale * sum;
    Ok(WeightValue {
        value: to_f64(&value),
        abs_error: ErrorBound::Certified(to_f64(&bound).next_up()),
        case_tag: CaseTag::BinarySeries,
        estimator_n: None,
        exact: Some(value),
    })
}

/// 𝒲 for mixed words, estimated from the Case 1 and Case 2 counts within the
/// first `n` digits of C10.
pub fn weight_mixed(w: &Word, n: u64) -> Result<WeightValue> {
    weight_mixed_with(w, n, CaseOptions::default())
}

pub fn weight_mixed_with(w: &Word, n: u64, opts: CaseOptions) -> Result<WeightValue> {
    let (c, d) = case_counts(w, n, opts)?;
    Ok(mixed_from_counts(w, n, c, d))
}

/// Assembles the mixed-case estimate from already computed counts.
pub fn mixed_from_counts(w: &Word, n: u64, case1: u64, case2: u64) -> WeightValue {
    let m = multinomial(w.parikh().counts());
    let scale = num_bigint::BigInt::from(10u8).pow(w.len() as u32);
    let correction = BigRational::new(
        scale * (num_bigint::BigInt::from(case2) - num_bigint::BigInt::from(case1)),
        num_bigint::BigInt::from(n),
    );
    let value = BigRational::from_integer(m.into()) + correction;
    WeightValue {
        value: to_f64(&value),
        abs_error: ErrorBound::Uncertified,
        case_tag: CaseTag::MixedEstimated,
        estimator_n: Some(n),
        exact: None,
    }
}

/// Default series tolerance for binary words.
pub const DEFAULT_TOL: f64 = 1e-12;

/// 𝒲 for any nonempty word. `n` is the prefix length used for mixed words.
pub fn weight(e: &Word, tol: f64, n: u64) -> Result<WeightValue> {
    if !e.has_binary() {
        weight_nonbinary(e)
    } else if e.is_binary() {
        weight_binary(e, tol)
    } else {
        weight_mixed(e, n)
    }
}
