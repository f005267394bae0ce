//! Constant composition codes and their exact size bound.
//!
//! An (n, M, d, [w_0, ..., w_{l-1}]) constant composition code over the
//! alphabet {0, ..., l-1} has M words of length n, minimum Hamming distance
//! d, and every symbol i appearing exactly w_i times in every word. When
//! n*d - n^2 + sum(w_i^2) > 0, the code size satisfies
//!
//! ```text
//! M <= n*d / (n*d - n^2 + sum(w_i^2))
//! ```
//!
//! evaluated here in exact rational arithmetic; floating point could
//! mis-certify optimality at equality boundaries.
//!
//! Every zero-difference balanced function meets this bound with equality:
//! translating its table by each group element yields an
//! (n, n, n - lambda, [tau_0, ..., tau_{l-1}]) code, and the counting
//! identity collapses the bound denominator to exactly n - lambda.

use std::fmt;

use crate::error::{Error, Result};
use crate::function::{ZdbFunction, ZdbParams};
use crate::verify::agreement_count;

/// Explicit codes beyond this size are not brute-force verified.
pub const BRUTE_FORCE_LIMIT: u64 = 512;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn equals_integer(&self, v: u64) -> bool {
        self.den == 1 && self.num == v as i128
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Upper bound on the size of a constant composition code, when the bound's
/// hypothesis holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CccBound {
    Value(Rational),
    /// n*d - n^2 + sum(w_i^2) <= 0: the bound says nothing.
    Inapplicable,
}

/// Evaluate the size bound for length n, distance d and the given
/// composition, exactly.
pub fn ccc_bound(n: u64, d: u64, composition: &[u64]) -> Result<CccBound> {
    let total: u64 = composition.iter().sum();
    if total != n {
        return Err(Error::CompositionMismatch {
            expected: n,
            got: total,
        });
    }
    let n = n as i128;
    let nd = n * d as i128;
    let squares: i128 = composition.iter().map(|&w| (w as i128) * (w as i128)).sum();
    let denom = nd - n * n + squares;
    if denom <= 0 {
        return Ok(CccBound::Inapplicable);
    }
    Ok(CccBound::Value(Rational::new(nd, denom)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    /// All translations of a balanced table; codewords are materialized on
    /// demand, so large codes stay cheap to hold.
    Translation(ZdbFunction),
    Explicit(Vec<Vec<u32>>),
}

/// A constant composition code with declared parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CccCode {
    n: u64,
    size: u64,
    min_distance: u64,
    composition: Vec<u64>,
    alphabet: u64,
    source: Source,
}

impl CccCode {
    /// The translation code of a verified table: codeword i reads the table
    /// at every point shifted by the i-th group element, giving parameters
    /// (n, n, n - lambda, [tau_0, ..., tau_{l-1}]).
    pub fn from_zdb(f: &ZdbFunction, params: &ZdbParams) -> CccCode {
        CccCode {
            n: params.n,
            size: params.n,
            min_distance: params.n - params.lambda,
            composition: f.histogram(),
            alphabet: params.ell_bar,
            source: Source::Translation(f.clone()),
        }
    }

    /// Wrap an explicit list of codewords with a declared minimum distance.
    /// The declared composition is read off the first word.
    pub fn from_codewords(words: Vec<Vec<u32>>, min_distance: u64) -> Result<CccCode> {
        let Some(first) = words.first() else {
            return Err(Error::Malformed("a code needs at least one codeword".into()));
        };
        let n = first.len() as u64;
        if words.iter().any(|w| w.len() as u64 != n) {
            return Err(Error::Malformed("codewords have unequal lengths".into()));
        }
        let alphabet = words
            .iter()
            .flat_map(|w| w.iter())
            .copied()
            .max()
            .unwrap_or(0) as u64
            + 1;
        let mut composition = vec![0u64; alphabet as usize];
        for &s in first {
            composition[s as usize] += 1;
        }
        Ok(CccCode {
            n,
            size: words.len() as u64,
            min_distance,
            composition,
            alphabet,
            source: Source::Explicit(words),
        })
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of codewords, M.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn min_distance(&self) -> u64 {
        self.min_distance
    }

    pub fn composition(&self) -> &[u64] {
        &self.composition
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn codeword(&self, i: u64) -> Vec<u32> {
        match &self.source {
            Source::Translation(f) => {
                let g = f.group();
                let labels = f.labels();
                (0..self.n).map(|x| labels[g.add(x, i) as usize]).collect()
            }
            Source::Explicit(words) => words[i as usize].clone(),
        }
    }

    /// The size bound for this code's declared parameters.
    pub fn bound(&self) -> Result<CccBound> {
        ccc_bound(self.n, self.min_distance, &self.composition)
    }

    /// Whether M equals the bound exactly (rational equality).
    pub fn is_optimal(&self) -> Result<bool> {
        Ok(match self.bound()? {
            CccBound::Value(b) => b.equals_integer(self.size),
            CccBound::Inapplicable => false,
        })
    }
}

/// First failed constraint of an invalid code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CccViolation {
    DuplicateCodewords { i: u64, j: u64 },
    Composition { index: u64 },
    MinDistance { declared: u64, computed: u64 },
}

impl fmt::Display for CccViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CccViolation::DuplicateCodewords { i, j } => {
                write!(f, "codewords {i} and {j} are identical")
            }
            CccViolation::Composition { index } => {
                write!(f, "codeword {index} does not have the declared composition")
            }
            CccViolation::MinDistance { declared, computed } => {
                write!(
                    f,
                    "declared minimum distance {declared}, computed {computed}"
                )
            }
        }
    }
}

/// Check distinctness, the per-codeword composition, and the declared
/// minimum distance. Returns the first violation, or None for a valid code.
///
/// Translation codes are checked in one pass per difference value via the
/// identity d(c_i, c_j) = n - |{x : f(x + (a_j - a_i)) = f(x)}|; explicit
/// codes fall back to full pairwise comparison, capped at
/// [`BRUTE_FORCE_LIMIT`] codewords. A single-codeword code has minimum
/// distance n by convention (no pairs to compare).
pub fn verify_ccc(code: &CccCode) -> Result<Option<CccViolation>> {
    match &code.source {
        Source::Translation(f) => {
            let n = code.n;
            // One agreement count per difference value covers all pairs:
            // shifting both codewords cancels.
            let mut max_agreement = 0;
            let mut max_at = 0;
            for a in 1..n {
                let c = agreement_count(f, a);
                if c > max_agreement {
                    max_agreement = c;
                    max_at = a;
                }
            }
            if code.size > 1 && max_agreement == n {
                return Ok(Some(CccViolation::DuplicateCodewords { i: 0, j: max_at }));
            }
            for i in 0..code.size {
                if !has_composition(&code.codeword(i), &code.composition) {
                    return Ok(Some(CccViolation::Composition { index: i }));
                }
            }
            let computed = if code.size > 1 { n - max_agreement } else { n };
            if computed != code.min_distance {
                return Ok(Some(CccViolation::MinDistance {
                    declared: code.min_distance,
                    computed,
                }));
            }
            Ok(None)
        }
        Source::Explicit(words) => {
            if code.size > BRUTE_FORCE_LIMIT {
                return Err(Error::TooManyCodewords {
                    got: code.size,
                    max: BRUTE_FORCE_LIMIT,
                });
            }
            let mut min = None;
            let mut duplicate = None;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let d = hamming(&words[i], &words[j]);
                    if d == 0 && duplicate.is_none() {
                        duplicate = Some((i as u64, j as u64));
                    }
                    min = Some(min.map_or(d, |m: u64| m.min(d)));
                }
            }
            if let Some((i, j)) = duplicate {
                return Ok(Some(CccViolation::DuplicateCodewords { i, j }));
            }
            for (i, w) in words.iter().enumerate() {
                if !has_composition(w, &code.composition) {
                    return Ok(Some(CccViolation::Composition { index: i as u64 }));
                }
            }
            let computed = min.unwrap_or(code.n);
            if computed != code.min_distance {
                return Ok(Some(CccViolation::MinDistance {
                    declared: code.min_distance,
                    computed,
                }));
            }
            Ok(None)
        }
    }
}

/// Minimum pairwise Hamming distance by direct comparison of all pairs,
/// regardless of the code's source. The independent cross-check for the
/// translation identity; n by convention for a single codeword.
pub fn pairwise_min_distance(code: &CccCode) -> u64 {
    let words: Vec<Vec<u32>> = (0..code.size).map(|i| code.codeword(i)).collect();
    let mut min = code.n;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            min = min.min(hamming(&words[i], &words[j]));
        }
    }
    min
}

fn hamming(a: &[u32], b: &[u32]) -> u64 {
    a.iter().zip(b.iter()).filter(|(x, y)| x != y).count() as u64
}

fn has_composition(word: &[u32], composition: &[u64]) -> bool {
    let mut h = vec![0u64; composition.len()];
    for &s in word {
        if s as usize >= h.len() {
            return false;
        }
        h[s as usize] += 1;
    }
    h == composition
}
