//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by constructions, arithmetic and verification entry points.
///
/// A function table failing verification is *not* an error; see
/// [`crate::verify::NotZdb`], which is returned as a value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The integer has at least two distinct prime factors.
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    /// A prime was required.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Multiplicative inverse of zero requested.
    #[error("division by zero")]
    DivisionByZero,

    /// `a` has no inverse modulo `n`.
    #[error("{a} is not invertible modulo {n} (gcd > 1)")]
    NotInvertible { a: u64, n: u64 },

    /// Group order below the supported minimum.
    #[error("group order must be at least 2, got {0}")]
    GroupTooSmall(u64),

    /// The exponent does not divide the order of every component's unit group.
    #[error("e = {e} must be > 1 and divide q - 1 = {} for every field order (violated by q = {q})", q - 1)]
    BadExponent { e: u64, q: u64 },

    /// The same field order appears twice in a product group.
    #[error("field order {0} appears more than once")]
    DuplicateFieldOrder(u64),

    /// Two field orders share a characteristic; allowed only via the
    /// explicit override.
    #[error("field orders {q1} and {q2} share the prime {p}; pass allow-repeated-primes to construct anyway")]
    RepeatedPrime { p: u64, q1: u64, q2: u64 },

    /// Support sets only exist for product groups.
    #[error("cyclic groups have no coordinate support")]
    CyclicGroupHasNoSupport,

    /// An operation required a nonempty support.
    #[error("support set is empty")]
    EmptySupport,

    /// The supplied label permutation is not a bijection on the image.
    #[error("label map is not a bijection on 0..{0}")]
    NotABijection(u64),

    /// Paired-coset construction requires an odd prime.
    #[error("m must be an odd prime")]
    EvenPrimeNotAllowed,

    /// Composition weights do not sum to the code length.
    #[error("composition sums to {got}, expected n = {expected}")]
    CompositionMismatch { expected: u64, got: u64 },

    /// A difference system needs at least two sets.
    #[error("a difference system of sets needs at least 2 sets, got {0}")]
    DegenerateDss(u64),

    /// The sets of a difference system must be disjoint.
    #[error("sets {i} and {j} overlap at element {element}")]
    OverlappingSets { i: usize, j: usize, element: u64 },

    /// Difference systems require a cyclic group (or a product of prime
    /// fields, which re-indexes to one).
    #[error("the function's group is not cyclic and cannot be re-indexed to Z_n")]
    NonCyclicGroup,

    /// Brute-force code verification is capped.
    #[error("explicit codes with more than {max} codewords are not verified (got {got})")]
    TooManyCodewords { got: u64, max: u64 },

    /// An artifact file could not be interpreted.
    #[error("malformed artifact: {0}")]
    Malformed(String),
}
