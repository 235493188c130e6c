//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division of a rational function by zero.
    #[error("division by zero")]
    DivisionByZero,

    /// A rational function was constructed with an identically zero denominator.
    #[error("zero denominator")]
    ZeroDenominator,

    /// An exact polynomial division left a remainder where none was expected.
    #[error("inexact polynomial division")]
    InexactDivision,

    /// Winding numbers must be positive.
    #[error("invalid winding {0}: windings must be >= 1")]
    InvalidWinding(i64),

    /// Curve class coordinates must be non-negative for effective classes.
    #[error("negative coordinate {value} at position {index} in curve class")]
    NegativeClassCoordinate { index: usize, value: i64 },

    /// Curve class dimension does not match the geometry.
    #[error("curve class has {got} coordinates, geometry expects {expected}")]
    ClassDimensionMismatch { expected: usize, got: usize },

    /// The number of interior markings exceeds the number of tangency markings.
    #[error("{m} interior markings exceed the {n} tangency markings")]
    TooManyInteriorMarkings { m: usize, n: usize },

    /// Tangency orders along the first boundary component must be positive.
    #[error("tangency orders must be positive, got {0}")]
    InvalidTangency(i64),

    /// The pairing with the second boundary component must be positive.
    #[error("pairing with the second boundary component must be >= 1, got {0}")]
    InvalidSecondPairing(i64),

    /// The tangency orders do not sum to the stated first-boundary pairing.
    #[error("tangencies sum to {sum} but the first-boundary pairing is {stated}")]
    TangencySumMismatch { sum: i64, stated: i64 },

    /// A genus expansion exposed a term outside the expected parity class.
    #[error("parity violation: unexpected nonzero coefficient at hbar^{exponent}")]
    ParityViolation { exponent: i64 },

    /// A genus expansion exposed an imaginary coefficient where a real one is required.
    #[error("non-real coefficient at hbar^{exponent}")]
    NonRealCoefficient { exponent: i64 },

    /// A phased value could not be reduced to a real rational function.
    #[error("i-power {0} is odd; value is imaginary, not real")]
    ImaginaryPhase(u8),

    /// Two phased values with incompatible phases were combined.
    #[error("phase mismatch: i-powers {0} and {1} differ by an odd amount")]
    PhaseMismatch(u8, u8),

    /// The Moebius function is only defined on positive integers.
    #[error("moebius function undefined for {0}")]
    MoebiusDomain(i64),

    /// A transform input table is missing a required divisor entry.
    #[error("missing table entry for divisor {k}")]
    MissingDivisorEntry { k: i64 },

    /// The canonical-class pairing must be divisible by every divisor in the sum.
    #[error("canonical pairing {ks} not divisible by {k}")]
    CanonicalPairingNotDivisible { ks: i64, k: i64 },

    /// An input violates the hypotheses of the closed-form evaluation.
    #[error("out of hypothesis: {0}")]
    OutOfHypothesis(String),

    /// A geometry description failed validation.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A serialized value failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
