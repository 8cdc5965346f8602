use thiserror::Error;

/// Errors surfaced by every layer of the library.
///
/// Messages are stable; the CLI and the C ABI print them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd prime required (got p = {0})")]
    OddPrimeRequired(u64),
    #[error("odd prime power required (got q = {0})")]
    OddPrimePowerRequired(u64),
    #[error("unsupported extension degree {0}")]
    UnsupportedExtensionDegree(u32),
    #[error("field of order {0} is too large for table-driven arithmetic")]
    FieldTooLarge(u64),
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("no conjugation defined: field has no quadratic subfield structure")]
    NoConjugation,
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not skew-Hermitian")]
    NotSkewHermitian,
    #[error("enumeration too large: {size} exceeds budget {budget}")]
    EnumerationTooLarge { size: u128, budget: u64 },
    #[error("not divisible")]
    NotDivisible,
    #[error("polynomial has non-integral coefficients")]
    NonIntegral,
    #[error("rank {r} out of range for size {n}")]
    RankOutOfRange { n: usize, r: usize },
    #[error("skew-symmetric rank must be even")]
    OddSkewRank,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element violates the radical shape: {0}")]
    ShapeViolation(String),
    #[error("orbit invariant failed: {0}")]
    OrbitInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
