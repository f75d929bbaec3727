//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants are grouped roughly by module: characteristic bookkeeping,
/// Siegel-space / symplectic validation, theta evaluation, and the
/// bitangent / reconstruction pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // --- characteristics ---
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("characteristic entries must be 0 or 1")]
    InvalidBits,
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("malformed characteristic string {0:?} (expected e.g. \"101|010\")")]
    ParseCharacteristic(String),
    #[error("tuple contains a repeated characteristic")]
    RepeatedCharacteristic,
    #[error("azygetic test needs at least 3 characteristics, got {0}")]
    TupleTooShort(usize),
    #[error("expected an odd characteristic, got {0}")]
    NotOdd(String),
    #[error("expected an even characteristic, got {0}")]
    NotEven(String),
    #[error("operation requires genus {expected}, got {got}")]
    UnsupportedGenus { expected: usize, got: usize },
    #[error("no Aronhold set satisfies the constraints for ({0}, {1})")]
    AronholdNotFound(String, String),

    // --- siegel ---
    #[error("period matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("period matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("imaginary part of period matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix dimension {0} is odd; symplectic matrices are 2g x 2g")]
    OddDimension(usize),
    #[error("c*tau + d is numerically singular (|det| = {0:.3e})")]
    SingularFactor(f64),
    #[error("symplectic entries exceed the exactly representable f64 range")]
    IntegerOverflow,

    // --- theta ---
    #[error("truncation radius exceeds cap {cap} (lambda_min {lambda_min:.3e}); tau too ill-conditioned")]
    RadiusOverflow { cap: u32, lambda_min: f64 },
    #[error("z has length {0}, expected genus {1}")]
    BadPointLength(usize, usize),

    // --- bitangents / weber ---
    #[error("hyperelliptic or degenerate period matrix (min/max even theta constant ratio {0:.3e})")]
    HyperellipticOrDegenerate(f64),
    #[error("zero gradient for odd characteristic {0}; tau is degenerate")]
    ZeroGradient(String),
    #[error("zero vector has no projective class")]
    ZeroProjectivePoint,
    #[error("bitangent set must cover each of the 28 odd characteristics exactly once")]
    IncompleteBitangentSet,
    #[error("degenerate denominator determinant {which} in the reconstruction for pair ({m1}, {m2})")]
    DegenerateDenominator {
        which: String,
        m1: String,
        m2: String,
    },
    #[error("fingerprints use different reference characteristics: {0} vs {1}")]
    ReferenceMismatch(String, String),

    // --- input / wire formats ---
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
