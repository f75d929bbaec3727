//! Numerical theta functions on genus-3 Jacobians, the 28 bitangents of a
//! smooth plane quartic, and a curve-identity decision procedure.
//!
//! The library computes certified-truncation Riemann theta constants and
//! gradients with half-integer characteristics; extracts the 28 bitangent
//! lines of the quartic attached to a period matrix; evaluates the classical
//! determinantal reconstruction of quartic theta-constant ratios from those
//! lines; and packages the 36 fourth-power quotients into a fingerprint that
//! decides whether two inputs present the same curve.
//!
//! Module map:
//! - [`characteristics`]: half-integer characteristics, parity, azygeticity,
//!   Aronhold systems, and the symplectic action on characteristics.
//! - [`siegel`]: exact integer symplectic matrices, the action on the Siegel
//!   upper half-space, eighth-root multiplier phases, and random
//!   well-conditioned period matrices.
//! - [`theta`]: single and batched theta evaluation with truncation-error
//!   certificates, gradients, Jacobian determinants, the fourth-power
//!   quotient map, and a heat-equation diagnostic.
//! - [`bitangents`]: bitangent line extraction and the Gauss-map
//!   consistency check.
//! - [`weber`]: the determinantal reconstruction identity, fingerprints,
//!   and curve comparison.
//! - [`selftest`]: the acceptance suite shared by the integration tests and
//!   the CLI.

pub mod bitangents;
pub mod characteristics;
pub mod error;
pub mod selftest;
pub mod siegel;
pub mod theta;
pub mod weber;

pub use bitangents::{
    extract_bitangents, gauss_consistency, projective_distance, two_torsion_point, BitangentLine,
    BitangentSet, BitangentSetFile,
};
pub use characteristics::{
    aronhold_for_pair, aronhold_sets_for_pair, enumerate, enumerate_aronhold_sets, even_count,
    gamma_act_char, is_azygetic_triple, is_azygetic_tuple, odd_count, plucker_bitangent_count,
    AronholdSet, Characteristic, ParityFilter, SignedCharacteristic,
};
pub use error::{Error, Result};
pub use siegel::{
    chi, generators, level2_generators, phi, random_level2_word, random_tau, random_word,
    Eighths, IntMatrix, PeriodMatrixFile, SiegelPoint, SymplecticMatrix,
};
pub use theta::{
    batch_theta, grad_theta0, heat_check, jacobian_d, theta, theta4_map, theta_constant,
    BatchTheta, ThetaGradient, ThetaValue, DEFAULT_RADIUS_CAP, DEFAULT_TOL,
};
pub use weber::{
    compare_curves, fingerprint_from_bitangents, weber_lhs, weber_rhs, ComparisonReport,
    Fingerprint, FingerprintFile, Verdict, WeberInstance,
};
