//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing or combining the exact
/// algebraic objects of this crate.
///
/// Variants marked "bug trap" signal violated internal theorems rather than
/// bad user input; they are surfaced instead of being swallowed so a broken
/// computation can never produce a silently wrong class.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("relation is not homogeneous: {0}")]
    RelationNotHomogeneous(String),

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("classes belong to different rings ({0})")]
    RingMismatch(String),

    #[error("module map has no image for basis monomial {0}")]
    BasisIncomplete(String),

    #[error("input of index {index} must be homogeneous of degree {expected}, found {found}")]
    DegreeMismatch {
        index: u32,
        expected: u32,
        found: String,
    },

    #[error("total class has constant term {0}, expected 1")]
    NotUnital(String),

    #[error("index {index} out of range 0..={max}")]
    IndexError { index: u32, max: u32 },

    #[error("exact division failed, remainder contains {0} (bug trap)")]
    DivisibilityViolation(String),

    #[error("series coefficient {0} is not an integer (bug trap)")]
    IntegralityViolation(String),

    #[error("bundle rank {found} does not match series rank {expected}")]
    RankMismatch { expected: u32, found: u32 },

    #[error("formula precondition violated: {0} (bug trap)")]
    FormulaViolation(String),

    #[error("cross-check failed: {0}")]
    InconsistencyReport(String),

    #[error("structure equations do not satisfy d\u{2218}d = 0: {0}")]
    NotIntegrable(String),

    #[error("form is not a Bott-Chern class: {0}")]
    NotAClass(String),

    #[error("tangent class data missing: {0}")]
    MissingTangentData(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
