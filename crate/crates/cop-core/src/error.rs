//! Error type shared by every module of the crate.

use thiserror::Error;

/// Which regularity certificate failed in a recurrence construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A coefficient `d_j` vanished.
    D,
    /// A transformed polynomial vanished at its critical point.
    PhiCrit,
}

impl Certificate {
    /// Short machine-readable tag (`"d"` or `"phi_crit"`).
    pub fn tag(self) -> &'static str {
        match self {
            Certificate::D => "d",
            Certificate::PhiCrit => "phi_crit",
        }
    }
}

/// Errors produced by the library.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum CopError {
    #[error("division by the zero polynomial")]
    DivideByZeroPoly,
    #[error("root finder did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("lower parameter {index} of the hypergeometric series hits a pole")]
    PochhammerPole { index: usize },
    #[error("series is not terminating: {detail}")]
    NotTerminating { detail: String },
    #[error("leading coefficient is zero, cannot normalise to a monic polynomial")]
    ZeroLeading,
    #[error("non-finite value produced in {context}")]
    NonFinite { context: String },
    #[error("samples are degenerate: {detail}")]
    DegenerateSamples { detail: String },
    #[error("samples are inconsistent with the fitted model at index {index} (residual {residual:e})")]
    InconsistentSamples { index: usize, residual: f64 },
    #[error("alternating relation Y1 + X = B/2 fails (residual {residual:e})")]
    AlternatingViolation { residual: f64 },
    #[error("no progression registered for representative {detail}")]
    UnknownProgression { detail: String },
    #[error("operation {op} is not supported for regime {regime}")]
    RegimeUnsupported { regime: String, op: String },
    #[error("zero denominator at sample point {detail}")]
    ZeroDenominator { detail: String },
    #[error("degree {needed} exceeds the available degree {available}")]
    DegreeOverflow { needed: usize, available: usize },
    #[error("recurrence table too short: need {needed} entries, have {available}")]
    InsufficientTable { needed: usize, available: usize },
    #[error("regularity fails: {} vanishes at index {index}", which.tag())]
    RegularityViolation { which: Certificate, index: usize },
    #[error("truncation order {n} plus one is not below the torsion order {nu}")]
    TorsionOverflow { n: usize, nu: usize },
    #[error("q is not a primitive root of unity of order {nu}: {detail}")]
    NotTorsion { nu: usize, detail: String },
    #[error("q is a root of unity of order {order}; use the torsion construction")]
    RootOfUnity { order: usize },
    #[error("truncating polynomial has a multiple zero near node {index}")]
    MultipleZero { index: usize },
    #[error("quadrature rule is not exact (residual {residual:e})")]
    QuadratureInexact { residual: f64 },
    #[error("critical value R_{n}(tau^2) vanishes")]
    CriticalZero { n: usize },
    #[error("division by x - tau^2 leaves a remainder of size {residual:e} at index {n}")]
    NonzeroRemainder { n: usize, residual: f64 },
    #[error("normalisation constant gamma_{index} vanishes")]
    TorsionNormalization { index: usize },
    #[error("parameters violate genericity: {detail}")]
    GenericityViolation { detail: String },
    #[error("truncating polynomial has a double zero locus (E = +-2)")]
    DoubleZeroLocus,
    #[error("denominator vanishes at index {index}")]
    DenominatorZero { index: usize },
    #[error("the dual (-1)-Hahn split needs an even N, got {n}")]
    OddN { n: usize },
    #[error("parameter pole: {detail}")]
    ParameterPole { detail: String },
    #[error("invalid input: {detail}")]
    InvalidInput { detail: String },
}

impl CopError {
    /// Stable machine-readable error code (the variant name).
    pub fn code(&self) -> &'static str {
        match self {
            CopError::DivideByZeroPoly => "DivideByZeroPoly",
            CopError::NoConvergence { .. } => "NoConvergence",
            CopError::PochhammerPole { .. } => "PochhammerPole",
            CopError::NotTerminating { .. } => "NotTerminating",
            CopError::ZeroLeading => "ZeroLeading",
            CopError::NonFinite { .. } => "NonFinite",
            CopError::DegenerateSamples { .. } => "DegenerateSamples",
            CopError::InconsistentSamples { .. } => "InconsistentSamples",
            CopError::AlternatingViolation { .. } => "AlternatingViolation",
            CopError::UnknownProgression { .. } => "UnknownProgression",
            CopError::RegimeUnsupported { .. } => "RegimeUnsupported",
            CopError::ZeroDenominator { .. } => "ZeroDenominator",
            CopError::DegreeOverflow { .. } => "DegreeOverflow",
            CopError::InsufficientTable { .. } => "InsufficientTable",
            CopError::RegularityViolation { .. } => "RegularityViolation",
            CopError::TorsionOverflow { .. } => "TorsionOverflow",
            CopError::NotTorsion { .. } => "NotTorsion",
            CopError::RootOfUnity { .. } => "RootOfUnity",
            CopError::MultipleZero { .. } => "MultipleZero",
            CopError::QuadratureInexact { .. } => "QuadratureInexact",
            CopError::CriticalZero { .. } => "CriticalZero",
            CopError::NonzeroRemainder { .. } => "NonzeroRemainder",
            CopError::TorsionNormalization { .. } => "TorsionNormalization",
            CopError::GenericityViolation { .. } => "GenericityViolation",
            CopError::DoubleZeroLocus => "DoubleZeroLocus",
            CopError::DenominatorZero { .. } => "DenominatorZero",
            CopError::OddN { .. } => "OddN",
            CopError::ParameterPole { .. } => "ParameterPole",
            CopError::InvalidInput { .. } => "InvalidInput",
        }
    }

    /// Offending index, when the error refers to one.
    pub fn index(&self) -> Option<usize> {
        match self {
            CopError::PochhammerPole { index }
            | CopError::InconsistentSamples { index, .. }
            | CopError::RegularityViolation { index, .. }
            | CopError::MultipleZero { index }
            | CopError::TorsionNormalization { index }
            | CopError::DenominatorZero { index } => Some(*index),
            CopError::CriticalZero { n } | CopError::NonzeroRemainder { n, .. } => Some(*n),
            _ => None,
        }
    }
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, CopError>;
