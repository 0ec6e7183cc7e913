use thiserror::Error;

/// Errors raised while validating inputs or evaluating the coated-sphere fields.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonPositiveModulus: {name} must be finite and > 0, got {value}")]
    NonPositiveModulus { name: &'static str, value: f64 },

    #[error("NonFiniteInput: {name} must be finite, got {value}")]
    NonFiniteInput { name: &'static str, value: f64 },

    #[error("VolumeFractionOutOfRange: theta1 must lie strictly inside (0, 1), got {0}")]
    VolumeFractionOutOfRange(f64),

    #[error("EqualBulkModuli: k1 = {k1} and k2 = {k2} coincide within 1e-12 relative")]
    EqualBulkModuli { k1: f64, k2: f64 },

    #[error("EqualShearModuli: mu1 = mu2 = {0}; the labeling convention mu1 > mu2 needs distinct shear moduli")]
    EqualShearModuli(f64),

    #[error("ShearModuliMisordered: expected mu1 > mu2, got mu1 = {mu1}, mu2 = {mu2} (normalize the phase labels first)")]
    ShearModuliMisordered { mu1: f64, mu2: f64 },

    #[error("InvalidExponent: p must satisfy 1 < p <= inf, got {0}")]
    InvalidExponent(String),

    #[error("SingularInterfaceSystem: the coated-sphere interface system has no unique solution")]
    SingularInterfaceSystem,

    #[error("ConsistencyFailure: {what} disagrees between two independent evaluations ({first} vs {second})")]
    ConsistencyFailure {
        what: &'static str,
        first: f64,
        second: f64,
    },

    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),

    #[error("SingularSystem: the discretized radial system is singular")]
    SingularSystem,

    #[error("NonConvergent: {0}")]
    NonConvergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
