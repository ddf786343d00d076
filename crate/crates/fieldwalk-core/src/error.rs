use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors for walk construction, propagation and statistics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta must lie in [0, pi], got {0}")]
    InvalidTheta(f64),

    #[error("phi must lie in (-pi, pi], got {0}")]
    InvalidPhi(f64),

    #[error("amplitudes must be normalized: squared magnitudes sum to {0}")]
    NotNormalized(f64),

    #[error("mode (node {node}, {dir}) is not valid on line {step}")]
    InvalidMode {
        step: usize,
        node: i64,
        dir: &'static str,
    },

    #[error("duplicate mode (node {node}, {dir}) on line {step}")]
    DuplicateMode {
        step: usize,
        node: i64,
        dir: &'static str,
    },

    #[error("step count must be at least 1")]
    NoSteps,

    #[error("noise realization covers {got} transitions, walk needs {expected}")]
    NoiseLengthMismatch { expected: usize, got: usize },

    #[error("values must be finite and non-negative, got {0}")]
    InvalidValue(f64),

    #[error("distribution sums to {0}, outside the renormalization tolerance")]
    NotADistribution(f64),

    #[error("distributions live on sites of different parity")]
    ParityMismatch,

    #[error("mean photon number must be non-negative, got {0}")]
    NegativeMeanPhotons(f64),

    #[error("region [{lo}, {hi}] contains no occupied sites")]
    EmptyRegion { lo: i64, hi: i64 },

    #[error("ensemble needs at least one trial")]
    NoTrials,

    #[error("noise standard deviation must be finite and non-negative, got {0}")]
    InvalidSigma(f64),
}
