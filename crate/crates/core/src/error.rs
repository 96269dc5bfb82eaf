//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("spin value at site {site} must be +1 or -1")]
    InvalidSpin { site: usize },

    #[error("site {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },

    #[error("control and target coincide at site {site}")]
    ControlEqualsTarget { site: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("projector string must carry sign +1")]
    ProjectorSignNegative,

    #[error("projector string with odd X/Z overlap does not square to one")]
    ProjectorNotInvolution,

    #[error("projector mixes X and Z factors; such terms are not non-negative in the Z basis")]
    ProjectorMixed,

    #[error("generators do not define a stabilizer state: {reason}")]
    InvalidGenerators { reason: &'static str },

    #[error("coupling {name} = {value} is outside its allowed range")]
    InvalidCoupling { name: &'static str, value: f64 },

    #[error("chain needs at least two sites, got {n}")]
    ChainTooShort { n: usize },

    #[error("lattice needs at least 2x2 cells, got {lx}x{ly}")]
    LatticeTooSmall { lx: usize, ly: usize },

    #[error("catalog has zero total coupling; nothing can be sampled")]
    ZeroTotalCoupling,

    #[error("{what} supports at most {max} qubits, got {n}; cost grows as O(8^N)")]
    TooManyQubits {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("Jacobi sweep failed to converge")]
    JacobiNoConvergence,

    #[error("truncated partition function is non-positive at beta = {beta}, cutoff = {cutoff}")]
    TruncatedPartitionNonPositive { beta: f64, cutoff: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("bin count {bin_count} leaves the variance undefined")]
    InvalidBinCount { bin_count: usize },

    #[error("temperature {value} must be positive")]
    InvalidTemperature { value: f64 },

    #[error("inverse temperature {value} must be positive")]
    InvalidBeta { value: f64 },

    #[error("temperature grid must satisfy start >= end > 0 and step > 0")]
    InvalidTemperatureGrid,

    #[error("expansion cutoff must be at least 1")]
    InvalidCutoff,

    #[error("operator-string slot {slot} out of range for cutoff {cutoff}")]
    SlotOutOfRange { slot: usize, cutoff: usize },

    #[error("configuration has zero weight and can never be occupied by the chain")]
    ZeroWeightConfiguration,
}
