//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix must be square (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is {rows}x{cols} but the subsystem dimensions require {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("matrix has non-finite entries")]
    NonFiniteEntries,

    #[error("matrix is not Hermitian (max |M_ij - conj(M_ji)| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix must have unit trace (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("subsystem index {index} out of range for a system with {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("partial trace must keep at least one subsystem")]
    EmptyKeepSet,

    #[error("partial transpose needs a system split into at least two subsystems")]
    CutNotBinary,

    #[error("state must be a vector with nonzero norm")]
    ZeroNormVector,

    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("q = {q} violates -1/(4*sqrt(3)) <= q <= sqrt(3)/4")]
    GhzSymmetricWeightRange { q: f64 },

    #[error("p = {p} violates |p| <= 1/8 + (sqrt(3)/2)*q (bound {bound} at q = {q})")]
    GhzSymmetricMixingBound { p: f64, q: f64, bound: f64 },

    #[error("amplitudes unnormalizable under sqrt convention: lambda1^2 + lambda2^2 = {sum} > 1")]
    UnnormalizableAmplitudes { sum: f64 },

    #[error("Kraus pair violates completeness: max |F0'F0 + F1'F1 - I| = {deviation:.3e}")]
    KrausIncomplete { deviation: f64 },

    #[error("operator is not a rank-1 projector (deviation {deviation:.3e})")]
    NotProjector { deviation: f64 },

    #[error("outcome has (near-)zero probability; conditional state undefined")]
    ZeroProbabilityOutcome,

    #[error("state must have subsystem dimensions {expected:?} (got {got:?})")]
    WrongDims {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("direction grid must be nonempty")]
    EmptyGrid,
}
