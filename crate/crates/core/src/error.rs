use thiserror::Error;

/// Errors surfaced by model construction, solvers, and the CLI front end.
#[derive(Debug, Error)]
pub enum JcError {
    /// Physical parameters outside their domain (negative rates, zero
    /// frequencies, non-finite inputs, bad truncations).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An (n, branch) combination or flat index that names no level.
    #[error("invalid level: {0}")]
    InvalidLevel(String),

    /// Transition coefficients and rates are only defined between adjacent
    /// excitation subspaces.
    #[error("levels in subspaces {lower} and {upper} are not neighbors")]
    NonNeighboring { lower: usize, upper: usize },

    /// The rate graph does not connect all levels, so the stationary
    /// distribution is not unique.
    #[error("rate graph is not ergodic: {0}")]
    NonErgodic(String),

    /// A linear solve, residual check, or kernel-dimension check failed.
    #[error("steady-state solve failed: {0}")]
    SolveFailed(String),

    /// Explicit integration step too large for the fastest rate.
    #[error("unstable integration step: dt*max|R| = {0:.3e} exceeds 0.1")]
    UnstableStep(f64),

    /// Two population vectors (or a population vector and a reference
    /// state) were built with different truncations.
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    /// Block index outside the range covered by the stored coefficients.
    #[error("block index {n} out of range (coefficients cover blocks 0..={n_max})")]
    BlockOutOfRange { n: usize, n_max: usize },

    /// The dense oracle's Fock cutoff is too small for the requested
    /// temperature; thermal population leaks into the boundary level.
    #[error("Fock cutoff {dim} too small: boundary population {leak:.3e} exceeds 1e-12")]
    BoundaryLeak { dim: usize, leak: f64 },

    /// Configuration file could not be read or parsed.
    #[error("config error: {0}")]
    Config(String),

    /// Result file could not be written.
    #[error("output error: {0}")]
    Output(String),
}

impl JcError {
    /// Process exit code for the CLI: 2 for configuration problems,
    /// 3 for solver failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            JcError::InvalidParams(_)
            | JcError::InvalidLevel(_)
            | JcError::NonNeighboring { .. }
            | JcError::TruncationMismatch(_)
            | JcError::BlockOutOfRange { .. }
            | JcError::Config(_)
            | JcError::Output(_) => 2,
            JcError::NonErgodic(_)
            | JcError::SolveFailed(_)
            | JcError::UnstableStep(_)
            | JcError::BoundaryLeak { .. } => 3,
        }
    }
}
