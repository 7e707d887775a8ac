//! Error type shared across the crate.

/// Errors produced by state construction, operator application, and fits.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The truncation dimension cannot hold the requested displaced state
    /// without the tail leaking past the cutoff.
    #[error(
        "truncation dim {dim} is inadequate for (n = {n}, |alpha| = {alpha_mag:.4}): \
         need at least {required}"
    )]
    Adequacy {
        dim: usize,
        n: u32,
        alpha_mag: f64,
        required: usize,
    },
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// The mode layout of a state does not match what an operation expects.
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    /// An operation requiring a unit-norm state received something else.
    #[error("state is not normalized (norm = {norm:.6e})")]
    NotNormalized { norm: f64 },
    /// The probe carries no phase information (zero generator variance),
    /// e.g. the two-mode vacuum.
    #[error("probe state has zero quantum Fisher information")]
    ZeroInformation,
    /// A power-law fit cannot be performed on the given records.
    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),
    /// A projection annihilated the state entirely.
    #[error("projection annihilated the state")]
    ZeroNorm,
}

pub type Result<T> = std::result::Result<T, Error>;
