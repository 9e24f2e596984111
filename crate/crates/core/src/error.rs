use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The basis matrix failed the invertibility threshold, or its inverse
    /// could not be certified to the residual tolerance.
    #[error("singular basis matrix: {0}")]
    SingularMatrix(String),

    /// An enumeration request would touch more integer candidates than the
    /// configured cap allows. Shrink the region or raise the cap.
    #[error("region too large: {candidates} candidates exceed cap {cap}")]
    RegionTooLarge { candidates: u128, cap: u64 },

    /// A nonzero lattice point inside the finite check range projects to
    /// (numerically) zero in physical space.
    #[error("projection not injective: {0}")]
    ProjectionNotInjective(String),

    /// Dyadic refinement hit the cell-count cap before reaching the
    /// requested boundary volume.
    #[error("dyadic level too fine: {0}")]
    LevelTooFine(String),

    /// A test function with per-axis convolution order below 2 was requested;
    /// its dual sum is not certifiably summable.
    #[error("tail not summable: convolution order {order} < 2")]
    TailNotSummable { order: u32 },

    /// Two distinct dual points matched the requested frequency within the
    /// tolerance; the tolerance is too large for the search radius.
    #[error("ambiguous Fourier-module match: {0}")]
    AmbiguousMatch(String),

    /// A dual point with vanishing internal part sits inside the spectral
    /// strip; the strip width 1/S_R is too large for this frequency.
    #[error("spectral-gap condition violated: {0}")]
    Condition1Violated(String),

    /// A proposition hypothesis (eps_R <= eta) does not hold for the
    /// supplied parameters.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// Mismatched vector/matrix dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A parameter failed its precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
