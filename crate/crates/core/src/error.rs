use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("input is rational, the Bruno function is +infinity there")]
    RationalInput,
    #[error("fraction {0} has no two-sided Farey neighbours")]
    NoNeighbours(String),
    #[error("point {0} lies on the branch cut [1, +inf)")]
    OnCut(String),
    #[error("point {0} lies on the kernel support [0, 1/2]")]
    OnSupport(String),
    #[error("pole: a - c z vanishes")]
    Pole,
    #[error("Im z = {0} is not positive")]
    LowerHalfPlane(f64),
    #[error("|lambda| = {0} is not below 1")]
    NonContracting(f64),
    #[error("iteration budget of {0} steps exhausted before stabilisation")]
    BudgetExhausted(u64),
    #[error("matrix is not in the 1/2-monoid")]
    NotInMonoid,
    #[error("grid length {0} is not a power of two >= 1024")]
    NotPowerOfTwo(usize),
    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("need at least {needed} dyadic blocks, got {got}")]
    InsufficientBlocks { needed: usize, got: usize },
    #[error("dyadic block {0} exceeds the spectrum")]
    BlockExceedsSpectrum(i32),
    #[error("degenerate regression data")]
    Degenerate,
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
