use thiserror::Error;

/// Errors raised by the game engines and their linear-algebra layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("operator is not unitary (max |U†U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid state vector: norm² = {norm_sq}")]
    InvalidState { norm_sq: f64 },

    #[error("dephasing strength {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("probability {0:.3e} is negative beyond tolerance")]
    NegativeProbability(f64),

    #[error("given columns are not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("strategy parameter out of range: {0}")]
    StrategyOutOfRange(String),

    #[error("invalid outcome distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown game `{0}` (expected one of PD, CG, SH, BoS, MP, SD)")]
    UnknownGame(String),

    #[error("invalid game definition: {0}")]
    InvalidGame(String),

    #[error("game `{0}` is not zero-sum")]
    NotZeroSum(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("gamma {0} outside [0, pi/2]")]
    GammaOutOfRange(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
