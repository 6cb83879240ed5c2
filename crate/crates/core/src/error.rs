use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("index set is infinite without a diagonal window: {0}")]
    InfiniteSet(String),
    #[error("off-diagonal bound violated: {0}")]
    BoundViolation(String),
    #[error("diagonal window exceeded: terms need diagonals in [{lo}, {hi}]")]
    WindowOverflow { lo: i64, hi: i64 },
    #[error("algebra context mismatch: {0}")]
    CtxMismatch(String),
    #[error("triangular decomposition could not be certified for {0}")]
    Certification(String),
    #[error("matrix is not unitriangular at {0}")]
    NotUnitriangular(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("coefficient ring is not a field")]
    NotAField,
    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
