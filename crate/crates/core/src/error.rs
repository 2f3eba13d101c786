use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis name `{0}` in bracket")]
    UnknownName(String),
    #[error("grading violation: [{left}, {right}] has a component on `{target}` of degree {found}, expected {expected}")]
    Grading {
        left: String,
        right: String,
        target: String,
        expected: i32,
        found: i32,
    },
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("bracket [{0}, {0}] must vanish")]
    SelfBracket(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("algebra is not fundamental")]
    NotFundamental,
    #[error("algebra has a basis element `{0}` of nonnegative degree")]
    NonNegativeDegree(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree-zero subspace is not closed under bracket")]
    NotClosed,
    #[error("missing lower prolongation components: {0}")]
    MissingComponents(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("cap of {0} reached before the prolongation vanished")]
    CapReached(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
