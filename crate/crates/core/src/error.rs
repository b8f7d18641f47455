use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("constraint matrix entry ({row}, {col}) is not an integer: {value}")]
    NonIntegral { row: usize, col: usize, value: String },

    #[error("constraint matrix has rank {rank}, expected full column rank {cols}")]
    RankDeficient { rank: usize, cols: usize },

    #[error("{what} budget exceeded: {required} required, budget {budget}")]
    Budget {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("perturbation failed to produce a simple polyhedron after {retries} retries")]
    Perturbation { retries: usize },

    #[error("polyhedral graph is disconnected")]
    Disconnected,

    #[error("polyhedron has no vertex")]
    NoVertex,

    #[error("vertex {vertex} is degenerate ({tight} tight rows); perturb first")]
    DegenerateVertex { vertex: usize, tight: usize },

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
