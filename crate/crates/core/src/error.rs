use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("terminals {0} and {1} are adjacent; no finite node cut separates them")]
    AdjacentTerminals(usize, usize),

    #[error("node set is not deficient")]
    NotDeficient,

    #[error("node {0} is not a meeting point of the two set-pairs")]
    NotMeetingPoint(usize),

    #[error("invalid set-pair: {0}")]
    InvalidSetPair(String),

    #[error("instance is infeasible: no finite-cost augmentation reaches the target connectivity")]
    Infeasible,

    #[error("iteration limit of {0} exceeded")]
    IterationLimit(usize),

    #[error("fractional solution has empty support")]
    EmptySupport,

    #[error("terminal set has {got} nodes, expected {expected}")]
    BadTerminalCount { expected: usize, got: usize },

    #[error("no rogue set found in the fractional graph")]
    NoRogueFound,

    #[error("enumeration budget exceeded: {0}")]
    SizeLimit(String),

    #[error("n = {n} is below the guaranteed regime n >= {required} for k = {k}")]
    RegimeViolation { n: usize, k: usize, required: usize },

    #[error("forbidden-set restart budget of {0} exceeded")]
    RestartBudgetExceeded(usize),

    #[error("iterative rounding stalled on a graph expected to be rogue-free (rogue set {0:?})")]
    UnexpectedStall(Vec<usize>),

    #[error("best-effort run exhausted all terminal choices: {0}")]
    BestEffortExhausted(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
