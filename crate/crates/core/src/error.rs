use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised across the library. Indices in messages are 1-based where
/// they refer to generators `x_j` or tuple positions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is not a group: {0}")]
    TableNotGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("bad rank r={r} for n={n}")]
    BadRank { n: usize, r: usize },
    #[error("element is not in the group H-class H_11: {0}")]
    NotInH(String),
    #[error("resource limit: {what} would reach {needed}, cap is {cap}")]
    ResourceLimit { what: &'static str, needed: usize, cap: usize },
    #[error("sandwich entry is zero at {0}")]
    ZeroEntry(String),
    #[error("step not applicable: {0}")]
    StepNotApplicable(String),
    #[error("not decomposable: rising point {0} is at most 2")]
    NotDecomposable(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no singular witness found: {0}")]
    WitnessNotFound(String),
    #[error("coset enumeration capped at {max} cosets; increase max_cosets or simplify first")]
    Capped { max: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
