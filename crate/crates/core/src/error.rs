use thiserror::Error;

use crate::algebra::LeibnizViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("algebra dimension must be positive")]
    ZeroDimension,

    #[error("structure constant index ({i}, {j}, {k}) out of range 1..={dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },

    #[error("structure constant ({i}, {j}, {k}) given more than once")]
    DuplicateConstant { i: usize, j: usize, k: usize },

    #[error("basis change matrix is singular (rank {rank} < {dim})")]
    SingularMatrix { rank: usize, dim: usize },

    #[error("not a Leibniz algebra: {} violated identity tuple(s), first at {}", .violations.len(), first_violation(.violations))]
    NotLeibniz { violations: Vec<LeibnizViolation> },

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weights violate the grading at ({i}, {j}, {k}): {wi} + {wj} != {wk}")]
    InadmissibleWeights {
        i: usize,
        j: usize,
        k: usize,
        wi: i64,
        wj: i64,
        wk: i64,
    },

    #[error("gradation is not connected (levels {levels:?})")]
    DisconnectedGradation { levels: Vec<i64> },

    #[error("search space of {size} weight vectors exceeds the limit of {limit}")]
    SearchTooLarge { size: u128, limit: u128 },

    #[error("malformed rational '{0}'")]
    BadRational(String),

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no published derivation basis for family {0}")]
    NoExpectedBasis(String),
}

fn first_violation(v: &[LeibnizViolation]) -> String {
    match v.first() {
        Some(x) => format!("(i={}, j={}, k={}, m={}) residual {}", x.i, x.j, x.k, x.m, x.residual),
        None => "<none>".to_string(),
    }
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
