use thiserror::Error;

use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("tensor ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid leg positions {0:?} for rank {1}")]
    BadPositions(Vec<usize>, usize),
    #[error("subset {members:?} is not a strictly increasing subset of 1..={n}")]
    BadSubset { members: Vec<usize>, n: usize },
    #[error("subset has {got} members, expected {expected}")]
    SubsetSize { expected: usize, got: usize },
    #[error("constant term is not an invertible multiple of the unit")]
    NotInvertible,
    #[error("requested n = {requested} exceeds the truncation order {order}")]
    BeyondTruncation { requested: usize, order: usize },
    #[error("element is not certified in the Drinfeld subalgebra up to order {0}")]
    NotCertified(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("element does not project onto sl2 tensors: {0}")]
    Projection(String),
    #[error("commutator has H'-valuation below 1: inputs do not commute modulo hH'")]
    NotCommutingModH,
    #[error("unknown instance `{0}` (expected `uhsl2` or `trivial`)")]
    UnknownInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
}
