use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch")]
    GroupMismatch,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("torsion factor Z/{0} is invalid (need d >= 2)")]
    InvalidTorsion(u64),
    #[error("empty sequence")]
    EmptySequence,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("not a member of the monoid")]
    NotMember,
    #[error("not connected graded: atom {0} has degree 0")]
    NotConnectedGraded(usize),
    #[error("pair is not balanced: both sides must factor the same element")]
    Unbalanced,
    #[error("not κδ-equivalent")]
    NotKappaDeltaEquivalent,
    #[error("last two components are not equal")]
    NotRepeated,
    #[error("repeat index {index} out of range for a sequence of length {len}")]
    RepeatIndex { index: usize, len: usize },
    #[error("element of infinite order in a finite-order computation")]
    InfiniteOrder,
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("quiver arrow {0} refers to a vertex outside 1..={1}")]
    BadVertex(usize, usize),
    #[error("-h is not in the subgroup generated by the arrow weights")]
    NotInSubgroup,
    #[error("input is not a Gröbner system: {0}")]
    NotGroebner(String),
    #[error("variable set mismatch: order has {expected} variables, word has {found}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
