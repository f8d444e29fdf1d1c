use thiserror::Error;

use crate::monomial::MultiDegree;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("empty multidegree")]
    EmptyMultiDegree,

    #[error("generator x{} is not mapped by the substitution", index + 1)]
    UnmappedGenerator { index: usize },

    #[error("degree cap exceeded: need degree {needed} but the cap is {cap}; raise it with --degree-cap")]
    DegreeCapExceeded { needed: u32, cap: u32 },

    #[error("multidegree mismatch: expected {expected:?}, got {got:?}")]
    MultiDegreeMismatch {
        expected: MultiDegree,
        got: MultiDegree,
    },

    #[error("split representation valid only for rank <= 3")]
    SplitRankTooLarge,

    #[error("group closure exceeded the bound of {bound} elements")]
    GroupClosureExceeded { bound: usize },

    #[error("group generator matrix is singular")]
    SingularGenerator,

    #[error("residue {residue} outside {{1..{max}}}", max = n - 1)]
    ResidueOutOfRange { residue: u32, n: u32 },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
