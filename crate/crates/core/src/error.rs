use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty family")]
    EmptyFamily,
    #[error("the family {{∅}} has no element to count")]
    TrivialFamily,
    #[error("family not union-closed")]
    NotUnionClosed,
    #[error("ground set size {0} outside 1..=16")]
    GroundSize(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("mask {mask:#b} does not fit a ground set of {n} elements")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("word has length {got}, expected {expected}")]
    WordLength { got: usize, expected: usize },
    #[error("word is not a permutation of the ground set")]
    NotPermutation,
    #[error("{0} is not a member of the family")]
    NotMember(String),
    #[error("family is not an antichain")]
    NotAntichain,
    #[error("{what} requires n <= {max}, got n = {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("n = {n} outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("antichain is not augmentable")]
    NotAugmentable,
    #[error("augmenting maps are defined for even n only")]
    OddN,
    #[error("{0} is not a subfamily of the family")]
    NotSubfamily(String),
    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("family ground sets differ")]
    GroundMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
