use thiserror::Error;

use crate::series::DefectTerm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KvError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("no image given for letter `{0}`")]
    MissingImage(String),
    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("constant term must be {expected} for {operation}")]
    ConstantTerm {
        operation: &'static str,
        expected: &'static str,
    },
    #[error("not a Lie element; residual {residual}")]
    NotLie { residual: String },
    #[error("polynomial is not in the kernel of the Dynkin idempotent")]
    NotInKernel,
    #[error("pair is not a solution; first defect term {0}")]
    NotASolution(DefectTerm),
    #[error("inconsistent linear system at degree {0}")]
    Inconsistent(usize),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, KvError>;
