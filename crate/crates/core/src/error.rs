use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image {index} is empty")]
    EmptyImage { index: usize },

    #[error("illegal character {found:?} at position {position}")]
    IllegalCharacter { found: char, position: usize },

    #[error("letters used in the images do not match the alphabet of size {alphabet_size}")]
    AlphabetMismatch { alphabet_size: usize },

    #[error("alphabet of size {0} exceeds the supported maximum")]
    AlphabetTooLarge(usize),

    #[error("substitutions have different alphabet sizes ({left} vs {right})")]
    AlphabetSizeMismatch { left: usize, right: usize },

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("word length must be at least 1")]
    ZeroLength,

    #[error("matrix entry at ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },

    #[error("matrix dimensions do not agree")]
    DimensionMismatch,

    #[error("integer overflow in matrix arithmetic")]
    Overflow,

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("substitution is not recognisable")]
    NotRecognisable,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("{0} is not an admitted three-letter word")]
    EdgeNotAdmitted(String),

    #[error("image cycle is not in the integer span of the cycle basis")]
    BasisSolveFailure,

    #[error("segment {0} is not a return word")]
    DecompositionFailure(String),

    #[error("no left proper power found within {0} iterations")]
    LeftPowerNotFound(usize),

    #[error("line {line}: {message}")]
    SaveFile { line: usize, message: String },
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPrimitive | Error::NotRecognisable => 3,
            Error::NumericalFailure(_) | Error::Overflow => 4,
            // internal invariant violations
            Error::BasisSolveFailure
            | Error::DecompositionFailure(_)
            | Error::LeftPowerNotFound(_) => 1,
            _ => 2,
        }
    }
}
