use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),

    #[error("result of degree {degree} exceeds the truncation {truncation}")]
    TruncationOverflow { degree: i64, truncation: u32 },

    #[error("degree {degree} is outside the window [0, {truncation}]")]
    DegreeOutOfRange { degree: i64, truncation: u32 },

    #[error("vector is not homogeneous")]
    NonHomogeneous,

    #[error("substituted series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series has no inverse: constant term is zero")]
    NotInvertible,

    #[error("invalid Lie algebra: {axiom} fails at ({}): {detail}", witness.join(", "))]
    LieAxiom {
        axiom: String,
        witness: Vec<String>,
        detail: String,
    },

    #[error("invalid Lie algebra document: {0}")]
    LieDocument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
