use thiserror::Error;

/// Everything that can go wrong while parsing input or running an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("duplicate variable name `{name}`")]
    DuplicateVariable { name: String },
    #[error("defining ideal is the unit ideal")]
    UnitDefiningIdeal,
    #[error("operands belong to different rings")]
    ContextMismatch,
    #[error("derivation needs one image per variable: expected {expected}, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("derivation {index} is not tangent to the variety")]
    NotTangent { index: usize },
    #[error("quotient by the zero ideal")]
    ZeroDivisorIdeal,
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("generator cap exceeded: more than {cap} candidate generators")]
    CapExceeded { cap: usize },
    #[error("operation needs a ring with exactly 3 variables, this one has {got}")]
    NeedsThreeVariables { got: usize },
    #[error("operation needs a single-derivation foliation, this one has {got}")]
    NeedsRankOne { got: usize },
    #[error("velocity vector vanishes on the variety")]
    ZeroVelocity,
    #[error("exponent must satisfy n >= r + 2 (n = {n}, r = {r})")]
    ExponentTooSmall { n: u32, r: usize },
    #[error("the derivative ideal of the input is zero")]
    ZeroDerivativeIdeal,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
