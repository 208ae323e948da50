//! Error type shared by every engine module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("multiplicative relations of {0} are not supported (no power is rational)")]
    UnsupportedUnit(String),
    #[error("tower is not simple: {0}")]
    NotSimpleTower(String),
    #[error("unsupported base or tower shape: {0}")]
    UnsupportedBase(String),
    #[error("the {r}-th roots of unity do not all lie in Q(zeta_{n}); choose a larger cyclotomic order")]
    RootGeneratorsUnavailable { r: u64, n: u32 },
    #[error("lambda = {lambda} exceeds the configured cap {cap}")]
    LambdaOverflow { lambda: u64, cap: u64 },
    #[error("period search exceeded the cap {cap}")]
    PeriodCapExceeded { cap: u64 },
    #[error("{0} is not in the product group")]
    NotInProductGroup(String),
    #[error("a denominator vanishes at k = {k}")]
    PoleAtPoint { k: i64 },
    #[error("shifted summand F(n+{index}, k) is not representable in the tower")]
    NotRepresentable { index: usize },
    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
