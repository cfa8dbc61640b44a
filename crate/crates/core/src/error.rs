use thiserror::Error;

use crate::scalar::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a non-monomial: {0}")]
    NotMonomial(String),
    #[error("division by zero")]
    ZeroDivisor,
    #[error("operands live in different charts")]
    ChartMismatch,
    #[error("substitution images violate the Weyl relations: {0}")]
    RelationViolation(String),
    #[error("unsupported conjugation weight: {0}")]
    UnsupportedWeight(String),
    #[error("ell must be half-odd-integer, got {0}")]
    BadEll(String),
    #[error("bracket of {pair} leaves the span; residual {residual}")]
    NotClosed { pair: String, residual: String },
    #[error("bracket of {pair} has the wrong parity: {detail}")]
    GradingViolation { pair: String, detail: String },
    #[error("Jacobi identity fails on {triple}: {residual}")]
    JacobiFailure { triple: String, residual: String },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("solution space has dimension {0}, expected 1")]
    NonUniqueSolution(usize),
    #[error("solution is not a Laurent polynomial in c: {0}")]
    NonLaurentSolution(String),
    #[error("[{generator}, Ω] is not a multiple of Ω; residual {residual}")]
    NotProportional { generator: String, residual: String },
    #[error("mismatch for {label}: residual {residual}")]
    Mismatch { label: String, residual: String },
    #[error("normalization {normalization} is unavailable at ell = {ell}")]
    NormalizationUnavailable { normalization: String, ell: HalfInt },
    #[error("matrix entry ({row}, {col}) breaks triangularity")]
    NotTriangular { row: usize, col: usize },
    #[error("diagonal entry {0} depends on c")]
    DiagonalDependsOnC(usize),
    #[error("restriction is inconsistent: {0}")]
    Inconsistent(String),
    #[error("Gaussian exponents differ between summands")]
    KappaMismatch,
    #[error("invalid encoding: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
