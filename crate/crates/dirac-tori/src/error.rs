use thiserror::Error;

/// Errors shared across all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("denominator C*Pi + D is singular")]
    SingularDenominator,
    #[error("row lattice is not saturated (not a direct summand of Z^n)")]
    NotSaturated,
    #[error("basis does not have full rank (subspace is not maximal)")]
    NotMaximal,
    #[error("subspace is not isotropic: A*B^t + B*A^t != 0")]
    NotIsotropic,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("matrix does not preserve the split bilinear form: g^t*J*g != J")]
    NotOrthogonal,
    #[error("matrix is not unimodular (det != +/-1)")]
    NotUnimodular,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("sigma_I(Gamma) is not a Poisson structure for the chosen I")]
    NotPoisson,
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("p and q are not coprime")]
    NotCoprime,
    #[error("target not found within the given depth/node bounds")]
    NotFoundWithinBounds,
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
