use thiserror::Error;

use crate::basis::Representation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported grid dimension {0}; only 1 and 3 are supported")]
    UnsupportedDimension(usize),

    #[error("points per axis must be a power of two and at least 4, got {0}")]
    InvalidPointCount(usize),

    #[error("grid extent must be finite and positive, got {0}")]
    InvalidExtent(f64),

    #[error("expected a state in {expected:?} representation, found {found:?}")]
    RepresentationMismatch {
        expected: Representation,
        found: Representation,
    },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state is not normalized (<psi|psi> = {norm})")]
    NotNormalized { norm: f64 },

    #[error("state carries no energy tag")]
    MissingEnergy,

    #[error("non-finite value at grid index {index}")]
    NonFinite { index: usize },

    #[error("basis of size {size} exceeds the dense assembly limit of {limit}")]
    GridTooLarge { size: usize, limit: usize },

    #[error("requested {requested} states but only {available} are available")]
    TooManyStates { requested: usize, available: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver failed: {0}")]
    EigenSolver(String),

    #[error("radial solve did not converge: {0}")]
    NonConvergence(String),

    #[error("state with energy {energy} hartree is not the hydrogen ground state")]
    NotGroundState { energy: f64 },
}
