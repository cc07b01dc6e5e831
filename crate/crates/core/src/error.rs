use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no primitive representative")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("generators must lie in Z^n_+")]
    NegativeGenerator,

    #[error("zero generator")]
    ZeroGenerator,

    #[error("cone not full-dimensional")]
    NotFullDimensional,

    #[error("cone is not pointed")]
    NotPointed,

    #[error("lattice not saturated to Z^n (index {index})")]
    LatticeNotSaturated { index: String },

    #[error("unbounded direction: functional is not in the dual cone")]
    UnboundedDirection,

    #[error("not a face of this polyhedron")]
    NotAFace,

    #[error("germ does not vanish at origin")]
    NonVanishingAtOrigin,

    #[error("zero ideal: every generator vanishes on X(S)")]
    ZeroIdeal,

    #[error("base point has a zero coordinate")]
    ZeroBaseCoordinate,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable count {vars} does not match generator count {gens}")]
    VariableCount { vars: usize, gens: usize },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("singular locus is everything: all x_i dF/dx_j vanish")]
    DegenerateFamily,

    #[error("exponent overflow")]
    ExponentOverflow,
}
