use thiserror::Error;

/// Errors raised by the arithmetic, representation and descent layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("exponents do not form a subgroup of (Z/{0})^x")]
    NotASubgroup(u32),
    #[error("field is not quadratic over its base (degree {0})")]
    NotQuadratic(usize),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("no norm witness within height bound {0}")]
    BoundExceeded(u64),
    #[error("norm equation is locally unsolvable at {0:?}")]
    Unsolvable(Vec<String>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("group closure exceeded order cap {0}")]
    ClosureBoundExceeded(usize),
    #[error("objects belong to different groups")]
    GroupMismatch,
    #[error("character is not irreducible")]
    NotIrreducible,
    #[error("character table lift failed: {0}")]
    LiftFailure(String),
    #[error("representation is not absolutely irreducible")]
    NotAbsolutelyIrreducible,
    #[error("no intertwiner from the twist by {0}")]
    NoIntertwiner(u32),
    #[error("defect matrix for ({0}, {1}) is not scalar")]
    NonScalarDefect(u32, u32),
    #[error("acting Galois group is not cyclic")]
    NotCyclic,
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("class representative has no real embedding: {0}")]
    NotRealEmbeddable(String),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    CocycleIdentity(u32, u32, u32),
    #[error("cocycle is not split by the given cochain")]
    CocycleNotSplit,
    #[error("fixed space has dimension {found}, expected {expected}")]
    FixedSpaceDimensionMismatch { expected: usize, found: usize },
    #[error("not a subfield of the coefficient field")]
    NotASubfield,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
