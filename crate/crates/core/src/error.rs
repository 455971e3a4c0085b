use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidCharacteristic(u64),
    #[error("ambient dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalars from different fields were combined")]
    FieldMismatch,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation ideal is not admissible: surviving paths did not stabilize by degree {cap}")]
    NonAdmissible { cap: usize },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("endomorphism {0} is not invertible")]
    NotEI(String),
    #[error("objects {0} and {1} are isomorphic")]
    NotSkeletal(String, String),
    #[error("algebra is not split over the base field: {0}")]
    NotSplit(String),
    #[error("unsupported field for this computation: {0}")]
    UnsupportedField(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module homomorphism")]
    NotAHomomorphism,
    #[error("not a directed stratification: {0}")]
    NotAStratification(String),
    #[error("object set is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("object {0} is not minimal for the module")]
    NotMinimalObject(String),
    #[error("paths are not parallel: {0}")]
    NotParallel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
