use thiserror::Error;

/// Errors raised by the algebraic engines.
///
/// Every variant has a stable short name (see [`Error::name`]) which the
/// command-line front end prints on failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown or unsupported root datum type: {0:?}")]
    UnknownType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("character is not Weyl-invariant at weight {0}")]
    NotWeylInvariant(String),
    #[error("root data differ: {0} vs {1}")]
    DatumMismatch(String, String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("no restriction witness for embedding {0}")]
    MissingWitness(String),
    #[error("no standard witness available: {0}")]
    NoWitnessAvailable(String),
    #[error("group model {name} has odd dimension d = {d}")]
    OddDimension { name: String, d: u32 },
    #[error("weight {0} is not declared strongly elliptic")]
    NotStronglyElliptic(String),
    #[error("module action needs a finitely supported K-theory class")]
    InfiniteA,
    #[error("properness of the model is not certified")]
    PropernessUncertified,
    #[error("properness asserted but no degree bound supplied")]
    DegreeBoundMissing,
    #[error("vectors do not lie in an open half-space")]
    NotPointedCone,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownType(_) => "UnknownType",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotDominant(_) => "NotDominant",
            Error::NotWeylInvariant(_) => "NotWeylInvariant",
            Error::DatumMismatch(..) => "DatumMismatch",
            Error::LatticeMismatch(_) => "LatticeMismatch",
            Error::MissingWitness(_) => "MissingWitness",
            Error::NoWitnessAvailable(_) => "NoWitnessAvailable",
            Error::OddDimension { .. } => "OddDimension",
            Error::NotStronglyElliptic(_) => "NotStronglyElliptic",
            Error::InfiniteA => "InfiniteA",
            Error::PropernessUncertified => "PropernessUncertified",
            Error::DegreeBoundMissing => "DegreeBoundMissing",
            Error::NotPointedCone => "NotPointedCone",
            Error::InvalidModel(_) => "InvalidModel",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
