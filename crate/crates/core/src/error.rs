use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("unknown subgroup `{sub}` of `{parent}`")]
    UnknownSubgroup { parent: String, sub: String },

    #[error("invalid subgroup embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid coset representatives: {0}")]
    InvalidCosetRepresentatives(String),

    #[error("irreps unavailable for group `{0}`")]
    IrrepsUnavailable(String),

    #[error("unknown irrep `{label}` of `{group}`")]
    UnknownIrrep { group: String, label: String },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("non-representation or numerical failure: {0}")]
    NonRepresentation(String),

    #[error("group mismatch: expected `{expected}`, found `{found}`")]
    GroupMismatch { expected: String, found: String },

    #[error("label mismatch between tables: {0}")]
    TableMismatch(String),

    #[error("degree l = {l} out of range (supported up to {max})")]
    DegreeOutOfRange { l: usize, max: usize },

    #[error("direction is not a unit vector (norm {0})")]
    NotUnitVector(f64),

    #[error("invalid SO(2) representation: {0}")]
    InvalidSo2Rep(String),

    #[error("rank-deficient radial basis: {0}")]
    RankDeficientRadialBasis(String),

    #[error("invalid kernel configuration: {0}")]
    InvalidKernelConfig(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid filter bank: {0}")]
    InvalidFilterBank(String),
}

pub type Result<T> = std::result::Result<T, Error>;
