use thiserror::Error;

/// Errors raised by group construction and the structural algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection on 0..{degree}: {images:?}")]
    NotAPermutation { degree: usize, images: Vec<u32> },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("group order exceeds the bound {bound}")]
    OrderBound { bound: usize },
    #[error("group of order {order} exceeds the lattice bound {bound}")]
    LatticeBound { order: usize, bound: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("{0} is not normal")]
    NotNormal(&'static str),
    #[error("section is not invariant under conjugation by the parent group")]
    SectionNotInvariant,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("pair is not a chief factor of the group")]
    NotChiefFactor,
    #[error("formation `{0}` is not hereditary")]
    NotHereditary(String),
    #[error("unknown formation `{0}`")]
    UnknownFormation(String),
    #[error("invalid sigma partition: {0}")]
    InvalidSigma(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
