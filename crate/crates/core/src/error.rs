use thiserror::Error;

/// Which poset axiom a relation violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation has a directed cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("relation is not a partial order: {axiom} fails at {witness}")]
    NotAPartialOrder { axiom: Axiom, witness: String },
    #[error("operands belong to different carriers")]
    ParentMismatch,
    #[error("resource cap exceeded: {what} is {actual}, limit {limit}")]
    ResourceCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("subset {0} is not a cut")]
    InvalidCut(String),
    #[error("map source is an unordered set")]
    SourceNotOrdered,
    #[error("map is not increasing: {0}")]
    NotIncreasing(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),
    #[error("no {0} bound exists in the completion")]
    NoBound(&'static str),
    #[error("equation has more than one solution: {0} and {1}")]
    MultipleSolutions(String, String),
    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }

    /// The variant name, for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownElement(_) => "UnknownElement",
            Error::CycleDetected(..) => "CycleDetected",
            Error::NotAPartialOrder { .. } => "NotAPartialOrder",
            Error::ParentMismatch => "ParentMismatch",
            Error::ResourceCap { .. } => "ResourceCap",
            Error::InvalidCut(_) => "InvalidCut",
            Error::SourceNotOrdered => "SourceNotOrdered",
            Error::NotIncreasing(_) => "NotIncreasing",
            Error::EmptyFamily => "EmptyFamily",
            Error::NotTotal(_) => "NotTotal",
            Error::NoBound(_) => "NoBound",
            Error::MultipleSolutions(..) => "MultipleSolutions",
            Error::BadSpec(_) => "BadSpec",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
