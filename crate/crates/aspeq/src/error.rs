//! One error type for the whole crate.

use thiserror::Error;

use crate::textio::SourceSpan;

#[derive(Debug, Error)]
pub enum Error {
    #[error("atom `{0}` is declared both visible and hidden")]
    OverlappingDeclarations(String),
    #[error("declaration names atom id {0} outside the symbol table")]
    UnknownAtom(usize),
    #[error("choice rule must have at least one head atom")]
    EmptyChoiceHeads,
    #[error("interpretation is not a subset of the program's Herbrand base")]
    NotInHerbrandBase,
    #[error("weight sum exceeds the 64-bit range")]
    Overflow,
    #[error("upper bound {upper} is below lower bound {lower}")]
    BoundOrder { lower: u64, upper: u64 },
    #[error("{what} has {size} atoms, over the cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("visible Herbrand bases differ (only left: {only_left:?}; only right: {only_right:?})")]
    VisibleBaseMismatch { only_left: Vec<String>, only_right: Vec<String> },
    #[error("compute statement mentions hidden atom `{0}`")]
    HiddenComputeAtom(String),
    #[error("generated atom name `{0}` collides with an existing atom")]
    ReservedNameCollision(String),
    #[error("interpretation is not a stable model of the translation")]
    NotAStableModel,
    #[error("compute statements are not supported by this operation")]
    ComputePresent,
    #[error("even-subsets generator requires an odd size, got {0}")]
    EvenSizeRequested(u64),
    #[error("generator requires a positive size")]
    EmptyInstance,
    #[error("cannot drop a rule from a program with no rules")]
    NoRulesToDrop,
    #[error("3-SAT generator needs at least 3 variables, got {0}")]
    TooFewVariables(u64),
    #[error("{span}: {msg}")]
    Parse { span: SourceSpan, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
