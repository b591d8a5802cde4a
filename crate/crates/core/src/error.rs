use thiserror::Error;

/// Errors raised by the blade-arrangement library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),

    #[error("label {0} is not in the ground set")]
    LabelOutOfRange(u32),

    #[error("duplicate label {0}")]
    DuplicateLabel(u32),

    #[error("subset has {k} elements; expected between 1 and {max}")]
    InvalidCardinality { k: usize, max: usize },

    #[error("subsets have different cardinalities ({0} and {1})")]
    CardinalityMismatch(usize, usize),

    #[error("subset {0} appears twice in the collection")]
    DuplicateSubset(String),

    #[error("objects live on different ground sets")]
    GroundMismatch,

    #[error("invalid ordered set partition: {0}")]
    InvalidOsp(String),

    #[error("blade {blade} is not of hypersimplicial type Δ({k},{n})")]
    NotHypersimplicial { blade: String, k: i64, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("point has {found} coordinates; expected {expected}")]
    WrongDimension { found: usize, expected: usize },

    #[error("point has coordinate sum {found}; expected {expected}")]
    WrongLevel { found: String, expected: i64 },

    #[error("the tropical oracle only applies to undecorated blades (all weights 0)")]
    TropicalRequiresUndecorated,

    #[error("facet restriction needs k >= 2, got k = {0}")]
    RestrictionNeedsRank(usize),

    #[error("label {0} belongs to the subset; it cannot be deleted at x_{0} = 0")]
    DeleteMember(u32),

    #[error("parameters out of range: {0}")]
    ParameterRange(String),

    #[error("blade {blade} has {blocks} blocks; a split needs exactly 2")]
    NotASplit { blade: String, blocks: usize },

    #[error("splits {0} and {1} are not compatible")]
    IncompatibleSplits(String, String),

    #[error("{0} and {1} are not weakly separated")]
    NotWeaklySeparated(String, String),

    #[error("enumeration exceeded its time budget")]
    TimeBudgetExceeded,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
