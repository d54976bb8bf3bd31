use thiserror::Error;

/// Errors produced by the workbench.
///
/// Variants split into input problems (malformed graphs or property files,
/// violated preconditions) and resource limits (order caps, expansion
/// limits). [`Error::is_resource_limit`] tells the two apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("star-join expansion has {pairs} cross pairs, above the limit of {limit}")]
    ExpansionTooLarge { pairs: usize, limit: usize },

    #[error("decomposition check at k = {k}: {source}")]
    AtMultiplicity { k: usize, source: Box<Error> },

    #[error("completeness of {property} exceeds the order cap {cap}")]
    CompletenessExceedsCap { property: String, cap: usize },

    #[error("no non-member of {property} found up to order {cap}")]
    NoNonMember { property: String, cap: usize },

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("malformed graph text: {0}")]
    GraphText(String),

    #[error("malformed property file: {0}")]
    PropertyFile(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("trivial property rejected as a factor: {0}")]
    TrivialFactor(String),

    #[error("labelings refer to different host graphs")]
    HostMismatch,

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

impl Error {
    /// True for errors caused by a cap or limit rather than by bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::ExpansionTooLarge { .. }
                | Error::CompletenessExceedsCap { .. }
                | Error::NoNonMember { .. }
        ) || matches!(self, Error::AtMultiplicity { source, .. } if source.is_resource_limit())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
