use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shape or index problems: duplicate names, wrong dimensions,
    /// subsets from a different ground set.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("capacity exceeded: more than {limit} extents (enumerated {found} so far)")]
    Capacity { limit: usize, found: usize },

    /// Scale kind and pre-scaling disagree (e.g. an ordinal scale over an
    /// unordered domain).
    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("value {value:?} of object {object:?} at attribute {attribute:?} is not in the scale's value domain")]
    Scaling {
        object: String,
        attribute: String,
        value: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Invalid user-supplied specification: unknown names, non-extent
    /// members, covers that do not cover.
    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
