use thiserror::Error;

/// Errors for the whole crate.
///
/// The CLI maps `is_resource_limit` errors to a distinct exit code, so
/// anything that means "the instance is too big for the configured caps"
/// must be one of the limit variants, not `InvalidParameter`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("set must be non-empty")]
    EmptySet,

    #[error("modulus too small: n = {n} must exceed the diameter {diam}")]
    ModulusTooSmall { n: u64, diam: u64 },

    #[error("group order {order} exceeds the exact-search limit {limit}")]
    ExactSearchLimit { order: u64, limit: u64 },

    #[error("diameter {diam} exceeds the frontier state-width limit {limit}")]
    StateWidthLimit { diam: u64, limit: u64 },

    #[error("branch-and-bound node budget {budget} exhausted")]
    NodeBudgetExhausted { budget: u64 },

    #[error(
        "sweep bound {requested} exceeds the limit {limit}; \
         raise the limit or split the run into shards (--shards/--shard)"
    )]
    SweepLimit { requested: u64, limit: u64 },

    #[error(
        "enumeration of ~{candidates} candidate sets exceeds the budget {budget}; \
         narrow the window or raise the budget"
    )]
    EnumerationLimit { candidates: u128, budget: u64 },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for errors caused by a configured resource cap rather than by
    /// malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ExactSearchLimit { .. }
                | Error::StateWidthLimit { .. }
                | Error::NodeBudgetExhausted { .. }
                | Error::SweepLimit { .. }
                | Error::EnumerationLimit { .. }
        )
    }
}
