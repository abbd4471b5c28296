use alloc::string::String;

use crate::phase::Chart;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed or non-finite argument.
    #[error("argument error: {0}")]
    Argument(String),

    #[error("chart mismatch: expected {expected:?}, found {found:?}")]
    ChartMismatch { expected: Chart, found: Chart },

    /// An observable could not be evaluated at the requested state.
    #[error("evaluation of `{observable}` failed: {reason}")]
    Evaluation { observable: String, reason: String },

    /// A model specification violates one of its parameter constraints.
    #[error("build error: {0}")]
    Build(String),

    #[error("unknown preset `{name}`; valid presets: {valid}")]
    Lookup { name: String, valid: String },

    /// The implicit midpoint solve did not converge.
    #[error("step did not converge after {iterations} iterations (residual {residual:e})")]
    Step { iterations: usize, residual: f64 },

    /// A step came within the guard margin of a domain endpoint or singular locus.
    #[error("boundary reached at distance {distance:e} from {what}")]
    Boundary { distance: f64, what: String },

    /// Integration halted; wraps the failing step.
    #[error("integration halted at step {step}: {source}")]
    Halted {
        step: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
