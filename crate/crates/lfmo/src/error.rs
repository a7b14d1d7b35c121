//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A path was queried outside the window it was sampled on.
    #[error("time {t} lies outside the sampled horizon {horizon}")]
    OutsideHorizon { t: f64, horizon: f64 },

    /// An exact algorithm was asked for more components than it can
    /// evaluate stably or affordably.
    #[error("{op} supports at most {cap} components, got {n}; use the Monte Carlo estimator instead")]
    TooManyComponents {
        op: &'static str,
        n: usize,
        cap: usize,
    },

    /// A structure function decreased after repairing a component. The two
    /// configurations are printed with component 1 leftmost.
    #[error("structure is not monotone: {lower} works but {upper} (component {component} repaired) fails")]
    NotMonotone {
        lower: String,
        upper: String,
        component: usize,
    },

    /// A component that never changes the system state.
    #[error("component {component} is irrelevant: the structure never depends on it")]
    IrrelevantComponent { component: usize },

    /// Signature weights failed validation.
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    /// A truth-table file could not be interpreted.
    #[error("truth table: {0}")]
    TruthTable(String),

    /// A density that should integrate to one does not.
    #[error("density integrates to {integral}, expected 1 within {tolerance}")]
    NotNormalized { integral: f64, tolerance: f64 },

    /// A statistic was requested on an empty sample.
    #[error("empty sample")]
    EmptySample,

    /// A sample contains NaN or an infinity.
    #[error("sample contains a non-finite value")]
    NonFiniteSample,

    /// A statistic needs more observations than were supplied.
    #[error("need at least {need} observations, got {got}")]
    TooFewObservations { need: usize, got: usize },

    /// Relative error against a zero reference.
    #[error("reference value is zero, relative error is undefined")]
    ZeroReference,

    /// A model that cannot produce the requested quantity, for example a
    /// subordinator with neither drift nor jumps, which never crosses a
    /// positive barrier.
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
}
