//! Reliability of large coherent systems with Levy-frailty Marshall-Olkin
//! component lifetimes.
//!
//! A system of `n` exchangeable components is driven by one shared
//! nondecreasing Levy process (a subordinator with drift and compound
//! Poisson jumps): component `i` fails the instant the process exceeds an
//! independent unit-exponential trigger, so a single large jump can kill
//! several components at once. System structure enters through the
//! Samaniego signature, which writes the system lifetime as a mixture of
//! order statistics of the component lifetimes.
//!
//! The crate provides
//!
//! * exact path and first-passage sampling for drift plus compound Poisson
//!   subordinators ([`subordinator`]),
//! * joint lifetime sampling with the shared-shock dependence, including
//!   simultaneous failures ([`lifetimes`]),
//! * structure functions, signatures, and their large-system diagnostics
//!   ([`signature`]),
//! * exact mean time to failure, Monte Carlo reliability, and the
//!   large-system limit laws ([`reliability`]),
//! * the two-sample Kolmogorov-Smirnov machinery used to compare finite
//!   systems against their limits ([`stats`]).

pub mod error;
pub mod lifetimes;
mod numeric;
pub mod reliability;
pub mod signature;
pub mod stats;
pub mod subordinator;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
