//! The five experiment kinds.
//!
//! Each runner enumerates its parameter cells in config order (subordinator
//! grid outermost, then signature members, then n, then t or q), derives one
//! random stream per (cell, replication) job, and assembles rows in cell
//! order regardless of which worker finished first.

mod curve;
mod hypothesis;
mod mean;
mod mttf;
mod pvalue;

use crate::config::{Config, Kind, SCHEMA_ID};
use crate::table::{Metadata, ResultTable};
use crate::Result;

pub fn run(config: &Config) -> Result<ResultTable> {
    match config.kind {
        Kind::PvalueStudy => pvalue::run(config),
        Kind::MeanStudy => mean::run(config),
        Kind::ReliabilityCurve => curve::run(config),
        Kind::HypothesisReport => hypothesis::run(config),
        Kind::MttfTable => mttf::run(config),
    }
}

pub(crate) fn metadata(config: &Config) -> Metadata {
    Metadata {
        schema: SCHEMA_ID.into(),
        kind: config.kind.name(),
        config_sha256: config.config_sha256.clone(),
        seed: config.seed,
        tool_version: env!("CARGO_PKG_VERSION"),
    }
}

/// Unit-rate exponential inverse-CDF draw scaled to the given rate.
pub(crate) fn exponential_draw<R: rand::Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    -(1.0 - rng.random::<f64>()).ln() / rate
}
