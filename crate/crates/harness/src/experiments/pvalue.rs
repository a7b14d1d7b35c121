//! Convergence-in-distribution study: per cell, repeat R times {draw S
//! system failure times and `limit_samples` draws of the limiting
//! Exp(psi(b)), run the two-sample KS test}, then report the mean p-value
//! and its standard error over the repetitions.
//!
//! Within one repetition's stream the system sample is drawn first, then
//! the reference sample; both are part of the determinism contract.

use rayon::prelude::*;

use lfmo::reliability::SystemModel;
use lfmo::signature::SignatureFamily;
use lfmo::stats::{ks_two_sample, mean_and_se};

use crate::config::{Config, SignatureSource};
use crate::seeding::stream;
use crate::table::{fmt_f64, ResultTable};
use crate::{Error, Result};

struct Cell {
    sub_index: usize,
    b: f64,
    n: usize,
    model: SystemModel,
    psi_b: f64,
}

pub fn run(config: &Config) -> Result<ResultTable> {
    let SignatureSource::Family(members) = &config.signature else {
        return Err(Error::Runtime("pvalue-study requires a signature family".into()));
    };
    let mut cells = Vec::new();
    for (sub_index, sub) in config.cells.iter().enumerate() {
        for member in members {
            let SignatureFamily::PowerLaw { b } = *member else {
                return Err(Error::Runtime("pvalue-study requires the powerlaw family".into()));
            };
            for &n in &config.n_grid {
                cells.push(Cell {
                    sub_index,
                    b,
                    n,
                    model: SystemModel::new(sub.spec, member.signature(n)?),
                    psi_b: sub.spec.laplace_exponent(b)?,
                });
            }
        }
    }

    let reps = config.scale.repetitions;
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|ci| (0..reps as u64).map(move |r| (ci, r)))
        .collect();
    let mut p_values: Vec<(usize, u64, f64)> = jobs
        .par_iter()
        .map(|&(ci, rep)| -> Result<(usize, u64, f64)> {
            let cell = &cells[ci];
            let mut rng = stream(config.seed, config.kind.id(), ci as u64, rep);
            let system: Vec<f64> = (0..config.scale.samples)
                .map(|_| cell.model.sample_failure_time(&mut rng))
                .collect();
            let reference: Vec<f64> = (0..config.scale.limit_samples)
                .map(|_| super::exponential_draw(&mut rng, cell.psi_b))
                .collect();
            let ks = ks_two_sample(&system, &reference)?;
            Ok((ci, rep, ks.p_value))
        })
        .collect::<Result<_>>()?;
    p_values.sort_unstable_by_key(|value| (value.0, value.1));

    let mut table = ResultTable::new(
        super::metadata(config),
        vec![
            "kind",
            "mu",
            "lambda",
            "jump_law",
            "jump_param",
            "b",
            "n",
            "reps",
            "samples_per_test",
            "limit_samples",
            "mean_p",
            "se_p",
            "seed",
        ],
    );
    for (ci, chunk) in p_values.chunks_exact(reps).enumerate() {
        let cell = &cells[ci];
        let sub = &config.cells[cell.sub_index];
        let ps: Vec<f64> = chunk.iter().map(|&(_, _, p)| p).collect();
        let summary = mean_and_se(&ps)?;
        table.push_row(vec![
            config.kind.name().into(),
            fmt_f64(sub.mu),
            fmt_f64(sub.lambda),
            sub.law.name().into(),
            sub.jump_param(),
            fmt_f64(cell.b),
            cell.n.to_string(),
            reps.to_string(),
            config.scale.samples.to_string(),
            config.scale.limit_samples.to_string(),
            fmt_f64(summary.mean),
            fmt_f64(summary.se),
            config.seed.to_string(),
        ]);
    }
    Ok(table)
}
