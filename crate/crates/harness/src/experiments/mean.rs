//! Mean-convergence study: per cell, average N system failure times and
//! report the signed relative error against the limiting mean 1/psi(b),
//! together with the standard error of the mean (and its matching noise
//! floor on the relative-error scale).
//!
//! The N draws are split into fixed-size chunks, one stream per chunk, so
//! worker count never changes the sample.

use rayon::prelude::*;

use lfmo::reliability::SystemModel;
use lfmo::signature::SignatureFamily;
use lfmo::stats::{mean_and_se, relative_error};

use crate::config::{Config, SignatureSource};
use crate::seeding::stream;
use crate::table::{fmt_f64, ResultTable};
use crate::{Error, Result};

const CHUNK: usize = 1000;

struct Cell {
    sub_index: usize,
    b: f64,
    n: usize,
    model: SystemModel,
    limit_mean: f64,
}

pub fn run(config: &Config) -> Result<ResultTable> {
    let SignatureSource::Family(members) = &config.signature else {
        return Err(Error::Runtime("mean-study requires a signature family".into()));
    };
    let mut cells = Vec::new();
    for (sub_index, sub) in config.cells.iter().enumerate() {
        for member in members {
            let SignatureFamily::PowerLaw { b } = *member else {
                return Err(Error::Runtime("mean-study requires the powerlaw family".into()));
            };
            for &n in &config.n_grid {
                cells.push(Cell {
                    sub_index,
                    b,
                    n,
                    model: SystemModel::new(sub.spec, member.signature(n)?),
                    limit_mean: 1.0 / sub.spec.laplace_exponent(b)?,
                });
            }
        }
    }

    let samples = config.scale.samples;
    let chunks = samples.div_ceil(CHUNK);
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|ci| (0..chunks as u64).map(move |c| (ci, c)))
        .collect();
    let mut parts: Vec<(usize, u64, Vec<f64>)> = jobs
        .par_iter()
        .map(|&(ci, chunk)| {
            let cell = &cells[ci];
            let mut rng = stream(config.seed, config.kind.id(), ci as u64, chunk);
            let count = CHUNK.min(samples - chunk as usize * CHUNK);
            let draws: Vec<f64> =
                (0..count).map(|_| cell.model.sample_failure_time(&mut rng)).collect();
            (ci, chunk, draws)
        })
        .collect();
    parts.sort_unstable_by_key(|part| (part.0, part.1));

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
            "samples",
            "mean_tsys",
            "se_mean",
            "limit_mean",
            "rel_error",
            "rel_error_se",
            "seed",
        ],
    );
    let mut draws = Vec::with_capacity(samples);
    for (ci, cell_parts) in parts.chunks_exact(chunks).enumerate() {
        let cell = &cells[ci];
        let sub = &config.cells[cell.sub_index];
        draws.clear();
        for (_, _, part) in cell_parts {
            draws.extend_from_slice(part);
        }
        let summary = mean_and_se(&draws)?;
        let rel = relative_error(summary.mean, cell.limit_mean)?;
        table.push_row(vec![
            config.kind.name().into(),
            fmt_f64(sub.mu),
            fmt_f64(sub.lambda),
            sub.law.name().into(),
            sub.jump_param(),
            fmt_f64(cell.b),
            cell.n.to_string(),
            samples.to_string(),
            fmt_f64(summary.mean),
            fmt_f64(summary.se),
            fmt_f64(cell.limit_mean),
            fmt_f64(rel),
            fmt_f64(summary.se / cell.limit_mean),
            config.seed.to_string(),
        ]);
    }
    Ok(table)
}
