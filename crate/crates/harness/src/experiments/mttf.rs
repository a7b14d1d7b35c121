//! Mean time-to-failure table: per cell, the exact double-sum value where
//! the component count sits under the numerical stability cap, a Monte
//! Carlo mean with standard error, and the z-score between them. Cells
//! beyond the cap are marked `mc-only` instead of failing the run.

use rayon::prelude::*;

use lfmo::reliability::SystemModel;
use lfmo::stats::MeanSe;

use crate::config::{Config, SignatureSource, SubCell};
use crate::seeding::stream;
use crate::table::{fmt_f64, ResultTable};
use crate::{Error, Result};

struct Cell {
    sub_index: usize,
    family: String,
    family_param: String,
    n: usize,
    model: SystemModel,
}

pub fn run(config: &Config) -> Result<ResultTable> {
    let mut cells = Vec::new();
    match &config.signature {
        SignatureSource::Family(members) => {
            for (sub_index, sub) in config.cells.iter().enumerate() {
                for member in members {
                    for &n in &config.n_grid {
                        cells.push(Cell {
                            sub_index,
                            family: member.name().into(),
                            family_param: fmt_f64(member.parameter()),
                            n,
                            model: SystemModel::new(sub.spec, member.signature(n)?),
                        });
                    }
                }
            }
        }
        SignatureSource::Structure { name, signature, .. } => {
            for (sub_index, sub) in config.cells.iter().enumerate() {
                cells.push(Cell {
                    sub_index,
                    family: format!("structure:{name}"),
                    family_param: String::new(),
                    n: signature.n(),
                    model: SystemModel::new(sub.spec, signature.clone()),
                });
            }
        }
    }

    let results: Vec<(Option<f64>, MeanSe)> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, cell)| -> Result<(Option<f64>, MeanSe)> {
            let exact = match cell.model.mttf_exact() {
                Ok(v) => Some(v),
                Err(lfmo::Error::TooManyComponents { .. }) => None,
                Err(e) => return Err(Error::from(e)),
            };
            let mut rng = stream(config.seed, config.kind.id(), ci as u64, 0);
            let mc = cell.model.mttf_mc(config.scale.samples, &mut rng)?;
            Ok((exact, mc))
        })
        .collect::<Result<_>>()?;

    let mut table = ResultTable::new(
        super::metadata(config),
        vec![
            "kind",
            "mu",
            "lambda",
            "jump_law",
            "jump_param",
            "family",
            "family_param",
            "n",
            "samples",
            "exact",
            "mc_mean",
            "mc_se",
            "z",
            "method",
            "seed",
        ],
    );
    for (cell, (exact, mc)) in cells.iter().zip(&results) {
        let sub: &SubCell = &config.cells[cell.sub_index];
        let z = exact
            .map(|e| (mc.mean - e) / mc.se)
            .filter(|z| z.is_finite())
            .map(fmt_f64)
            .unwrap_or_default();
        table.push_row(vec![
            config.kind.name().into(),
            fmt_f64(sub.mu),
            fmt_f64(sub.lambda),
            sub.law.name().into(),
            sub.jump_param(),
            cell.family.clone(),
            cell.family_param.clone(),
            cell.n.to_string(),
            config.scale.samples.to_string(),
            exact.map(fmt_f64).unwrap_or_default(),
            fmt_f64(mc.mean),
            fmt_f64(mc.se),
            z,
            if exact.is_some() { "exact+mc" } else { "mc-only" }.into(),
            config.seed.to_string(),
        ]);
    }
    Ok(table)
}
