//! Reliability curves: per cell and per time point, the Monte Carlo
//! survival of the finite system next to the limit model's Monte Carlo
//! estimate and, where one exists, the limit's closed form. The gap column
//! measures the finite curve against the closed form when available,
//! otherwise against the limit estimate.
//!
//! Per cell, stream 0 drives the finite draws and stream 1 the limit
//! draws; each sample set is shared across the whole time grid.

use rayon::prelude::*;

use lfmo::reliability::{LimitModel, ReliabilityPoint, SystemModel};
use lfmo::signature::{FailureFractionLaw, SignatureFamily};

use crate::config::{Config, SignatureSource, SubCell};
use crate::seeding::stream;
use crate::table::{fmt_f64, ResultTable};
use crate::Result;

struct Cell {
    sub_index: usize,
    family: String,
    family_param: String,
    n: usize,
    model: SystemModel,
    limit: Option<LimitModel>,
}

fn family_cells(config: &Config, members: &[SignatureFamily]) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for (sub_index, sub) in config.cells.iter().enumerate() {
        for member in members {
            for &n in &config.n_grid {
                let limit = match member.limit_law() {
                    Some(law) => Some(LimitModel::new(sub.spec, law)?),
                    None => None,
                };
                cells.push(Cell {
                    sub_index,
                    family: member.name().into(),
                    family_param: fmt_f64(member.parameter()),
                    n,
                    model: SystemModel::new(sub.spec, member.signature(n)?),
                    limit,
                });
            }
        }
    }
    Ok(cells)
}

fn structure_cells(
    config: &Config,
    name: &str,
    signature: &lfmo::signature::Signature,
    density: &Option<lfmo::signature::GridDensity>,
) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for (sub_index, sub) in config.cells.iter().enumerate() {
        let limit = match density {
            Some(d) => Some(LimitModel::new(sub.spec, FailureFractionLaw::Grid(d.clone()))?),
            None => None,
        };
        cells.push(Cell {
            sub_index,
            family: format!("structure:{name}"),
            family_param: String::new(),
            n: signature.n(),
            model: SystemModel::new(sub.spec, signature.clone()),
            limit,
        });
    }
    Ok(cells)
}

struct CellResult {
    finite: Vec<ReliabilityPoint>,
    limit: Option<Vec<ReliabilityPoint>>,
    closed: Vec<Option<f64>>,
}

pub fn run(config: &Config) -> Result<ResultTable> {
    let cells = match &config.signature {
        SignatureSource::Family(members) => family_cells(config, members)?,
        SignatureSource::Structure { name, signature, density } => {
            structure_cells(config, name, signature, density)?
        }
    };

    let results: Vec<CellResult> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, cell)| -> Result<CellResult> {
            let mut finite_rng = stream(config.seed, config.kind.id(), ci as u64, 0);
            let finite =
                cell.model.reliability_mc(&config.t_grid, config.scale.samples, &mut finite_rng)?;
            let limit = match &cell.limit {
                Some(model) => {
                    let mut limit_rng = stream(config.seed, config.kind.id(), ci as u64, 1);
                    Some(model.reliability_mc(
                        &config.t_grid,
                        config.scale.limit_samples,
                        &mut limit_rng,
                    )?)
                }
                None => None,
            };
            let closed = config
                .t_grid
                .iter()
                .map(|&t| match &cell.limit {
                    Some(model) => model.reliability_exact(t),
                    None => Ok(None),
                })
                .collect::<lfmo::Result<Vec<_>>>()?;
            Ok(CellResult { finite, limit, closed })
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
            "t",
            "samples",
            "limit_samples",
            "finite_mc",
            "finite_se",
            "limit_mc",
            "limit_se",
            "limit_closed",
            "abs_gap",
            "seed",
        ],
    );
    for (cell, result) in cells.iter().zip(&results) {
        let sub: &SubCell = &config.cells[cell.sub_index];
        for (ti, point) in result.finite.iter().enumerate() {
            let limit_point = result.limit.as_ref().map(|points| &points[ti]);
            let closed = result.closed[ti];
            let reference = closed.or(limit_point.map(|p| p.survival));
            table.push_row(vec![
                config.kind.name().into(),
                fmt_f64(sub.mu),
                fmt_f64(sub.lambda),
                sub.law.name().into(),
                sub.jump_param(),
                cell.family.clone(),
                cell.family_param.clone(),
                cell.n.to_string(),
                fmt_f64(point.t),
                config.scale.samples.to_string(),
                config.scale.limit_samples.to_string(),
                fmt_f64(point.survival),
                fmt_f64(point.se),
                limit_point.map(|p| fmt_f64(p.survival)).unwrap_or_default(),
                limit_point.map(|p| fmt_f64(p.se)).unwrap_or_default(),
                closed.map(fmt_f64).unwrap_or_default(),
                reference
                    .map(|r| fmt_f64((point.survival - r).abs()))
                    .unwrap_or_default(),
                config.seed.to_string(),
            ]);
        }
    }
    Ok(table)
}
