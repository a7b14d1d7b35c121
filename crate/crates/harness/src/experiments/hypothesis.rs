//! Signature-family diagnostics, no sampling involved: per family member
//! and system size, the boundary-mass statistic; per evaluation point, the
//! scaled weight `n * s_ceil(nq)` next to the limiting density where the
//! family has one, with the absolute gap. The behavior column carries the
//! family's limit classification (density, point mass, or mass escaping to
//! the boundary).

use lfmo::signature::density_convergence_check;

use crate::config::{Config, SignatureSource};
use crate::table::{fmt_f64, ResultTable};
use crate::{Error, Result};

pub fn run(config: &Config) -> Result<ResultTable> {
    let SignatureSource::Family(members) = &config.signature else {
        return Err(Error::Runtime("hypothesis-report requires a signature family".into()));
    };
    let mut table = ResultTable::new(
        super::metadata(config),
        vec![
            "kind",
            "family",
            "family_param",
            "n",
            "q",
            "b_statistic",
            "scaled_weight",
            "limit_density",
            "abs_gap",
            "behavior",
            "seed",
        ],
    );
    for member in members {
        let check = density_convergence_check(
            member,
            &config.n_grid,
            &config.q_grid,
            config.cd_tolerance,
        )?;
        let behavior = member.behavior().name();
        for (ni, stat) in check.boundary_stats.iter().enumerate() {
            for (qi, &q) in config.q_grid.iter().enumerate() {
                let row = &check.rows[ni * config.q_grid.len() + qi];
                debug_assert_eq!(row.n, stat.n);
                debug_assert_eq!(row.q, q);
                let gap = row.limit_density.map(|f| (row.scaled_weight - f).abs());
                table.push_row(vec![
                    config.kind.name().into(),
                    member.name().into(),
                    fmt_f64(member.parameter()),
                    stat.n.to_string(),
                    fmt_f64(q),
                    fmt_f64(stat.statistic),
                    fmt_f64(row.scaled_weight),
                    row.limit_density.map(fmt_f64).unwrap_or_default(),
                    gap.map(fmt_f64).unwrap_or_default(),
                    behavior.into(),
                    config.seed.to_string(),
                ]);
            }
        }
    }
    Ok(table)
}
