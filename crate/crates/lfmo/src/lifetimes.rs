//! Joint component lifetimes under a shared subordinator.
//!
//! Component `i` carries an independent unit-exponential trigger `e_i` and
//! fails at the first time the shared path strictly exceeds it:
//!
//! ```text
//! T_i = inf { t : L(t) > e_i }.
//! ```
//!
//! All components of one system read the same trajectory, so one jump can
//! cross several triggers at once and produce exactly simultaneous
//! failures; that dependence is the point of the construction. Each
//! marginal lifetime is exponential with rate `psi(1)`.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::Error;
use crate::subordinator::{PassageWalker, SubordinatorSpec};
use crate::Result;

/// Unit-exponential failure triggers of one system, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct TriggerSet {
    sorted: Vec<f64>,
}

impl TriggerSet {
    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// k-th smallest trigger, 1-based.
    pub fn kth(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.sorted.len() {
            return Err(Error::InvalidParameter(format!(
                "order statistic index must lie in 1..={}, got {k}",
                self.sorted.len()
            )));
        }
        Ok(self.sorted[k - 1])
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "system must have at least one component".into(),
        ));
    }
    Ok(())
}

/// Draw the order statistics of `n` iid unit exponentials.
pub fn sample_triggers<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TriggerSet> {
    check_n(n)?;
    let mut sorted: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(TriggerSet { sorted })
}

/// Sample the failure times of all `n` components jointly, in component
/// order (unsorted).
///
/// Triggers are drawn, sorted with their original positions, and passed in
/// ascending order over one shared lazily generated path; results are then
/// scattered back. Exact ties in the output mark components killed by the
/// same jump.
pub fn sample_failure_times<R: Rng + ?Sized>(
    spec: &SubordinatorSpec,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_n(n)?;
    let mut tagged: Vec<(f64, u32)> = (0..n).map(|i| (Exp1.sample(rng), i as u32)).collect();
    tagged.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut walker = PassageWalker::new(spec, rng);
    let mut times = vec![0.0; n];
    for &(trigger, original) in &tagged {
        times[original as usize] = walker.passage_over(trigger);
    }
    Ok(times)
}

/// Sample the k-th order statistic `T_(k:n)` of the failure times without
/// materializing the full vector: draw the triggers, select the k-th
/// smallest in O(n), and run a single first passage over it.
pub fn sample_kth_failure<R: Rng + ?Sized>(
    spec: &SubordinatorSpec,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<f64> {
    check_n(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "order statistic index must lie in 1..={n}, got {k}"
        )));
    }
    let mut triggers: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let (_, kth, _) = triggers.select_nth_unstable_by(k - 1, f64::total_cmp);
    let barrier = *kth;
    Ok(PassageWalker::new(spec, rng).passage_over(barrier))
}
