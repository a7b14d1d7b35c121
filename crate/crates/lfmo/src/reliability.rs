//! System reliability: exact formulas for small systems, Monte Carlo for
//! any size, and the large-system limit model.
//!
//! For a coherent system with signature `s` over `n` exchangeable
//! components, survival mixes over order statistics,
//!
//! ```text
//! P(T_sys > t) = sum_k s_k P(T_(k:n) > t),
//! ```
//!
//! and each order statistic reduces to minima over subsets. Under the
//! shared-subordinator construction the minimum over any `l` components is
//! exponential with rate `psi(l)`, which gives the exact survival
//!
//! ```text
//! P(T_(k:n) > t) = sum_(j=n-k+1..n) (-1)^(j-(n-k+1)) C(j-1, n-k) C(n, j) exp(-t psi(j))
//! ```
//!
//! and, term by term after integration, the exact mean lifetime. Both are
//! alternating sums whose summands grow combinatorially, so they are
//! restricted to `n <= 30`; absolute accuracy drifts from full precision at
//! small `n` to roughly 1e-8 at `n = 20` and 1e-4 at `n = 30` for
//! signatures loading the middle indices.
//!
//! For growing systems whose failure fraction `K / (n + 1)` converges to a
//! law `Q` on (0, 1), the system lifetime converges to the passage time
//!
//! ```text
//! T = inf { t : 1 - exp(-L_t) > Q },
//! ```
//!
//! the moment the failed fraction of an infinite exchangeable pool crosses
//! the structural threshold. [`LimitModel`] samples that passage time
//! directly and knows the closed forms: beta(1, b) thresholds give an
//! exponential lifetime with rate `psi(b)`, and beta(b, 1) thresholds with
//! integer `b` reduce to a short alternating sum.

use rand::Rng;

use crate::error::Error;
use crate::lifetimes::sample_kth_failure;
use crate::numeric::{pascal_triangle, NeumaierSum};
use crate::signature::{FailureFractionLaw, Signature, StructureFunction};
use crate::subordinator::{PassageWalker, SubordinatorSpec};
use crate::Result;

/// Exact formulas blow up combinatorially past this size.
pub const MAX_EXACT_COMPONENTS: usize = 30;

/// One point of an estimated survival curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityPoint {
    pub t: f64,
    /// Estimated `P(T > t)`.
    pub survival: f64,
    /// Binomial standard error of the estimate.
    pub se: f64,
}

fn check_time_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    for &t in t_grid {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "time grid entries must be finite and nonnegative, got {t}"
            )));
        }
    }
    Ok(())
}

fn check_reps(reps: usize) -> Result<()> {
    if reps == 0 {
        return Err(Error::TooFewObservations { need: 1, got: 0 });
    }
    Ok(())
}

/// Empirical survival over a time grid from one shared set of failure
/// times. Sharing the sample across the grid makes the curve monotone by
/// construction; points at nearby times are correlated.
fn survival_points(mut times: Vec<f64>, t_grid: &[f64]) -> Vec<ReliabilityPoint> {
    times.sort_unstable_by(f64::total_cmp);
    let n = times.len() as f64;
    t_grid
        .iter()
        .map(|&t| {
            let dead = times.partition_point(|&v| v <= t);
            let survival = (times.len() - dead) as f64 / n;
            ReliabilityPoint {
                t,
                survival,
                se: (survival * (1.0 - survival) / n).sqrt(),
            }
        })
        .collect()
}

/// Exact survival of the k-th order statistic of `n` exchangeable
/// lifetimes, as an alternating sum over the minima rates `psi(j)`.
fn kth_order_survival(
    psi: &[f64],
    binom: &[Vec<f64>],
    n: usize,
    k: usize,
    t: f64,
) -> f64 {
    let base = n - k + 1;
    let mut acc = NeumaierSum::new();
    for j in base..=n {
        let coeff = binom[n][j] * binom[j - 1][n - k];
        let sign = if (j - base).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc.add(sign * coeff * (-t * psi[j - 1]).exp());
    }
    acc.total()
}

/// A finite mixed coherent system: a subordinator driving the component
/// lifetimes plus a signature describing the structure.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemModel {
    spec: SubordinatorSpec,
    signature: Signature,
}

impl SystemModel {
    pub fn new(spec: SubordinatorSpec, signature: Signature) -> Self {
        Self { spec, signature }
    }

    /// Build from an explicit structure via signature enumeration.
    pub fn from_structure(spec: SubordinatorSpec, structure: &StructureFunction) -> Result<Self> {
        Ok(Self::new(spec, Signature::from_structure(structure)?))
    }

    pub fn subordinator(&self) -> &SubordinatorSpec {
        &self.spec
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn n(&self) -> usize {
        self.signature.n()
    }

    /// Draw one system failure time: the failure index comes from the
    /// signature, then the matching order statistic from the shared
    /// subordinator.
    pub fn sample_failure_time<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = self.signature.sample_failure_index(rng);
        sample_kth_failure(&self.spec, self.n(), k, rng)
            .expect("signature index is always a valid order statistic")
    }

    /// Estimate the survival curve on a grid from `reps` independent
    /// system failure times. One sample set serves the whole grid.
    pub fn reliability_mc<R: Rng + ?Sized>(
        &self,
        t_grid: &[f64],
        reps: usize,
        rng: &mut R,
    ) -> Result<Vec<ReliabilityPoint>> {
        check_time_grid(t_grid)?;
        check_reps(reps)?;
        let times: Vec<f64> = (0..reps).map(|_| self.sample_failure_time(rng)).collect();
        Ok(survival_points(times, t_grid))
    }

    /// Exact survival `P(T_sys > t)`; requires `n <= 30`.
    pub fn reliability_exact(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "time must be finite and nonnegative, got {t}"
            )));
        }
        let n = self.n();
        if n > MAX_EXACT_COMPONENTS {
            return Err(Error::TooManyComponents {
                op: "exact reliability",
                n,
                cap: MAX_EXACT_COMPONENTS,
            });
        }
        let psi = self.minima_rates()?;
        let binom = pascal_triangle(n);
        let mut acc = NeumaierSum::new();
        for (i, &s) in self.signature.weights().iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            acc.add(s * kth_order_survival(&psi, &binom, n, i + 1, t));
        }
        Ok(acc.total().clamp(0.0, 1.0))
    }

    /// Exact mean time to failure; requires `n <= 30`.
    ///
    /// Integrating the order-statistic survival term by term gives
    ///
    /// ```text
    /// E[T_sys] = sum_k s_k sum_(j=n-k+1..n)
    ///            (-1)^(j-(n-k+1)) C(j-1, n-k) C(n, j) / psi(j).
    /// ```
    pub fn mttf_exact(&self) -> Result<f64> {
        let n = self.n();
        if n > MAX_EXACT_COMPONENTS {
            return Err(Error::TooManyComponents {
                op: "exact mean lifetime",
                n,
                cap: MAX_EXACT_COMPONENTS,
            });
        }
        let psi = self.minima_rates()?;
        let binom = pascal_triangle(n);
        let mut acc = NeumaierSum::new();
        for (i, &s) in self.signature.weights().iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            let k = i + 1;
            let base = n - k + 1;
            for j in base..=n {
                let coeff = binom[n][j] * binom[j - 1][n - k];
                let sign = if (j - base).is_multiple_of(2) { 1.0 } else { -1.0 };
                acc.add(sign * s * coeff / psi[j - 1]);
            }
        }
        Ok(acc.total())
    }

    /// Monte Carlo mean time to failure with its standard error.
    pub fn mttf_mc<R: Rng + ?Sized>(
        &self,
        reps: usize,
        rng: &mut R,
    ) -> Result<crate::stats::MeanSe> {
        let times: Vec<f64> = (0..reps).map(|_| self.sample_failure_time(rng)).collect();
        crate::stats::mean_and_se(&times)
    }

    /// Rates `psi(1), ..., psi(n)` of the subset minima.
    fn minima_rates(&self) -> Result<Vec<f64>> {
        (1..=self.n())
            .map(|l| self.spec.laplace_exponent(l as f64))
            .collect()
    }
}

/// The large-system limit: component pool so large that the failed
/// fraction at time `t` is exactly `1 - exp(-L_t)`, with the structural
/// threshold drawn from the limiting failure-fraction law.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitModel {
    spec: SubordinatorSpec,
    law: FailureFractionLaw,
}

impl LimitModel {
    pub fn new(spec: SubordinatorSpec, law: FailureFractionLaw) -> Result<Self> {
        law.validate()?;
        Ok(Self { spec, law })
    }

    pub fn subordinator(&self) -> &SubordinatorSpec {
        &self.spec
    }

    pub fn law(&self) -> &FailureFractionLaw {
        &self.law
    }

    /// Draw one limit lifetime: threshold `q` from the fraction law, then
    /// the passage of the subordinator over `-ln(1 - q)`.
    pub fn sample_failure_time<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let q = self.law.sample(rng);
        let barrier = -(-q).ln_1p();
        PassageWalker::new(&self.spec, rng).passage_over(barrier)
    }

    /// Estimate the limit survival curve; one sample set serves the grid.
    pub fn reliability_mc<R: Rng + ?Sized>(
        &self,
        t_grid: &[f64],
        reps: usize,
        rng: &mut R,
    ) -> Result<Vec<ReliabilityPoint>> {
        check_time_grid(t_grid)?;
        check_reps(reps)?;
        let times: Vec<f64> = (0..reps).map(|_| self.sample_failure_time(rng)).collect();
        Ok(survival_points(times, t_grid))
    }

    /// Closed-form limit survival where the fraction law admits one:
    ///
    /// - beta(1, b): `exp(-t psi(b))`, an exponential lifetime;
    /// - beta(b, 1) with integer `b <= 30`: the alternating sum
    ///   `sum_(i=1..b) (-1)^(i-1) C(b, i) exp(-t psi(i))`;
    /// - a discrete signature law: the exact finite-system mixture.
    ///
    /// Returns `None` when no closed form is available (point masses,
    /// grid densities, non-integer reversed shapes).
    pub fn reliability_exact(&self, t: f64) -> Result<Option<f64>> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "time must be finite and nonnegative, got {t}"
            )));
        }
        match &self.law {
            FailureFractionLaw::Beta { b } => {
                let psi = self.spec.laplace_exponent(*b)?;
                Ok(Some((-t * psi).exp()))
            }
            FailureFractionLaw::ReversedBeta { b } => {
                if b.fract() != 0.0 || *b > MAX_EXACT_COMPONENTS as f64 {
                    return Ok(None);
                }
                let m = *b as usize;
                let binom = pascal_triangle(m);
                let mut acc = NeumaierSum::new();
                for (i, &coeff) in binom[m].iter().enumerate().skip(1) {
                    let psi = self.spec.laplace_exponent(i as f64)?;
                    let sign = if i.is_multiple_of(2) { -1.0 } else { 1.0 };
                    acc.add(sign * coeff * (-t * psi).exp());
                }
                Ok(Some(acc.total().clamp(0.0, 1.0)))
            }
            FailureFractionLaw::Discrete(sig) => {
                let finite = SystemModel::new(self.spec, sig.clone());
                finite.reliability_exact(t).map(Some)
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subordinator::JumpLaw;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    fn pure_drift(mu: f64) -> SubordinatorSpec {
        SubordinatorSpec::new(mu, 0.0, JumpLaw::Uniform01).unwrap()
    }

    fn drift_and_uniform() -> SubordinatorSpec {
        SubordinatorSpec::new(1.0, 1.0, JumpLaw::Uniform01).unwrap()
    }

    #[test]
    fn mttf_hand_values_for_pure_drift() {
        // Pure drift mu = 1: minima rates psi(j) = j, so the series of two
        // has mean 1/2 and the pair in parallel 2/1 - 1/2 = 3/2.
        let series = SystemModel::new(pure_drift(1.0), Signature::k_out_of_n(2, 1).unwrap());
        assert!((series.mttf_exact().unwrap() - 0.5).abs() < 1e-15);

        let parallel = SystemModel::new(pure_drift(1.0), Signature::k_out_of_n(2, 2).unwrap());
        assert!((parallel.mttf_exact().unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn mttf_single_component_is_the_marginal_mean() {
        // One component: mean 1/psi(1). With unit drift, unit rate and
        // uniform jumps, psi(1) = 2 - (1 - e^-1) = 1.3678794411714423.
        let model = SystemModel::new(drift_and_uniform(), Signature::k_out_of_n(1, 1).unwrap());
        let expect = 1.0 / 1.367_879_441_171_442_3;
        assert!((model.mttf_exact().unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn exact_formulas_reject_oversized_systems() {
        let sig = Signature::k_out_of_n(31, 1).unwrap();
        let model = SystemModel::new(pure_drift(1.0), sig);
        assert!(matches!(
            model.mttf_exact(),
            Err(Error::TooManyComponents { cap: 30, .. })
        ));
        assert!(matches!(
            model.reliability_exact(1.0),
            Err(Error::TooManyComponents { cap: 30, .. })
        ));
    }

    #[test]
    fn reliability_exact_matches_minima_and_maxima_forms() {
        let spec = drift_and_uniform();
        let psi1 = spec.laplace_exponent(1.0).unwrap();
        let psi2 = spec.laplace_exponent(2.0).unwrap();
        let psi3 = spec.laplace_exponent(3.0).unwrap();

        let series = SystemModel::new(spec, Signature::k_out_of_n(3, 1).unwrap());
        for &t in &[0.0, 0.3, 1.7] {
            let expect = (-t * psi3).exp();
            assert!((series.reliability_exact(t).unwrap() - expect).abs() < 1e-14);
        }

        let parallel = SystemModel::new(spec, Signature::k_out_of_n(2, 2).unwrap());
        for &t in &[0.0, 0.3, 1.7] {
            let expect = 2.0 * (-t * psi1).exp() - (-t * psi2).exp();
            assert!((parallel.reliability_exact(t).unwrap() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn reliability_exact_is_a_survival_function() {
        let sig = Signature::new(vec![0.1, 0.3, 0.4, 0.2]).unwrap();
        let model = SystemModel::new(drift_and_uniform(), sig);
        assert_eq!(model.reliability_exact(0.0).unwrap(), 1.0);
        let mut prev = 1.0;
        for i in 1..=40 {
            let t = i as f64 * 0.25;
            let r = model.reliability_exact(t).unwrap();
            assert!((0.0..=1.0).contains(&r));
            assert!(r <= prev + 1e-12, "not monotone at t = {t}");
            prev = r;
        }
        assert!(model.reliability_exact(-1.0).is_err());
        assert!(model.reliability_exact(f64::NAN).is_err());
    }

    #[test]
    fn mc_curve_is_monotone_and_validated() {
        let model = SystemModel::new(drift_and_uniform(), Signature::k_out_of_n(3, 2).unwrap());
        let mut r = rng(71);
        let grid = [0.0, 0.25, 0.5, 1.0, 2.0];
        let points = model.reliability_mc(&grid, 4000, &mut r).unwrap();
        assert_eq!(points[0].survival, 1.0, "failure times are positive");
        for w in points.windows(2) {
            assert!(w[1].survival <= w[0].survival);
        }
        for p in &points {
            assert!(p.se >= 0.0 && p.se <= 0.5 / (4000f64).sqrt() + 1e-12);
        }
        assert!(model.reliability_mc(&[], 10, &mut r).is_err());
        assert!(model.reliability_mc(&[-1.0], 10, &mut r).is_err());
        assert!(model.reliability_mc(&[1.0], 0, &mut r).is_err());
    }

    #[test]
    fn mc_mttf_agrees_with_exact_for_a_mixed_signature() {
        let sig = Signature::new(vec![0.2, 0.5, 0.3]).unwrap();
        let model = SystemModel::new(drift_and_uniform(), sig);
        let exact = model.mttf_exact().unwrap();
        let mut r = rng(72);
        let est = model.mttf_mc(20_000, &mut r).unwrap();
        assert!(
            (est.mean - exact).abs() < 4.0 * est.se,
            "exact {exact}, estimate {} +- {}",
            est.mean,
            est.se
        );
    }

    #[test]
    fn limit_beta_one_gives_a_unit_exponential_under_pure_drift() {
        // Q uniform on (0, 1) and L_t = t: the lifetime is -ln(1 - Q),
        // a unit exponential.
        let model =
            LimitModel::new(pure_drift(1.0), FailureFractionLaw::beta(1.0).unwrap()).unwrap();
        let mut r = rng(73);
        let times: Vec<f64> = (0..40_000).map(|_| model.sample_failure_time(&mut r)).collect();
        let m = crate::stats::mean_and_se(&times).unwrap();
        assert!((m.mean - 1.0).abs() < 4.0 * m.se);
        let exact = model.reliability_exact(0.5).unwrap().unwrap();
        assert!((exact - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn limit_reversed_beta_closed_form_under_pure_drift() {
        // Pure drift makes the path deterministic, so survival is
        // 1 - (1 - e^-t)^b exactly; at b = 2, t = 1 that is
        // 0.600423599106272.
        let model =
            LimitModel::new(pure_drift(1.0), FailureFractionLaw::reversed_beta(2.0).unwrap())
                .unwrap();
        let got = model.reliability_exact(1.0).unwrap().unwrap();
        let direct = 1.0 - (1.0 - (-1.0f64).exp()).powi(2);
        assert!((got - 0.600_423_599_106_272).abs() < 1e-15);
        assert!((got - direct).abs() < 1e-15);

        let fractional =
            LimitModel::new(pure_drift(1.0), FailureFractionLaw::reversed_beta(2.5).unwrap())
                .unwrap();
        assert_eq!(fractional.reliability_exact(1.0).unwrap(), None);
    }

    #[test]
    fn limit_reversed_beta_mc_matches_closed_form() {
        let spec = drift_and_uniform();
        let model =
            LimitModel::new(spec, FailureFractionLaw::reversed_beta(3.0).unwrap()).unwrap();
        let t = 0.8;
        let exact = model.reliability_exact(t).unwrap().unwrap();
        let mut r = rng(74);
        let points = model.reliability_mc(&[t], 40_000, &mut r).unwrap();
        let p = &points[0];
        assert!(
            (p.survival - exact).abs() < 4.0 * p.se,
            "exact {exact}, estimate {} +- {}",
            p.survival,
            p.se
        );
    }

    #[test]
    fn limit_discrete_law_reproduces_the_finite_system() {
        let sig = Signature::new(vec![0.25, 0.5, 0.25]).unwrap();
        let spec = drift_and_uniform();
        let finite = SystemModel::new(spec, sig.clone());
        let limit = LimitModel::new(spec, sig.failure_fraction_law()).unwrap();
        for &t in &[0.1, 0.9, 2.3] {
            let a = finite.reliability_exact(t).unwrap();
            let b = limit.reliability_exact(t).unwrap().unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn limit_point_mass_has_no_closed_form_but_samples() {
        let model =
            LimitModel::new(drift_and_uniform(), FailureFractionLaw::point_mass(0.4).unwrap())
                .unwrap();
        assert_eq!(model.reliability_exact(1.0).unwrap(), None);
        let mut r = rng(75);
        for _ in 0..50 {
            let t = model.sample_failure_time(&mut r);
            assert!(t.is_finite() && t > 0.0);
        }
        assert!(model.reliability_exact(-1.0).is_err());
    }
}
