//! Two-sample distribution tests and summary statistics.
//!
//! The workhorse is the two-sample Kolmogorov-Smirnov test. For samples of
//! sizes `n1` and `n2` with empirical CDFs `F1` and `F2`, the statistic is
//! `D = sup_t |F1(t) - F2(t)|`, and under the null of a common continuous
//! law the scaled statistic `lambda = D * sqrt(n1 n2 / (n1 + n2))` has the
//! asymptotic tail
//!
//! ```text
//! Q(lambda) = 2 * sum_(j>=1) (-1)^(j-1) exp(-2 j^2 lambda^2).
//! ```
//!
//! The approximation is good once both samples have at least a few dozen
//! points; callers decide their own size floor.

use crate::error::Error;
use crate::numeric::NeumaierSum;
use crate::Result;

/// Terms of the Kolmogorov series below this size are dropped.
const KOLMOGOROV_TERM_FLOOR: f64 = 1e-12;

/// Outcome of a two-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    /// `sup_t |F1(t) - F2(t)|`.
    pub statistic: f64,
    /// `statistic * sqrt(n1 n2 / (n1 + n2))`.
    pub lambda: f64,
    /// Asymptotic p-value `Q(lambda)`, clamped to [0, 1].
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

fn checked_sorted(sample: &[f64]) -> Result<Vec<f64>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(sorted)
}

/// Two-sample Kolmogorov-Smirnov test.
///
/// Ties, within or across samples, are handled by advancing both empirical
/// CDFs past each distinct value before the gap is measured, which is the
/// correct supremum for step functions.
pub fn ks_two_sample(first: &[f64], second: &[f64]) -> Result<KsResult> {
    let x = checked_sorted(first)?;
    let y = checked_sorted(second)?;
    let n1 = x.len() as f64;
    let n2 = y.len() as f64;
    let mut i = 0;
    let mut j = 0;
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] == v {
            i += 1;
        }
        while j < y.len() && y[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    // Once one sample is exhausted its CDF sits at one and the gap only
    // shrinks, so the loop has already seen the supremum.
    let lambda = d * (n1 * n2 / (n1 + n2)).sqrt();
    Ok(KsResult {
        statistic: d,
        lambda,
        p_value: kolmogorov_tail(lambda),
        n1: x.len(),
        n2: y.len(),
    })
}

/// Asymptotic Kolmogorov tail `Q(lambda)`, clamped to [0, 1]. Tiny
/// arguments short-circuit to one: the series converges too slowly there
/// and the answer is one for any practical purpose.
pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda <= 0.05 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=1000u32 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += sign * term;
        if term < KOLMOGOROV_TERM_FLOOR {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    /// `sqrt(sample variance / n)`.
    pub se: f64,
    pub n: usize,
}

/// Mean and standard error of the mean, two-pass with compensated sums.
pub fn mean_and_se(sample: &[f64]) -> Result<MeanSe> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample);
    }
    let n = sample.len();
    if n < 2 {
        return Err(Error::TooFewObservations { need: 2, got: n });
    }
    let mut total = NeumaierSum::new();
    for &v in sample {
        total.add(v);
    }
    let mean = total.total() / n as f64;
    let mut squares = NeumaierSum::new();
    for &v in sample {
        let d = v - mean;
        squares.add(d * d);
    }
    let variance = (squares.total() / (n - 1) as f64).max(0.0);
    Ok(MeanSe {
        mean,
        se: (variance / n as f64).sqrt(),
        n,
    })
}

/// Signed relative error `(estimate - reference) / reference`; the sign
/// carries the direction of the bias.
pub fn relative_error(estimate: f64, reference: f64) -> Result<f64> {
    if !estimate.is_finite() || !reference.is_finite() {
        return Err(Error::NonFiniteSample);
    }
    if reference == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok((estimate - reference) / reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use rand_distr::{Distribution, Exp1};

    #[test]
    fn ks_hand_computed_statistic() {
        let a = [1.0, 2.0, 3.0];
        let b = [1.5, 2.5];
        let r = ks_two_sample(&a, &b).unwrap();
        assert!((r.statistic - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!((r.n1, r.n2), (3, 2));
    }

    #[test]
    fn ks_ties_are_resolved_jointly() {
        // Advancing one sample at a time through the tied zeros would
        // report 2/3; the joint supremum is 1/3.
        let a = [0.0, 0.0, 1.0];
        let b = [0.0, 1.0, 1.0];
        let r = ks_two_sample(&a, &b).unwrap();
        assert!((r.statistic - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ks_extremes() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let same = ks_two_sample(&a, &a).unwrap();
        assert_eq!(same.statistic, 0.0);
        assert_eq!(same.p_value, 1.0);

        let b: Vec<f64> = (0..30).map(|i| 100.0 + i as f64).collect();
        let c: Vec<f64> = (0..30).map(|i| 200.0 + i as f64).collect();
        let disjoint = ks_two_sample(&b, &c).unwrap();
        assert_eq!(disjoint.statistic, 1.0);
        assert!(disjoint.p_value < 1e-9);
    }

    #[test]
    fn ks_rejects_degenerate_input() {
        assert!(matches!(ks_two_sample(&[], &[1.0]), Err(Error::EmptySample)));
        assert!(matches!(
            ks_two_sample(&[1.0], &[f64::NAN]),
            Err(Error::NonFiniteSample)
        ));
        assert!(matches!(
            ks_two_sample(&[f64::INFINITY], &[1.0]),
            Err(Error::NonFiniteSample)
        ));
    }

    #[test]
    fn kolmogorov_tail_reference_values() {
        // Q(1.36) is the classical 5% critical point.
        let q = kolmogorov_tail(1.36);
        assert!((q - 0.05).abs() < 0.005, "got {q}");
        assert!(q < 0.05);
        assert_eq!(kolmogorov_tail(0.0), 1.0);
        assert_eq!(kolmogorov_tail(0.05), 1.0);
        assert!(kolmogorov_tail(3.0) < 1e-7);
        // Monotone decreasing on a grid, up to the series truncation.
        let mut prev = 1.0;
        for i in 1..=60 {
            let q = kolmogorov_tail(i as f64 * 0.05);
            assert!(q <= prev + 1e-9);
            prev = q;
        }
    }

    #[test]
    fn ks_null_is_calibrated_and_shift_is_detected() {
        let mut rng = ChaCha12Rng::seed_from_u64(208);
        let draw = |rng: &mut ChaCha12Rng, shift: f64| -> Vec<f64> {
            (0..400)
                .map(|_| {
                    let v: f64 = Exp1.sample(rng);
                    v + shift
                })
                .collect()
        };
        let a = draw(&mut rng, 0.0);
        let b = draw(&mut rng, 0.0);
        let null = ks_two_sample(&a, &b).unwrap();
        assert!(null.p_value > 0.001, "null p = {}", null.p_value);

        let c = draw(&mut rng, 0.75);
        let shifted = ks_two_sample(&a, &c).unwrap();
        assert!(shifted.p_value < 1e-6, "shifted p = {}", shifted.p_value);
    }

    #[test]
    fn mean_and_se_hand_values() {
        let m = mean_and_se(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((m.mean - 2.5).abs() < 1e-15);
        assert!((m.se - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(m.n, 4);

        assert!(matches!(mean_and_se(&[]), Err(Error::EmptySample)));
        assert!(matches!(
            mean_and_se(&[1.0]),
            Err(Error::TooFewObservations { need: 2, got: 1 })
        ));
        assert!(matches!(
            mean_and_se(&[1.0, f64::NAN]),
            Err(Error::NonFiniteSample)
        ));
    }

    #[test]
    fn relative_error_basics() {
        assert!((relative_error(1.1, 1.0).unwrap() - 0.1).abs() < 1e-15);
        assert!((relative_error(0.9, 1.0).unwrap() + 0.1).abs() < 1e-15);
        assert!(relative_error(1.0, 1.0).unwrap() == 0.0);
        assert!((relative_error(0.9, -1.0).unwrap() + 1.9).abs() < 1e-15);
        assert!(matches!(relative_error(1.0, 0.0), Err(Error::ZeroReference)));
        assert!(matches!(
            relative_error(f64::NAN, 1.0),
            Err(Error::NonFiniteSample)
        ));
    }

    proptest! {
        #[test]
        fn ks_statistic_and_p_are_probabilities(
            a in proptest::collection::vec(-1e6f64..1e6, 1..40),
            b in proptest::collection::vec(-1e6f64..1e6, 1..40),
        ) {
            let r = ks_two_sample(&a, &b).unwrap();
            prop_assert!(r.statistic >= 0.0 && r.statistic <= 1.0);
            prop_assert!(r.p_value >= 0.0 && r.p_value <= 1.0);
            let swapped = ks_two_sample(&b, &a).unwrap();
            prop_assert_eq!(r.statistic, swapped.statistic);
            prop_assert_eq!(r.p_value, swapped.p_value);
        }
    }
}
