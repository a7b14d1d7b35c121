//! Joint lifetime sampler checks: marginals, order statistics, and the
//! simultaneous-failure mass, each against a hand value or an oracle coded
//! independently inside the test.

use lfmo::lifetimes::{sample_failure_times, sample_kth_failure};
use lfmo::stats::{ks_two_sample, mean_and_se};
use lfmo::subordinator::{JumpLaw, SubordinatorSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn harmonic(from: usize, to: usize) -> f64 {
    (from..=to).map(|j| 1.0 / j as f64).sum()
}

#[test]
fn pure_drift_marginal_is_a_scaled_trigger() {
    // With drift 2 and no jumps, T_i = trigger / 2 ~ Exp(2).
    let spec = SubordinatorSpec::new(2.0, 0.0, JumpLaw::Uniform01).unwrap();
    let mut r = rng(2001);
    let reps = 3000;
    let first: Vec<f64> = (0..reps)
        .map(|_| sample_failure_times(&spec, 5, &mut r).unwrap()[0])
        .collect();
    let mut reference_rng = rng(9201);
    let reference: Vec<f64> = (0..reps)
        .map(|_| -(1.0 - reference_rng.random::<f64>()).ln() / 2.0)
        .collect();
    let ks = ks_two_sample(&first, &reference).unwrap();
    assert!(ks.p_value > 0.001, "p = {}", ks.p_value);
}

#[test]
fn compound_marginal_mean_is_reciprocal_psi_one() {
    // mu = 0, lambda = 1, unit exponential jumps: psi(1) = 1/2, so a single
    // component lives 2 on average.
    let spec = SubordinatorSpec::new(0.0, 1.0, JumpLaw::Exponential { rate: 1.0 }).unwrap();
    assert!((spec.laplace_exponent(1.0).unwrap() - 0.5).abs() < 1e-15);
    let mut r = rng(2002);
    let values: Vec<f64> = (0..20_000)
        .map(|_| sample_failure_times(&spec, 1, &mut r).unwrap()[0])
        .collect();
    let m = mean_and_se(&values).unwrap();
    assert!((m.mean - 2.0).abs() < 4.0 * m.se, "mean {} +- {}", m.mean, m.se);
}

#[test]
fn minimum_of_ten_under_pure_drift() {
    // The minimum of 10 unit-exponential triggers is Exp(10); unit drift
    // maps it straight through, so the mean is 0.1.
    let spec = SubordinatorSpec::new(1.0, 0.0, JumpLaw::Uniform01).unwrap();
    let mut r = rng(2003);
    let values: Vec<f64> = (0..20_000)
        .map(|_| sample_kth_failure(&spec, 10, 1, &mut r).unwrap())
        .collect();
    let m = mean_and_se(&values).unwrap();
    assert!((m.mean - 0.1).abs() < 4.0 * m.se);
}

#[test]
fn order_statistic_mean_matches_the_harmonic_oracle() {
    // Under unit drift the k-th failure equals the k-th trigger order
    // statistic, whose mean is H_n - H_{n-k}.
    let spec = SubordinatorSpec::new(1.0, 0.0, JumpLaw::Uniform01).unwrap();
    let (n, k) = (9, 5);
    let expect = harmonic(n - k + 1, n);
    let mut r = rng(2004);
    let values: Vec<f64> = (0..20_000)
        .map(|_| sample_kth_failure(&spec, n, k, &mut r).unwrap())
        .collect();
    let m = mean_and_se(&values).unwrap();
    assert!(
        (m.mean - expect).abs() < 4.0 * m.se,
        "mean {} vs {}",
        m.mean,
        expect
    );
}

#[test]
fn simultaneous_failures_match_a_hand_rolled_walker() {
    // Pure-jump process, two components: both die on the same jump exactly
    // when the first jump crossing one barrier also crosses the other. The
    // oracle replays the construction from scratch with its own jump walk.
    let lambda = 1.0;
    let reps = 20_000;

    let mut oracle_rng = rng(9205);
    let mut oracle_ties = 0usize;
    for _ in 0..reps {
        let a = -(1.0 - oracle_rng.random::<f64>()).ln();
        let b = -(1.0 - oracle_rng.random::<f64>()).ln();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let mut level = 0.0;
        let mut lo_index = None;
        let mut index = 0u64;
        loop {
            index += 1;
            let _gap: f64 = -(1.0 - oracle_rng.random::<f64>()).ln() / lambda;
            level += oracle_rng.random::<f64>();
            if lo_index.is_none() && level > lo {
                lo_index = Some(index);
            }
            if level > hi {
                if lo_index == Some(index) {
                    oracle_ties += 1;
                }
                break;
            }
        }
    }

    let spec = SubordinatorSpec::new(0.0, lambda, JumpLaw::Uniform01).unwrap();
    let mut r = rng(2005);
    let mut ties = 0usize;
    for _ in 0..reps {
        let times = sample_failure_times(&spec, 2, &mut r).unwrap();
        if times[0] == times[1] {
            ties += 1;
        }
    }

    let p1 = oracle_ties as f64 / reps as f64;
    let p2 = ties as f64 / reps as f64;
    let se = ((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / reps as f64).sqrt();
    assert!(p2 > 0.05, "simultaneous mass should be clearly positive");
    assert!((p1 - p2).abs() < 4.0 * se, "oracle {p1} vs sampler {p2}");
}

#[test]
fn components_are_exchangeable_and_positively_dependent() {
    let spec = SubordinatorSpec::new(0.5, 1.0, JumpLaw::Exponential { rate: 1.0 }).unwrap();
    let reps = 20_000;
    let mut r = rng(2006);
    let mut columns: Vec<Vec<f64>> = (0..3).map(|_| Vec::with_capacity(reps)).collect();
    let mut minima = Vec::with_capacity(reps);
    for _ in 0..reps {
        let times = sample_failure_times(&spec, 3, &mut r).unwrap();
        for (column, &t) in columns.iter_mut().zip(&times) {
            column.push(t);
        }
        minima.push(times.iter().cloned().fold(f64::INFINITY, f64::min));
    }
    let means: Vec<_> = columns.iter().map(|c| mean_and_se(c).unwrap()).collect();
    for pair in means.windows(2) {
        let combined = (pair[0].se.powi(2) + pair[1].se.powi(2)).sqrt();
        assert!((pair[0].mean - pair[1].mean).abs() < 4.0 * combined);
    }

    // E[min of 3] = 1 / psi(3); under independence with the same marginals
    // it would be 1 / (3 psi(1)), which is strictly smaller here.
    let psi3 = spec.laplace_exponent(3.0).unwrap();
    let psi1 = spec.laplace_exponent(1.0).unwrap();
    let m = mean_and_se(&minima).unwrap();
    assert!((m.mean - 1.0 / psi3).abs() < 4.0 * m.se);
    assert!(1.0 / psi3 > 1.0 / (3.0 * psi1) + 8.0 * m.se);
    assert!(m.mean > 1.0 / (3.0 * psi1) + 4.0 * m.se);
}

#[test]
fn direct_order_statistic_matches_the_sorted_vector() {
    let spec = SubordinatorSpec::new(1.0, 1.0, JumpLaw::Uniform01).unwrap();
    let (n, k) = (6, 4);
    let reps = 4000;
    let mut r = rng(2007);
    let direct: Vec<f64> = (0..reps)
        .map(|_| sample_kth_failure(&spec, n, k, &mut r).unwrap())
        .collect();
    let mut other = rng(9207);
    let via_sort: Vec<f64> = (0..reps)
        .map(|_| {
            let mut times = sample_failure_times(&spec, n, &mut other).unwrap();
            times.sort_unstable_by(f64::total_cmp);
            times[k - 1]
        })
        .collect();
    let ks = ks_two_sample(&direct, &via_sort).unwrap();
    assert!(ks.p_value > 0.001, "p = {}", ks.p_value);
}
