//! Distributional checks for the subordinator sampler against hand
//! values and independently coded oracles.

use lfmo::stats::ks_two_sample;
use lfmo::subordinator::{JumpLaw, SubordinatorSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn sample_value_at_one(spec: &SubordinatorSpec, reps: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
    (0..reps)
        .map(|_| {
            spec.sample_path(1.0, rng)
                .unwrap()
                .value_at(1.0)
                .unwrap()
        })
        .collect()
}

#[test]
fn mean_growth_matches_the_rate() {
    // E[L_1] = mu + lambda E[J]; with rate-0.5 exponential jumps at
    // lambda = 2 that is 0 + 2 * 2 = 4.
    let spec = SubordinatorSpec::new(0.0, 2.0, JumpLaw::Exponential { rate: 0.5 }).unwrap();
    assert_eq!(spec.mean_rate(), Some(4.0));
    let mut r = rng(1001);
    let values = sample_value_at_one(&spec, 20_000, &mut r);
    let m = lfmo::stats::mean_and_se(&values).unwrap();
    assert!(
        (m.mean - 4.0).abs() < 4.0 * m.se,
        "mean {} +- {}",
        m.mean,
        m.se
    );

    let mixed = SubordinatorSpec::new(1.0, 1.0, JumpLaw::Uniform01).unwrap();
    assert_eq!(mixed.mean_rate(), Some(1.5));
    let values = sample_value_at_one(&mixed, 20_000, &mut r);
    let m = lfmo::stats::mean_and_se(&values).unwrap();
    assert!((m.mean - 1.5).abs() < 4.0 * m.se);
}

#[test]
fn renewal_oracle_agrees_with_sample_path() {
    // Independent oracle: accumulate drift plus Poisson jumps by hand,
    // without SubordinatorPath, and compare the two estimates of E[L_1].
    let mu = 0.5;
    let lambda = 1.5;
    let mut r = rng(1002);
    let reps = 20_000;
    let mut oracle_values = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut t = 0.0;
        let mut total = mu;
        loop {
            let gap: f64 = -(1.0 - r.random::<f64>()).ln() / lambda;
            t += gap;
            if t > 1.0 {
                break;
            }
            total += r.random::<f64>();
        }
        oracle_values.push(total);
    }
    let oracle = lfmo::stats::mean_and_se(&oracle_values).unwrap();

    let spec = SubordinatorSpec::new(mu, lambda, JumpLaw::Uniform01).unwrap();
    let values = sample_value_at_one(&spec, reps, &mut r);
    let ours = lfmo::stats::mean_and_se(&values).unwrap();

    let expect = mu + lambda * 0.5;
    let combined = (oracle.se.powi(2) + ours.se.powi(2)).sqrt();
    assert!((oracle.mean - expect).abs() < 4.0 * oracle.se);
    assert!((ours.mean - expect).abs() < 4.0 * ours.se);
    assert!((ours.mean - oracle.mean).abs() < 4.0 * combined);
}

#[test]
fn passage_tail_matches_the_path_law() {
    // P(tau_b > t) = P(L_t <= b): both sides estimated independently.
    let spec = SubordinatorSpec::new(0.5, 1.0, JumpLaw::Uniform01).unwrap();
    let reps = 20_000;
    let mut r = rng(1003);
    for &(barrier, t) in &[(0.5, 0.3), (1.0, 0.5), (2.0, 1.0)] {
        let mut passage_later = 0usize;
        for _ in 0..reps {
            if spec.first_passage(barrier, &mut r).unwrap() > t {
                passage_later += 1;
            }
        }
        let mut path_below = 0usize;
        for _ in 0..reps {
            let path = spec.sample_path(t, &mut r).unwrap();
            if path.value_at(t).unwrap() <= barrier {
                path_below += 1;
            }
        }
        let p1 = passage_later as f64 / reps as f64;
        let p2 = path_below as f64 / reps as f64;
        let se = ((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / reps as f64).sqrt();
        assert!(
            (p1 - p2).abs() < 4.0 * se.max(1e-4),
            "barrier {barrier}, t {t}: {p1} vs {p2}"
        );
    }
}

#[test]
fn unit_barrier_passage_is_exponential_with_rate_psi_one() {
    // A unit-exponential barrier turns the passage time into the
    // component lifetime, Exp(psi(1)).
    let spec = SubordinatorSpec::new(1.0, 1.0, JumpLaw::Uniform01).unwrap();
    let psi1 = spec.laplace_exponent(1.0).unwrap();
    assert!((psi1 - 1.367_879_441_171_442_3).abs() < 1e-15);

    let reps = 3000;
    let mut r = rng(1004);
    let lifetimes: Vec<f64> = (0..reps)
        .map(|_| {
            let trigger = -(1.0 - r.random::<f64>()).ln();
            spec.first_passage(trigger.max(1e-300), &mut r).unwrap()
        })
        .collect();
    let mut reference_rng = rng(9104);
    let reference: Vec<f64> = (0..reps)
        .map(|_| -(1.0 - reference_rng.random::<f64>()).ln() / psi1)
        .collect();
    let ks = ks_two_sample(&lifetimes, &reference).unwrap();
    assert!(ks.p_value > 0.001, "p = {}", ks.p_value);
}
