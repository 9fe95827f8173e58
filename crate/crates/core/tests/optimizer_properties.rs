use approx::assert_abs_diff_eq;
use seqdisc::{
    fields_baseline, helstrom_bound, optimize_success, success_probability, success_probability_series, DiscriminationProblem64,
    OptimizerOptions64, ParamVector64,
};
use std::f64::consts::TAU;

fn opts(receivers: usize, restarts: usize) -> OptimizerOptions64 {
    OptimizerOptions64::for_receivers(receivers, TAU).unwrap().with_restarts(restarts)
}

fn helstrom(p: &DiscriminationProblem64) -> f64 {
    helstrom_bound(p.q1, p.q2, p.overlap_modulus().min(1.0)).unwrap()
}

#[test]
fn vacuum_inputs_give_one_half() {
    let p = DiscriminationProblem64::antipodal(0.0, 0.5).unwrap();
    let r = optimize_success(&p, &opts(2, 8)).unwrap();
    assert_abs_diff_eq!(r.best_value, 0.5, epsilon = 1e-12);
}

#[test]
fn optimum_lies_between_guessing_and_helstrom() {
    for &(n, q1) in &[(0.3, 0.5), (1.2, 0.5), (2.5, 0.5), (1.0, 0.7), (0.8, 0.2)] {
        let p = DiscriminationProblem64::antipodal(n, q1).unwrap();
        let r = optimize_success(&p, &opts(2, 20)).unwrap();
        assert!(r.best_value >= q1.max(1.0 - q1) - 1e-9, "n={n} q1={q1}: {}", r.best_value);
        assert!(r.best_value <= helstrom(&p) + 1e-9, "n={n} q1={q1}: {}", r.best_value);
        let audit = success_probability_series(&r.best_params, &p).unwrap();
        assert_abs_diff_eq!(audit, r.best_value, epsilon = 1e-10);
        assert!(r.restart_values.iter().all(|&v| v <= r.best_value));
    }
}

#[test]
fn known_operating_points() {
    let p = DiscriminationProblem64::antipodal(1.2, 0.5).unwrap();
    let r = optimize_success(&p, &opts(2, 200)).unwrap();
    assert!(r.best_value > 0.95 && r.best_value < 0.99794, "{}", r.best_value);

    let p = DiscriminationProblem64::antipodal(2.5, 0.5).unwrap();
    let r = optimize_success(&p, &opts(2, 200)).unwrap();
    assert!(r.best_value > 0.9 && r.best_value <= helstrom(&p), "{}", r.best_value);
    let baseline = fields_baseline(p.overlap_modulus(), 0.5, 0.5, &OptimizerOptions64::for_baseline()).unwrap();
    assert!(r.best_value < baseline.value, "{} vs {}", r.best_value, baseline.value);
}

#[test]
fn more_restarts_never_lose() {
    let p = DiscriminationProblem64::antipodal(1.6, 0.5).unwrap();
    let mut last = 0.0;
    for restarts in [1, 5, 20, 60] {
        let v = optimize_success(&p, &opts(2, restarts)).unwrap().best_value;
        assert!(v >= last, "restarts={restarts}: {v} < {last}");
        last = v;
    }
}

#[test]
fn identical_settings_are_reproducible() {
    let p = DiscriminationProblem64::antipodal(0.9, 0.5).unwrap();
    let a = optimize_success(&p, &opts(2, 16)).unwrap();
    let b = optimize_success(&p, &opts(2, 16)).unwrap();
    assert_eq!(a, b);
}

/// Every receiver must report the same outcome and each Kraus operator is a
/// contraction, so a second receiver can only lower the success probability.
#[test]
fn two_receivers_never_beat_one() {
    for n in [0.4, 1.0, 2.0] {
        let p = DiscriminationProblem64::antipodal(n, 0.5).unwrap();
        let one = optimize_success(&p, &opts(1, 40)).unwrap();
        let two = optimize_success(&p, &opts(2, 40)).unwrap();
        assert!(two.best_value <= one.best_value + 1e-9, "n={n}: {} vs {}", two.best_value, one.best_value);
        let first_only = ParamVector64::from_slice(&two.best_params.to_vec()[..3]).unwrap();
        assert!(two.best_value <= success_probability(&first_only, &p).unwrap() + 1e-12);
    }
}

#[test]
fn prior_swap_is_symmetric() {
    for &(n, q1) in &[(0.7, 0.3), (1.5, 0.8)] {
        let p = DiscriminationProblem64::antipodal(n, q1).unwrap();
        let a = optimize_success(&p, &opts(2, 60)).unwrap().best_value;
        let b = optimize_success(&p.swapped(), &opts(2, 60)).unwrap().best_value;
        assert_abs_diff_eq!(a, b, epsilon = 2e-6);
    }
}
