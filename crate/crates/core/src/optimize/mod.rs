//! Derivative-free maximization of the success probability.
//!
//! [`powell_minimize`] is a box-constrained Powell direction-set minimizer;
//! [`multistart_minimize`] runs it from seeded random starts (in parallel,
//! merged in restart order) and [`optimize_success`] applies that to the
//! negated success probability.

mod line_search;
mod powell;

pub use powell::{powell_minimize, PowellOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrimination::{DiscriminationProblem, ParamVector, SuccessObjective};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_RESTARTS: usize = 40;
pub const DEFAULT_MAX_ITERATIONS: usize = 500;
pub const DEFAULT_X_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_F_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 0x5eed_d15c;

/// Per-coordinate closed intervals. Infinite ends are allowed for local
/// minimization but not for drawing random starts.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchBox<T: Real> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Real> SearchBox<T> {
    pub fn new(intervals: Vec<(T, T)>) -> Result<Self> {
        if intervals.iter().any(|&(l, u)| !(l < u)) {
            return Err(Error::InvalidOptions("box lower bound must be below upper bound".into()));
        }
        let (lower, upper) = intervals.into_iter().unzip();
        Ok(Self { lower, upper })
    }

    pub fn unbounded(dim: usize) -> Self {
        Self { lower: vec![T::neg_infinity(); dim], upper: vec![T::infinity(); dim] }
    }

    /// `phi in [0, phi_max]`, `theta, xi in [0, 2pi]` for each of `receivers`.
    pub fn receivers(receivers: usize, phi_max: T) -> Result<Self> {
        let tau = T::TAU();
        Self::new(
            (0..receivers)
                .flat_map(|_| [(T::zero(), phi_max), (T::zero(), tau), (T::zero(), tau)])
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn interval(&self, i: usize) -> (T, T) {
        (self.lower[i], self.upper[i])
    }

    pub fn is_finite(&self) -> bool {
        self.lower.iter().chain(&self.upper).all(|v| v.is_finite())
    }

    pub fn project(&self, x: &mut [T]) {
        for (i, v) in x.iter_mut().enumerate() {
            *v = v.max(self.lower[i]).min(self.upper[i]);
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Vec<T> {
        (0..self.dim())
            .map(|i| {
                let u = T::lit(rng.gen::<f64>());
                self.lower[i] + u * (self.upper[i] - self.lower[i])
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerOptions<T: Real> {
    pub restarts: usize,
    /// Powell iterations (direction-set sweeps) per start.
    pub max_iterations: usize,
    pub x_tolerance: T,
    pub f_tolerance: T,
    pub search_box: SearchBox<T>,
    pub rng_seed: u64,
}

impl<T: Real> OptimizerOptions<T> {
    pub fn new(search_box: SearchBox<T>) -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            x_tolerance: T::lit(DEFAULT_X_TOLERANCE),
            f_tolerance: T::lit(DEFAULT_F_TOLERANCE),
            search_box,
            rng_seed: DEFAULT_SEED,
        }
    }

    /// Defaults for a chain of `receivers` with `phi` bounded by `phi_max`.
    pub fn for_receivers(receivers: usize, phi_max: T) -> Result<Self> {
        Ok(Self::new(SearchBox::receivers(receivers, phi_max)?))
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_tolerances(mut self, x_tolerance: T, f_tolerance: T) -> Self {
        self.x_tolerance = x_tolerance;
        self.f_tolerance = f_tolerance;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub(crate) fn validate(&self, dim: usize) -> Result<()> {
        if !(self.x_tolerance > T::zero() && self.f_tolerance > T::zero()) {
            return Err(Error::InvalidOptions("tolerances must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOptions("max_iterations must be positive".into()));
        }
        if self.search_box.dim() != dim {
            return Err(Error::InvalidOptions(format!(
                "search box has {} coordinates, objective has {}",
                self.search_box.dim(),
                dim
            )));
        }
        Ok(())
    }

    /// Random starts, drawn sequentially from one seeded stream so that a
    /// run with more restarts sees the same leading starts.
    pub fn starts(&self) -> Result<Vec<Vec<T>>> {
        if !self.search_box.is_finite() {
            return Err(Error::InvalidOptions("random starts need a finite search box".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        Ok((0..self.restarts).map(|_| self.search_box.sample(&mut rng)).collect())
    }
}

/// Best of several Powell runs.
#[derive(Debug, Clone, PartialEq)]
pub struct MultistartOutcome<T: Real> {
    pub x: Vec<T>,
    pub f: T,
    pub best_restart: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Final objective value of each restart, in restart order.
    pub restart_values: Vec<T>,
}

/// Runs [`powell_minimize`] from `opts.restarts` random starts in the box and
/// keeps the lowest value; ties go to the lowest restart index. Restarts run
/// in parallel but the reduction is ordered, so the result does not depend
/// on scheduling.
pub fn multistart_minimize<T, F>(objective: F, opts: &OptimizerOptions<T>) -> Result<MultistartOutcome<T>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    if opts.restarts == 0 {
        return Err(Error::InvalidOptions("restarts must be positive".into()));
    }
    opts.validate(opts.search_box.dim())?;
    let starts = opts.starts()?;
    let runs: Vec<Result<PowellOutcome<T>>> =
        starts.par_iter().map(|x0| powell_minimize(&objective, x0, opts)).collect();
    let runs: Vec<PowellOutcome<T>> = runs.into_iter().collect::<Result<_>>()?;

    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.f < runs[best].f {
            best = i;
        }
    }
    Ok(MultistartOutcome {
        x: runs[best].x.clone(),
        f: runs[best].f,
        best_restart: best,
        evaluations: runs.iter().map(|r| r.evaluations).sum(),
        converged: runs[best].converged,
        restart_values: runs.iter().map(|r| r.f).collect(),
    })
}

/// Maximized success probability and where it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T: Real> {
    pub best_params: ParamVector<T>,
    /// Success probability re-evaluated at `best_params`.
    pub best_value: T,
    pub evaluations: usize,
    pub converged: bool,
    /// Success probability reached by each restart, in restart order.
    pub restart_values: Vec<T>,
}

/// Maximizes the chain success probability over all receiver parameters.
/// The number of receivers is taken from the search box (three coordinates
/// per receiver).
pub fn optimize_success<T: Real>(
    problem: &DiscriminationProblem<T>,
    opts: &OptimizerOptions<T>,
) -> Result<OptimizationResult<T>> {
    let dim = opts.search_box.dim();
    if dim == 0 || !dim.is_multiple_of(3) {
        return Err(Error::ParameterCount { expected: (dim / 3).max(1) * 3, got: dim });
    }
    let objective = SuccessObjective::new(*problem)?;
    let out = multistart_minimize(
        |x: &[T]| match objective.evaluate_slice(x) {
            Ok(v) => -v,
            Err(_) => T::nan(),
        },
        opts,
    )?;
    let best_params = ParamVector::from_slice(&out.x)?;
    let best_value = objective.evaluate(&best_params);
    Ok(OptimizationResult {
        best_params,
        best_value,
        evaluations: out.evaluations,
        converged: out.converged,
        restart_values: out.restart_values.into_iter().map(|v| -v).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, TAU};

    fn unbounded(dim: usize) -> OptimizerOptions<f64> {
        OptimizerOptions::new(SearchBox::unbounded(dim)).with_tolerances(1e-12, 1e-15)
    }

    #[test]
    fn shifted_quadratic_6d() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 1.0).powi(2)).sum::<f64>();
        let out = powell_minimize(f, &[0.0; 6], &unbounded(6)).unwrap();
        assert!(out.converged);
        for v in &out.x {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn rosenbrock_2d() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let out = powell_minimize(f, &[-1.2, 1.0], &unbounded(2).with_max_iterations(10_000)).unwrap();
        assert_abs_diff_eq!(out.x[0], 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(out.x[1], 1.0, epsilon = 1e-6);
        assert!(out.f < 1e-10, "f* = {}", out.f);
    }

    #[test]
    fn cosine_in_box() {
        let opts = OptimizerOptions::new(SearchBox::new(vec![(0.0, TAU)]).unwrap()).with_tolerances(1e-12, 1e-15);
        let out = powell_minimize(|x: &[f64]| x[0].cos(), &[1.0], &opts).unwrap();
        assert_abs_diff_eq!(out.x[0], PI, epsilon = 1e-8);
    }

    #[test]
    fn minimum_on_box_face() {
        let opts = OptimizerOptions::new(SearchBox::new(vec![(0.0, 2.0), (-1.0, 1.0)]).unwrap());
        let out = powell_minimize(|x: &[f64]| (x[0] - 5.0).powi(2) + x[1].powi(2), &[0.5, 0.5], &opts).unwrap();
        assert_abs_diff_eq!(out.x[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(out.x[1], 0.0, epsilon = 1e-6);
    }

    #[test]
    fn non_finite_objective_is_reported() {
        let f = |x: &[f64]| if x[0] > 0.5 { f64::NAN } else { -x[0] };
        let err = powell_minimize(f, &[0.0], &unbounded(1)).unwrap_err();
        match err {
            Error::NonFiniteObjective { evaluations, x } => {
                assert!(evaluations >= 1);
                assert!(x[0] > 0.5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn option_validation() {
        let f = |x: &[f64]| x[0];
        assert!(SearchBox::new(vec![(1.0, 0.0)]).is_err());
        let bad = OptimizerOptions::new(SearchBox::<f64>::unbounded(1)).with_tolerances(0.0, 1e-9);
        assert!(powell_minimize(f, &[0.0], &bad).is_err());
        let wrong_dim = OptimizerOptions::new(SearchBox::<f64>::unbounded(2));
        assert!(powell_minimize(f, &[0.0], &wrong_dim).is_err());
        assert!(multistart_minimize(f, &OptimizerOptions::new(SearchBox::unbounded(1))).is_err());
    }

    #[test]
    fn multistart_finds_global_minimum_deterministically() {
        // double well with the deeper minimum near x = -1
        let f = |x: &[f64]| (x[0] * x[0] - 1.0).powi(2) + 0.3 * x[0];
        let opts = OptimizerOptions::new(SearchBox::new(vec![(-2.0, 2.0)]).unwrap()).with_restarts(8).with_seed(3);
        let a = multistart_minimize(f, &opts).unwrap();
        let b = multistart_minimize(f, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.x[0] < 0.0);
        assert_eq!(a.restart_values.len(), 8);
    }

    #[test]
    fn starts_are_prefix_stable() {
        let opts = OptimizerOptions::for_receivers(2, TAU).unwrap().with_restarts(5);
        let more = opts.clone().with_restarts(9);
        let a = opts.starts().unwrap();
        let b = more.starts().unwrap();
        assert_eq!(a[..], b[..5]);
        for s in &b {
            assert!(s.iter().all(|v| (0.0..=TAU).contains(v)));
        }
    }

    #[test]
    fn single_precision_quadratic() {
        let f = |x: &[f32]| x.iter().map(|v| (v - 1.0).powi(2)).sum::<f32>();
        let opts = OptimizerOptions::new(SearchBox::<f32>::unbounded(3)).with_tolerances(1e-5, 1e-6);
        let out = powell_minimize(f, &[0.0f32; 3], &opts).unwrap();
        for v in &out.x {
            assert!((v - 1.0).abs() < 1e-3);
        }
    }
}
