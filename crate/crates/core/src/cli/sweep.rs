use rayon::prelude::*;

use crate::discrimination::{fields_baseline, helstrom_bound, DiscriminationProblem};
use crate::error::Result;
use crate::optimize::{optimize_success, OptimizerOptions, SearchBox};

use super::config::SweepConfig;

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mean_n: f64,
    pub alpha: f64,
    pub p_opt: f64,
    pub helstrom: f64,
    /// `None` when the baseline is switched off.
    pub fields_baseline: Option<f64>,
    /// Flattened `(phi, theta, xi)` per receiver.
    pub params: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
}

impl SweepRow {
    pub fn receivers(&self) -> usize {
        self.params.len() / 3
    }

    /// `p_opt - fields_baseline`.
    pub fn gap(&self) -> Option<f64> {
        self.fields_baseline.map(|b| self.p_opt - b)
    }
}

fn optimizer_options(config: &SweepConfig, search_box: SearchBox<f64>) -> OptimizerOptions<f64> {
    OptimizerOptions::new(search_box)
        .with_restarts(config.restarts)
        .with_seed(config.seed)
        .with_tolerances(config.x_tolerance, config.f_tolerance)
        .with_max_iterations(config.max_iterations)
}

/// Evaluates one grid point for `|+sqrt(n)>` vs `|-sqrt(n)>`.
pub fn evaluate_point(config: &SweepConfig, mean_n: f64) -> Result<SweepRow> {
    let problem = match config.dim {
        Some(dim) => DiscriminationProblem::antipodal_with_dim(mean_n, config.prior_q1, dim)?,
        None => DiscriminationProblem::antipodal(mean_n, config.prior_q1)?,
    };
    let opts = optimizer_options(config, SearchBox::receivers(config.receivers, config.phi_box_max)?);
    let best = optimize_success(&problem, &opts)?;
    let s = problem.overlap_modulus().min(1.0);
    let helstrom = helstrom_bound(problem.q1, problem.q2, s)?;
    let fields = if config.baseline {
        let base_opts = optimizer_options(config, OptimizerOptions::<f64>::for_baseline().search_box);
        Some(fields_baseline(s, problem.q1, problem.q2, &base_opts)?.value)
    } else {
        None
    };
    Ok(SweepRow {
        mean_n,
        alpha: mean_n.sqrt(),
        p_opt: best.best_value,
        helstrom,
        fields_baseline: fields,
        params: best.best_params.to_vec(),
        evaluations: best.evaluations,
        converged: best.converged,
    })
}

/// Evaluates every grid point. Points run in parallel; rows come back in
/// grid order and are identical for identical configurations.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    config.grid().into_par_iter().map(|n| evaluate_point(config, n)).collect()
}

/// Location where `p_opt - fields_baseline` first changes sign, linearly
/// interpolated between the bracketing grid points. `None` when the gap
/// keeps one sign or no baseline is available.
pub fn report_crossover(rows: &[SweepRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.gap().map(|g| (r.mean_n, g))).collect();
    pts.windows(2).find_map(|w| {
        let ((n0, g0), (n1, g1)) = (w[0], w[1]);
        if g0 == 0.0 {
            Some(n0)
        } else if g1 == 0.0 {
            Some(n1)
        } else if g0.signum() != g1.signum() {
            Some(n0 + (n1 - n0) * g0 / (g0 - g1))
        } else {
            None
        }
    })
}

/// Number of strict sign changes of `p_opt - fields_baseline` along the grid.
pub fn gap_sign_changes(rows: &[SweepRow]) -> usize {
    let signs: Vec<f64> = rows.iter().filter_map(SweepRow::gap).filter(|g| *g != 0.0).map(f64::signum).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
