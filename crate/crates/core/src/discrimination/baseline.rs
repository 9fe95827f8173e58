//! Reference two-receiver strategy on the qubit spanned by two pure states.
//!
//! The states are embedded as `cos(eps)|0> +- sin(eps)|1>` with
//! `cos(2 eps) = s`. The first receiver is a pure two-outcome instrument:
//! the qubit is coupled to a probe qubit prepared in `|0>` by a real rotation
//! of the four-dimensional joint space (six Givens angles) and the probe is
//! read out in its computational basis, giving `K(p)_{ab} = R[2a + p][2b]`.
//! The second receiver measures the qubit projectively in a real basis at
//! angle `beta`. All seven angles are maximized with multi-start Powell.

use crate::error::{Error, Result};
use crate::optimize::{multistart_minimize, OptimizerOptions, SearchBox};
use crate::scalar::Real;

/// Givens angles of the first receiver plus the second receiver's basis angle.
pub const BASELINE_PARAMETERS: usize = 7;

const GIVENS_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult<T: Real> {
    pub value: T,
    pub params: Vec<T>,
    pub evaluations: usize,
    pub converged: bool,
}

fn rotation<T: Real>(angles: &[T]) -> [[T; 4]; 4] {
    let mut r = [[T::zero(); 4]; 4];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for (&(p, q), &a) in GIVENS_PAIRS.iter().zip(angles) {
        let (s, c) = a.sin_cos();
        // r <- r * G(p, q, a)
        for row in r.iter_mut() {
            let (rp, rq) = (row[p], row[q]);
            row[p] = c * rp + s * rq;
            row[q] = c * rq - s * rp;
        }
    }
    r
}

/// Joint success probability of the seven-angle strategy.
pub(crate) fn baseline_success<T: Real>(angles: &[T], eps: T, q1: T, q2: T) -> T {
    let r = rotation(&angles[..6]);
    let beta = angles[6];
    let (se, ce) = eps.sin_cos();
    let psi = [[ce, se], [ce, -se]];
    let (sb, cb) = beta.sin_cos();
    let meas = [[cb, sb], [-sb, cb]];
    let mut total = T::zero();
    for (j, (prior, m)) in [(q1, meas[0]), (q2, meas[1])].into_iter().enumerate() {
        // K(j) psi_j, where the probe outcome label is j
        let out: [T; 2] = std::array::from_fn(|a| {
            (0..2).map(|b| r[2 * a + j][2 * b] * psi[j][b]).sum::<T>()
        });
        let amp = m[0] * out[0] + m[1] * out[1];
        total += prior * amp * amp;
    }
    total
}

/// Best two-receiver success probability for two pure states with overlap
/// modulus `s < 1`.
pub fn fields_baseline<T: Real>(
    overlap_mod: T,
    q1: T,
    q2: T,
    opts: &OptimizerOptions<T>,
) -> Result<BaselineResult<T>> {
    if !(overlap_mod >= T::zero() && overlap_mod <= T::one()) {
        return Err(Error::InvalidOverlap(overlap_mod.to_f64_lossy()));
    }
    if !(q1 >= T::zero() && q2 >= T::zero()) || ((q1 + q2) - T::one()).abs() > T::lit(1e-12) {
        return Err(Error::InvalidPriors { q1: q1.to_f64_lossy(), q2: q2.to_f64_lossy() });
    }
    if opts.search_box.dim() != BASELINE_PARAMETERS {
        return Err(Error::InvalidOptions(format!(
            "baseline search box needs {BASELINE_PARAMETERS} coordinates"
        )));
    }
    let eps = overlap_mod.acos() / T::lit(2.0);
    let out = multistart_minimize(|x: &[T]| -baseline_success(x, eps, q1, q2), opts)?;
    Ok(BaselineResult {
        value: baseline_success(&out.x, eps, q1, q2),
        params: out.x,
        evaluations: out.evaluations,
        converged: out.converged,
    })
}

impl<T: Real> OptimizerOptions<T> {
    /// Defaults over `[0, 2pi]` for every baseline angle.
    pub fn for_baseline() -> Self {
        let tau = T::TAU();
        Self::new(SearchBox::new(vec![(T::zero(), tau); BASELINE_PARAMETERS]).expect("valid box"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrimination::helstrom_bound;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rotation_is_orthogonal() {
        let r = rotation(&[0.3, -1.2, 2.0, 0.7, 4.1, -0.2]);
        for i in 0..4 {
            for j in 0..4 {
                let dot: f64 = (0..4).map(|k| r[k][i] * r[k][j]).sum();
                assert_abs_diff_eq!(dot, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn instrument_is_complete() {
        // sum_p K(p)^T K(p) = I on the qubit
        let r = rotation(&[1.1, 0.4, -0.9, 2.2, 0.1, 3.0]);
        for b in 0..2 {
            for c in 0..2 {
                let s: f64 = (0..2).flat_map(|p| (0..2).map(move |a| (a, p))).map(|(a, p)| r[2 * a + p][2 * b] * r[2 * a + p][2 * c]).sum();
                assert_abs_diff_eq!(s, if b == c { 1.0 } else { 0.0 }, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn orthogonal_states_are_perfectly_discriminated() {
        let out = fields_baseline(0.0, 0.5, 0.5, &OptimizerOptions::for_baseline().with_restarts(16)).unwrap();
        assert_abs_diff_eq!(out.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn identical_states_give_one_half() {
        let out = fields_baseline(1.0, 0.5, 0.5, &OptimizerOptions::for_baseline().with_restarts(8)).unwrap();
        assert_abs_diff_eq!(out.value, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn never_exceeds_helstrom() {
        let opts = OptimizerOptions::for_baseline().with_restarts(16);
        for s in [0.1, 0.4, 0.7, 0.95] {
            let out = fields_baseline(s, 0.5, 0.5, &opts).unwrap();
            assert!(out.value <= helstrom_bound(0.5, 0.5, s).unwrap() + 1e-9);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let opts = OptimizerOptions::for_baseline();
        assert!(fields_baseline(1.2, 0.5, 0.5, &opts).is_err());
        assert!(fields_baseline(0.5, 0.9, 0.5, &opts).is_err());
        let wrong = OptimizerOptions::for_receivers(2, 6.0).unwrap();
        assert!(fields_baseline(0.5, 0.5, 0.5, &wrong).is_err());
    }
}
