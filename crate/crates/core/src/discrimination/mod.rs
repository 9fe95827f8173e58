//! Sequential conclusive discrimination of two coherent states.
//!
//! `N` receivers measure in a chain, each acting on the post-measurement
//! state the previous one left behind. The protocol succeeds when every
//! receiver reports the label of the state that was sent, so the success
//! probability is
//!
//! ```text
//! P = q1 ||K_N(1)...K_1(1)|alpha1>||^2 + q2 ||K_N(2)...K_1(2)|alpha2>||^2.
//! ```
//!
//! Two independent evaluation routes are provided: the operator chain
//! ([`success_probability`]) and, for two receivers, the closed-form
//! coefficient series ([`success_probability_series`]).

mod baseline;

pub use baseline::{fields_baseline, BaselineResult, BASELINE_PARAMETERS};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{default_dim, CoherentSpec, FockVector};
use crate::jc::{Outcome, ReceiverParams};
use crate::scalar::{cis, mul_i, mul_neg_i, Amplitude, Real};

/// Two coherent hypotheses with their priors and a shared truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationProblem<T: Real> {
    pub alpha1: CoherentSpec<T>,
    pub alpha2: CoherentSpec<T>,
    pub q1: T,
    pub q2: T,
    pub dim: usize,
}

impl<T: Real> DiscriminationProblem<T> {
    pub fn new(
        alpha1: CoherentSpec<T>,
        alpha2: CoherentSpec<T>,
        q1: T,
        q2: T,
        dim: usize,
    ) -> Result<Self> {
        let bad = || Error::InvalidPriors { q1: q1.to_f64_lossy(), q2: q2.to_f64_lossy() };
        if !(q1 >= T::zero() && q2 >= T::zero()) {
            return Err(bad());
        }
        if ((q1 + q2) - T::one()).abs() > T::lit(1e-12) {
            return Err(bad());
        }
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self { alpha1, alpha2, q1, q2, dim })
    }

    /// `|+alpha>` vs `|-alpha>` with `alpha = sqrt(mean_n)`, priors `(q1, 1 - q1)`
    /// and the default truncation for that amplitude.
    pub fn antipodal(mean_n: T, q1: T) -> Result<Self> {
        let alpha = mean_n.max(T::zero()).sqrt();
        Self::antipodal_with_dim(mean_n, q1, default_dim(alpha))
    }

    pub fn antipodal_with_dim(mean_n: T, q1: T, dim: usize) -> Result<Self> {
        let a = CoherentSpec::real(mean_n.max(T::zero()).sqrt());
        Self::new(a, a.negated(), q1, T::one() - q1, dim)
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.alpha1, self.alpha2, self.q1, self.q2, dim)
    }

    /// Exchanges the hypotheses together with their priors.
    pub fn swapped(&self) -> Self {
        Self { alpha1: self.alpha2, alpha2: self.alpha1, q1: self.q2, q2: self.q1, dim: self.dim }
    }

    pub fn state(&self, outcome: Outcome) -> Result<FockVector<T>> {
        let spec = match outcome {
            Outcome::First => self.alpha1,
            Outcome::Second => self.alpha2,
        };
        FockVector::coherent(spec, self.dim)
    }

    pub fn prior(&self, outcome: Outcome) -> T {
        match outcome {
            Outcome::First => self.q1,
            Outcome::Second => self.q2,
        }
    }

    fn alpha(&self, outcome: Outcome) -> CoherentSpec<T> {
        match outcome {
            Outcome::First => self.alpha1,
            Outcome::Second => self.alpha2,
        }
    }

    /// `|<alpha1|alpha2>|`.
    pub fn overlap_modulus(&self) -> T {
        overlap(self.alpha1.alpha, self.alpha2.alpha).norm()
    }
}

/// Parameters of a chain of `N >= 1` receivers, flattened as
/// `(phi_1, theta_1, xi_1, ..., phi_N, theta_N, xi_N)` for optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector<T: Real>(Vec<ReceiverParams<T>>);

impl<T: Real> ParamVector<T> {
    pub fn new(receivers: Vec<ReceiverParams<T>>) -> Result<Self> {
        if receivers.is_empty() {
            return Err(Error::ParameterCount { expected: 3, got: 0 });
        }
        if receivers.iter().any(|r| !r.is_finite()) {
            return Err(Error::NonFiniteParameter);
        }
        Ok(Self(receivers))
    }

    pub fn from_slice(values: &[T]) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(3) {
            let expected = (values.len() / 3).max(1) * 3;
            return Err(Error::ParameterCount { expected, got: values.len() });
        }
        Self::new(values.chunks_exact(3).map(|c| ReceiverParams::new(c[0], c[1], c[2])).collect())
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.0.iter().flat_map(|r| [r.phi, r.theta, r.xi]).collect()
    }

    pub fn receivers(&self) -> &[ReceiverParams<T>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn expect_two(&self) -> Result<(&ReceiverParams<T>, &ReceiverParams<T>)> {
        match self.0.as_slice() {
            [a, b] => Ok((a, b)),
            other => Err(Error::ParameterCount { expected: 6, got: 3 * other.len() }),
        }
    }
}

/// `K_N(j) ... K_1(j) |psi>` with every receiver reporting `outcome`.
pub fn chain_apply<T: Real>(
    params: &ParamVector<T>,
    outcome: Outcome,
    psi: &FockVector<T>,
) -> Result<FockVector<T>> {
    let mut amps = psi.amplitudes().to_vec();
    for r in params.receivers() {
        r.kraus(outcome, psi.dim()).apply_in_place(&mut amps);
    }
    FockVector::new(amps)
}

/// Success probability through the operator chain.
pub fn success_probability<T: Real>(
    params: &ParamVector<T>,
    problem: &DiscriminationProblem<T>,
) -> Result<T> {
    Outcome::BOTH.iter().try_fold(T::zero(), |acc, &j| {
        let out = chain_apply(params, j, &problem.state(j)?)?;
        Ok(acc + problem.prior(j) * out.norm_sq())
    })
}

/// Chain-route success probability with the two input states cached, for
/// repeated evaluation inside an optimizer. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct SuccessObjective<T: Real> {
    problem: DiscriminationProblem<T>,
    states: [FockVector<T>; 2],
}

impl<T: Real> SuccessObjective<T> {
    pub fn new(problem: DiscriminationProblem<T>) -> Result<Self> {
        let states = [problem.state(Outcome::First)?, problem.state(Outcome::Second)?];
        Ok(Self { problem, states })
    }

    pub fn problem(&self) -> &DiscriminationProblem<T> {
        &self.problem
    }

    pub fn evaluate(&self, params: &ParamVector<T>) -> T {
        let dim = self.problem.dim;
        let mut branches = [self.states[0].amplitudes().to_vec(), self.states[1].amplitudes().to_vec()];
        for r in params.receivers() {
            let ks = r.kraus_pair(dim);
            for (amps, k) in branches.iter_mut().zip(&ks) {
                k.apply_in_place(amps);
            }
        }
        let norm = |v: &[Amplitude<T>]| v.iter().map(|c| c.norm_sqr()).sum::<T>();
        self.problem.q1 * norm(&branches[0]) + self.problem.q2 * norm(&branches[1])
    }

    /// Evaluates a flattened parameter vector; its length must be a positive
    /// multiple of three.
    pub fn evaluate_slice(&self, values: &[T]) -> Result<T> {
        Ok(self.evaluate(&ParamVector::from_slice(values)?))
    }
}

/// Coherent amplitudes `alpha^n / sqrt(n!)` (without the Gaussian prefactor)
/// for `n < n_max`.
fn scaled_powers<T: Real>(alpha: Amplitude<T>, n_max: usize) -> Vec<Amplitude<T>> {
    let mut out = Vec::with_capacity(n_max);
    let mut c = Complex::new(T::one(), T::zero());
    for n in 0..n_max {
        if n > 0 {
            c = c * alpha / T::from_usize_lossy(n).sqrt();
        }
        out.push(c);
    }
    out
}

/// Series coefficients of `K(j)|v> = sum_n c_n |n>` for an arbitrary banded
/// receiver acting on coefficients `v_n`, written out term by term:
/// outcome 1 gives `v_n cos(theta) cos(phi sqrt n) - i v_{n+1} e^{-i xi} sin(theta) sin(phi sqrt(n+1))`,
/// outcome 2 gives `v_n sin(theta) cos(phi sqrt n) + i v_{n+1} e^{-i xi} cos(theta) sin(phi sqrt(n+1))`.
/// `v_{n_max}` is treated as zero.
fn stage_coeffs<T: Real>(
    input: &[Amplitude<T>],
    r: &ReceiverParams<T>,
    j: Outcome,
) -> Vec<Amplitude<T>> {
    let n_max = input.len();
    let (st, ct) = r.theta.sin_cos();
    let phase = cis(-r.xi);
    (0..n_max)
        .map(|n| {
            let cos_n = (r.phi * T::from_usize_lossy(n).sqrt()).cos();
            let sin_next = (r.phi * T::from_usize_lossy(n + 1).sqrt()).sin();
            let next = if n + 1 < n_max { input[n + 1] } else { Complex::zero() };
            match j {
                Outcome::First => {
                    input[n] * (ct * cos_n) + mul_neg_i(next * phase) * (st * sin_next)
                }
                Outcome::Second => {
                    input[n] * (st * cos_n) + mul_i(next * phase) * (ct * sin_next)
                }
            }
        })
        .collect()
}

/// First-receiver output coefficients `f_n(j)`, `n < n_max`, for input
/// `|alpha_j>`.
pub fn first_stage_coeffs<T: Real>(
    problem: &DiscriminationProblem<T>,
    first: &ReceiverParams<T>,
    j: Outcome,
    n_max: usize,
) -> Vec<Amplitude<T>> {
    let spec = problem.alpha(j);
    let prefactor = (-spec.mean_photon_number() / T::lit(2.0)).exp();
    let powers: Vec<_> = scaled_powers(spec.alpha, n_max).into_iter().map(|c| c * prefactor).collect();
    stage_coeffs(&powers, first, j)
}

/// Two-receiver output coefficients `F_n(j)`, `n < n_max`, built from
/// `f_n(j)` and `f_{n+1}(j)`.
pub fn two_stage_coeffs<T: Real>(
    problem: &DiscriminationProblem<T>,
    params: &ParamVector<T>,
    j: Outcome,
    n_max: usize,
) -> Result<Vec<Amplitude<T>>> {
    let (first, second) = params.expect_two()?;
    let f = first_stage_coeffs(problem, first, j, n_max);
    Ok(stage_coeffs(&f, second, j))
}

/// Two-receiver success probability `q1 sum |F_n(1)|^2 + q2 sum |F_n(2)|^2`
/// over the problem's truncation.
pub fn success_probability_series<T: Real>(
    params: &ParamVector<T>,
    problem: &DiscriminationProblem<T>,
) -> Result<T> {
    Outcome::BOTH.iter().try_fold(T::zero(), |acc, &j| {
        let big_f = two_stage_coeffs(problem, params, j, problem.dim)?;
        let s: T = big_f.iter().map(|c| c.norm_sqr()).sum();
        Ok(acc + problem.prior(j) * s)
    })
}

/// Minimum-error (Helstrom) success probability for two pure states with
/// overlap modulus `s`: `(1 + sqrt(1 - 4 q1 q2 s^2)) / 2`.
pub fn helstrom_bound<T: Real>(q1: T, q2: T, overlap_mod: T) -> Result<T> {
    if !(overlap_mod >= T::zero() && overlap_mod <= T::one()) {
        return Err(Error::InvalidOverlap(overlap_mod.to_f64_lossy()));
    }
    if !(q1 >= T::zero() && q2 >= T::zero()) || ((q1 + q2) - T::one()).abs() > T::lit(1e-12) {
        return Err(Error::InvalidPriors { q1: q1.to_f64_lossy(), q2: q2.to_f64_lossy() });
    }
    let disc = (T::one() - T::lit(4.0) * q1 * q2 * overlap_mod * overlap_mod).max(T::zero());
    Ok((T::one() + disc.sqrt()) / T::lit(2.0))
}

/// `<alpha1|alpha2> = exp(-(|alpha1|^2 + |alpha2|^2)/2 + conj(alpha1) alpha2)`.
pub fn overlap<T: Real>(alpha1: Amplitude<T>, alpha2: Amplitude<T>) -> Amplitude<T> {
    let half = T::lit(0.5);
    let exponent = alpha1.conj() * alpha2 - Complex::new((alpha1.norm_sqr() + alpha2.norm_sqr()) * half, T::zero());
    exponent.exp()
}
