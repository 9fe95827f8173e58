//! Jaynes-Cummings indirect measurement of a single optical mode.
//!
//! A receiver couples the mode to a two-level probe prepared in `|g>`, lets
//! the resonant interaction act for an integrated phase `phi`, and reads the
//! probe in the pointer basis set by `(theta, xi)`. Only `phi` enters the
//! dynamics, and on each block `{|n, g>, |n-1, e>}` the unitary is a rotation
//! by `phi * sqrt(n)`.
//!
//! The resulting Kraus operators are banded (a diagonal plus one lowering
//! band) and are applied without ever forming a dense matrix:
//!
//! ```text
//! K(1)|n> = cos(theta) cos(phi sqrt n)|n> - i e^{-i xi} sin(theta) sin(phi sqrt n)|n-1>
//! K(2)|n> = sin(theta) cos(phi sqrt n)|n> + i e^{-i xi} cos(theta) sin(phi sqrt n)|n-1>
//! ```

use std::convert::TryFrom;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::scalar::{cis, mul_i, mul_neg_i, Amplitude, Real};

/// Excited-branch amplitude at `n = dim - 1` above which the unitary would
/// push noticeable weight past the truncation boundary.
pub const TRUNCATION_OVERFLOW_TOLERANCE: f64 = 1e-10;

/// Measurement outcome of one receiver: the hypothesis it reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    First,
    Second,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::First, Outcome::Second];

    /// 1-based label.
    pub fn label(self) -> u8 {
        match self {
            Outcome::First => 1,
            Outcome::Second => 2,
        }
    }
}

impl TryFrom<u8> for Outcome {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Outcome::First),
            2 => Ok(Outcome::Second),
            other => Err(Error::InvalidOutcome(other)),
        }
    }
}

/// Measurement parameters of one receiver.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReceiverParams<T: Real> {
    /// Integrated interaction phase.
    pub phi: T,
    /// Pointer-basis polar angle.
    pub theta: T,
    /// Pointer-basis relative phase.
    pub xi: T,
}

impl<T: Real> ReceiverParams<T> {
    pub fn new(phi: T, theta: T, xi: T) -> Self {
        Self { phi, theta, xi }
    }

    pub fn is_finite(&self) -> bool {
        self.phi.is_finite() && self.theta.is_finite() && self.xi.is_finite()
    }

    /// Reduces `theta` and `xi` into `[0, 2pi)`; every Kraus action is unchanged.
    pub fn canonical(&self) -> Self {
        let tau = T::TAU();
        let wrap = |x: T| {
            let r = x % tau;
            if r < T::zero() {
                r + tau
            } else {
                r
            }
        };
        Self { phi: self.phi, theta: wrap(self.theta), xi: wrap(self.xi) }
    }

    /// Both Kraus operators on a `dim`-level mode, sharing one pass of
    /// trigonometric evaluations.
    pub fn kraus_pair(&self, dim: usize) -> [KrausOperator<T>; 2] {
        let (st, ct) = self.theta.sin_cos();
        let phase = cis(-self.xi);
        // lowering prefactors: -i e^{-i xi} sin(theta) and +i e^{-i xi} cos(theta)
        let low1 = mul_neg_i(phase) * st;
        let low2 = mul_i(phase) * ct;
        let mut diag1 = Vec::with_capacity(dim);
        let mut diag2 = Vec::with_capacity(dim);
        let mut lower1 = Vec::with_capacity(dim.saturating_sub(1));
        let mut lower2 = Vec::with_capacity(dim.saturating_sub(1));
        for n in 0..dim {
            let (s, c) = (self.phi * T::from_usize_lossy(n).sqrt()).sin_cos();
            diag1.push(Complex::new(ct * c, T::zero()));
            diag2.push(Complex::new(st * c, T::zero()));
            if n >= 1 {
                lower1.push(low1 * s);
                lower2.push(low2 * s);
            }
        }
        [
            KrausOperator { diag: diag1, lower: lower1 },
            KrausOperator { diag: diag2, lower: lower2 },
        ]
    }

    pub fn kraus(&self, outcome: Outcome, dim: usize) -> KrausOperator<T> {
        let [k1, k2] = self.kraus_pair(dim);
        match outcome {
            Outcome::First => k1,
            Outcome::Second => k2,
        }
    }
}

/// Banded Kraus operator on a truncated mode.
///
/// `(K psi)_n = diag[n] psi_n + lower[n] psi_{n+1}`. The only truncation
/// boundary is the missing `psi_dim`, an amplitude already outside the
/// retained space, so the action is exact on the truncated input.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausOperator<T: Real> {
    diag: Vec<Amplitude<T>>,
    lower: Vec<Amplitude<T>>,
}

impl<T: Real> KrausOperator<T> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, psi: &FockVector<T>) -> Result<FockVector<T>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: psi.dim() });
        }
        let mut out = psi.amplitudes().to_vec();
        self.apply_in_place(&mut out);
        FockVector::new(out)
    }

    /// Same action on a raw amplitude slice of length `dim`, processed in
    /// increasing `n` so the lowering band reads not-yet-overwritten entries.
    pub(crate) fn apply_in_place(&self, amps: &mut [Amplitude<T>]) {
        let dim = amps.len();
        for n in 0..dim {
            let mut v = self.diag[n] * amps[n];
            if n + 1 < dim {
                v += self.lower[n] * amps[n + 1];
            }
            amps[n] = v;
        }
    }
}

/// State of the two-level probe over `{|g>, |e>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomState<T: Real> {
    pub g: Amplitude<T>,
    pub e: Amplitude<T>,
}

impl<T: Real> AtomState<T> {
    pub fn ground() -> Self {
        Self { g: Complex::new(T::one(), T::zero()), e: Complex::zero() }
    }

    pub fn norm_sq(&self) -> T {
        self.g.norm_sqr() + self.e.norm_sqr()
    }

    pub fn inner(&self, other: &Self) -> Amplitude<T> {
        self.g.conj() * other.g + self.e.conj() * other.e
    }
}

/// Pointer state read out for `outcome`:
/// `|pi(1)> = cos(theta)|g> + e^{i xi} sin(theta)|e>`,
/// `|pi(2)> = sin(theta)|g> - e^{i xi} cos(theta)|e>`.
pub fn pointer_state<T: Real>(params: &ReceiverParams<T>, outcome: Outcome) -> AtomState<T> {
    let (st, ct) = params.theta.sin_cos();
    let phase = cis(params.xi);
    match outcome {
        Outcome::First => AtomState { g: Complex::new(ct, T::zero()), e: phase * st },
        Outcome::Second => AtomState { g: Complex::new(st, T::zero()), e: -(phase * ct) },
    }
}

/// Closed-form Kraus action `K(outcome)|psi>`.
pub fn kraus_apply<T: Real>(
    params: &ReceiverParams<T>,
    outcome: Outcome,
    psi: &FockVector<T>,
) -> Result<FockVector<T>> {
    params.kraus(outcome, psi.dim()).apply(psi)
}

/// Joint mode-probe state `psi_g (x) |g> + psi_e (x) |e>`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointVector<T: Real> {
    g: FockVector<T>,
    e: FockVector<T>,
}

impl<T: Real> JointVector<T> {
    pub fn new(g: FockVector<T>, e: FockVector<T>) -> Result<Self> {
        if g.dim() != e.dim() {
            return Err(Error::DimensionMismatch { left: g.dim(), right: e.dim() });
        }
        Ok(Self { g, e })
    }

    /// `psi (x) |g>`.
    pub fn with_ground_probe(psi: FockVector<T>) -> Self {
        let e = FockVector::zeros(psi.dim()).expect("dim >= 1");
        Self { g: psi, e }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn ground_branch(&self) -> &FockVector<T> {
        &self.g
    }

    pub fn excited_branch(&self) -> &FockVector<T> {
        &self.e
    }

    pub fn norm_sq(&self) -> T {
        self.g.norm_sq() + self.e.norm_sq()
    }

    /// Contracts the probe with `<pointer|`.
    pub fn project_probe(&self, pointer: &AtomState<T>) -> FockVector<T> {
        let cg = pointer.g.conj();
        let ce = pointer.e.conj();
        let amps = self
            .g
            .amplitudes()
            .iter()
            .zip(self.e.amplitudes())
            .map(|(g, e)| cg * g + ce * e)
            .collect();
        FockVector::new(amps).expect("dim >= 1")
    }
}

/// Resonant Jaynes-Cummings unitary with integrated phase `phi`.
///
/// On each block `{|n, g>, |n-1, e>}` (n >= 1):
/// `U|n,g> = cos(phi sqrt n)|n,g> - i sin(phi sqrt n)|n-1,e>` and
/// `U|n-1,e> = cos(phi sqrt n)|n-1,e> - i sin(phi sqrt n)|n,g>`;
/// `|0, g>` is invariant. The excited amplitude at `n = dim - 1` belongs to a
/// block whose partner `|dim, g>` is outside the space, so it must be
/// negligible.
pub fn jc_unitary_apply<T: Real>(phi: T, joint: &JointVector<T>) -> Result<JointVector<T>> {
    let dim = joint.dim();
    let g = joint.g.amplitudes();
    let e = joint.e.amplitudes();
    let top = e[dim - 1].norm();
    if top.to_f64_lossy() > TRUNCATION_OVERFLOW_TOLERANCE {
        return Err(Error::TruncationOverflow { amplitude: top.to_f64_lossy() });
    }
    let mut new_g = vec![Complex::zero(); dim];
    let mut new_e = vec![Complex::zero(); dim];
    new_g[0] = g[0];
    for n in 1..dim {
        let (s, c) = (phi * T::from_usize_lossy(n).sqrt()).sin_cos();
        new_g[n] = g[n] * c + mul_neg_i(e[n - 1]) * s;
        new_e[n - 1] = e[n - 1] * c + mul_neg_i(g[n]) * s;
    }
    // partner |dim, g> is truncated away
    let c_top = (phi * T::from_usize_lossy(dim).sqrt()).cos();
    new_e[dim - 1] = e[dim - 1] * c_top;
    Ok(JointVector { g: FockVector::new(new_g)?, e: FockVector::new(new_e)? })
}

/// Kraus action obtained from the dilation: evolve `psi (x) |g>` under the
/// interaction, then project the probe onto the pointer state.
pub fn extract_kraus<T: Real>(
    params: &ReceiverParams<T>,
    outcome: Outcome,
    psi: &FockVector<T>,
) -> Result<FockVector<T>> {
    let evolved = jc_unitary_apply(params.phi, &JointVector::with_ground_probe(psi.clone()))?;
    Ok(evolved.project_probe(&pointer_state(params, outcome)))
}
