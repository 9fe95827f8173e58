//! Truncated Fock-space vectors and coherent states.
//!
//! A [`FockVector`] stores amplitudes over `|0>, ..., |dim-1>`. Coherent
//! amplitudes are built by the recurrence `c_{n+1} = c_n * alpha / sqrt(n+1)`,
//! so factorials are never formed and large dimensions stay finite.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Amplitude, Real};

/// Complex amplitudes over the truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T: Real> {
    amps: Vec<Amplitude<T>>,
}

impl<T: Real> FockVector<T> {
    pub fn new(amps: Vec<Amplitude<T>>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self { amps })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex::zero(); dim])
    }

    /// Fock state `|n>` in a space of dimension `dim`.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::DimensionMismatch { left: n + 1, right: dim });
        }
        let mut v = Self::zeros(dim)?;
        v.amps[n] = Complex::one();
        Ok(v)
    }

    /// Coherent state `|alpha>` truncated to `dim` levels.
    pub fn coherent(spec: CoherentSpec<T>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let alpha = spec.alpha;
        let mut amps = Vec::with_capacity(dim);
        let mut c = Complex::new((-spec.mean_photon_number() / T::lit(2.0)).exp(), T::zero());
        amps.push(c);
        for n in 1..dim {
            c = c * alpha / T::from_usize_lossy(n).sqrt();
            amps.push(c);
        }
        Ok(Self { amps })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude<T>> {
        self.amps
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Amplitude<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(u, v)| u.conj() * v)
            .fold(Complex::zero(), |acc, z| acc + z))
    }

    /// Squared norm. Summing `|c_n|^2` is the real part of `<v|v>` with the
    /// imaginary part identically zero.
    pub fn norm_sq(&self) -> T {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: Amplitude<T>) -> Self {
        Self { amps: self.amps.iter().map(|c| c * factor).collect() }
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(u, v)| (u - v).norm())
            .fold(T::zero(), T::max))
    }
}

/// Amplitude of a coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec<T: Real> {
    pub alpha: Amplitude<T>,
}

impl<T: Real> CoherentSpec<T> {
    pub fn new(alpha: Amplitude<T>) -> Self {
        Self { alpha }
    }

    pub fn real(alpha: T) -> Self {
        Self { alpha: Complex::new(alpha, T::zero()) }
    }

    /// `<n> = |alpha|^2`.
    pub fn mean_photon_number(&self) -> T {
        self.alpha.norm_sqr()
    }

    pub fn negated(&self) -> Self {
        Self { alpha: -self.alpha }
    }
}

/// Probability mass `sum_{n >= dim} e^{-|alpha|^2} |alpha|^{2n} / n!` that a
/// coherent state places outside the first `dim` Fock levels.
///
/// When `dim` exceeds the mean photon number the tail is summed directly
/// starting from a log-space first term, which keeps tiny tails accurate
/// instead of cancelling to rounding noise in `1 - head`.
pub fn poisson_tail<T: Real>(alpha: Amplitude<T>, dim: usize) -> T {
    let mean = alpha.norm_sqr();
    if mean == T::zero() || dim == 0 {
        return if dim == 0 { T::one() } else { T::zero() };
    }
    let dim_t = T::from_usize_lossy(dim);
    if dim_t > mean {
        // ln p_dim = -mean + dim ln(mean) - ln(dim!)
        let ln_fact: T = (1..=dim).map(|k| T::from_usize_lossy(k).ln()).sum();
        let mut term = (-mean + dim_t * mean.ln() - ln_fact).exp();
        let mut tail = T::zero();
        let mut k = dim;
        loop {
            tail += term;
            k += 1;
            term = term * mean / T::from_usize_lossy(k);
            if term <= tail * T::epsilon() * T::lit(1e-3) || term == T::zero() {
                break;
            }
        }
        tail.min(T::one()).max(T::zero())
    } else {
        let mut p = (-mean).exp();
        let mut head = T::zero();
        for n in 0..dim {
            head += p;
            p = p * mean / T::from_usize_lossy(n + 1);
        }
        (T::one() - head).min(T::one()).max(T::zero())
    }
}

/// Default truncation: `max(30, ceil(|alpha|^2 + 8|alpha| + 10))`.
pub fn default_dim<T: Real>(alpha_abs: T) -> usize {
    let est = (alpha_abs * alpha_abs + T::lit(8.0) * alpha_abs + T::lit(10.0)).ceil();
    est.to_usize().unwrap_or(usize::MAX).max(30)
}

/// Coarse bound `2(1 + |alpha|)` on `sum_n |f_n|^2` for the first-receiver
/// output coefficients. Much looser than [`poisson_tail`]; kept as a sanity
/// constant.
pub fn coarse_series_bound<T: Real>(alpha_abs: T) -> T {
    T::lit(2.0) * (T::one() + alpha_abs)
}
