//! Sequential conclusive discrimination of binary coherent states with
//! Jaynes-Cummings indirect measurements.
//!
//! Core types are generic over a [`Real`] scalar (`f32` or `f64`); the
//! `*64` aliases below fix them to double precision, which is what every
//! stated tolerance assumes.

pub mod cli;
pub mod discrimination;
pub mod error;
pub mod fock;
pub mod jc;
pub mod optimize;
pub mod scalar;

pub use discrimination::{
    chain_apply, fields_baseline, first_stage_coeffs, helstrom_bound, overlap, success_probability,
    success_probability_series, two_stage_coeffs, BaselineResult, DiscriminationProblem, ParamVector,
    SuccessObjective,
};
pub use error::{Error, Result};
pub use fock::{coarse_series_bound, default_dim, poisson_tail, CoherentSpec, FockVector};
pub use jc::{
    extract_kraus, jc_unitary_apply, kraus_apply, pointer_state, AtomState, JointVector, KrausOperator, Outcome,
    ReceiverParams,
};
pub use optimize::{
    multistart_minimize, optimize_success, powell_minimize, MultistartOutcome, OptimizationResult,
    OptimizerOptions, PowellOutcome, SearchBox,
};
pub use scalar::{Amplitude, Real};

pub type FockVector64 = FockVector<f64>;
pub type CoherentSpec64 = CoherentSpec<f64>;
pub type ReceiverParams64 = ReceiverParams<f64>;
pub type AtomState64 = AtomState<f64>;
pub type JointVector64 = JointVector<f64>;
pub type DiscriminationProblem64 = DiscriminationProblem<f64>;
pub type ParamVector64 = ParamVector<f64>;
pub type OptimizerOptions64 = OptimizerOptions<f64>;
pub type OptimizationResult64 = OptimizationResult<f64>;

pub type FockVector32 = FockVector<f32>;
pub type ReceiverParams32 = ReceiverParams<f32>;
pub type DiscriminationProblem32 = DiscriminationProblem<f32>;
