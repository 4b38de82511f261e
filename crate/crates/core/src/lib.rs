//! Simulation and analysis of post-selected linear-optical circuits.
//!
//! The crate is organised bottom-up:
//!
//! - [`fock`]: Fock-state bases, matrix permanents and multi-photon evolution
//!   through an arbitrary mode unitary, plus post-selection.
//! - [`circuit`]: directional-coupler / phase-shifter netlists, the `.pqc`
//!   text format, unitary assembly and the six-mode post-selected CNOT.
//! - [`interference`]: two-photon (HOM) visibility, accidental-count
//!   correction and the dip line shape.
//! - [`metrics`]: logical truth tables, logical basis fidelity and the
//!   classical-fidelity similarity between tables.
//! - [`analysis`]: weighted least-squares dip fitting, synthetic dip data and
//!   reflectivity tolerance sweeps.
//!
//! Numerical code is generic over the real scalar through [`Real`]; the
//! `*64` aliases below fix it to `f64`, which is what the analysis layer and
//! the command-line tool use.

pub mod analysis;
pub mod circuit;
mod error;
pub mod fock;
pub mod format;
pub mod interference;
pub mod matrix;
pub mod metrics;
mod scalar;

pub use error::{Error, NetlistError, NetlistErrorKind, Result};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type CMatrix64 = matrix::CMatrix<f64>;
pub type FockDistribution64 = fock::OutputDistribution<f64>;
pub type Netlist64 = circuit::Netlist<f64>;
pub type CouplerSpec64 = circuit::CouplerSpec<f64>;
pub type CnotEtas64 = circuit::CnotEtas<f64>;
pub type TruthTable64 = metrics::TruthTable<f64>;
pub type VisibilityRecord64 = interference::VisibilityRecord<f64>;
pub type DipParams64 = interference::DipParams<f64>;
