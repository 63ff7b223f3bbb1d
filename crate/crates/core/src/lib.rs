//! Finite models of theoretical variables and the quantum formalism built on
//! them.
//!
//! - [`varlattice`]: variables as labeled partitions of a finite phi-space,
//!   the "is a function of" ordering, accessibility and maximality.
//! - [`groupaction`]: finite permutation groups on phi-space.
//! - [`hilbert`]: small dense complex linear algebra, spectral
//!   decomposition, spin operators, tensor products.
//! - [`born`]: pure and mixed Born probabilities, expectations, noisy-data
//!   operators and likelihood effects.
//! - [`experiments`]: the spin sign model, Bohm-EPR anti-correlation, CHSH
//!   (quantum and local hidden variable), and the finite Bell-variable demo.
//! - [`cli`]: the config-driven runner behind the `qvars` binary.

pub mod born;
pub mod cli;
pub mod document;
pub mod error;
pub mod experiments;
pub mod groupaction;
pub mod hilbert;
pub mod partition;
pub mod report;
pub mod rng;
pub mod varlattice;

pub use error::{Error, Result};
