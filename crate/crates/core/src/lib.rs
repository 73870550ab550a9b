//! Separation-of-variables toolkit for the Laplace and Poisson equations on the
//! Calabi model space: special functions, per-mode fundamental solutions,
//! a variation-of-parameters Poisson solver, certification of uniform bounds
//! and Liouville-type classification of harmonic functions.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::should_implement_trait)]

pub mod calabi_ode;
pub mod cli;
pub mod error;
pub mod estimates;
pub mod logvalue;
pub mod poisson;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use logvalue::LogValue;
