//! Fox-Wright generalized hypergeometric functions and related tools.
//!
//! The crate evaluates `pΨq` by direct series summation, inverts the Mellin
//! transform of the Fox H-density `H^{p,0}_{q,p}` numerically, and builds on
//! both to check Laplace/Stieltjes representations, complete monotonicity,
//! Turán-type inequalities, Luke-type envelopes and generalized Mathieu
//! series bounds.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod fox_wright;
pub mod hfunction;
pub mod mathieu;
pub mod quadrature;
pub mod report;
pub mod special;

pub use error::{Error, Result};
pub use fox_wright::{ConvergenceData, FoxWrightParams, ParamPair};
