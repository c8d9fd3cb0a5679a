//! Generalized hypergeometric coherent states and their even/odd variants.
//!
//! The crate evaluates `pFq` and its even/odd parts, builds the
//! corresponding Fock-space states, computes their photon statistics and
//! thermal moments, verifies the closed-form resolution-of-identity weights
//! through their power moments, and evaluates the Fubini–Study metric
//! density of the `p = 1, q = 0` families.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod geometry;
pub mod moments;
pub mod params;
pub mod quad;
pub mod special;
pub mod states;
pub mod statistics;

pub use error::{Error, ErrorKind, Result};
pub use exec::Execution;
pub use params::{validate_params, ParamSet};
pub use states::{Parity, StateSpec};
