//! Differential invariants of planar maps under GL(3), the Appell F1
//! function and its Picard-curve periods, and exact arithmetic in the
//! Picard modular group over the Eisenstein integers.
//!
//! Numerical work runs on truncated multivariate Taylor jets ([`jets`]);
//! group-theoretic identities run in exact Eisenstein arithmetic
//! ([`eisenstein`], [`lft`], [`heisenberg`], [`eta`]). [`suites`] bundles
//! every identity into seeded checks and a deterministic report.

pub mod appell;
pub mod derivs;
pub mod eisenstein;
pub mod error;
pub mod eta;
pub mod evolution;
pub mod heisenberg;
pub mod jets;
pub mod lft;
pub mod pde_verify;
pub mod picard;
pub mod sampling;
pub mod suites;

pub use error::{Error, Result};
