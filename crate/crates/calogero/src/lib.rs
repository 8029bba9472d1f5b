//! Self-adjoint Hamiltonians for the inverse-square potential `alpha / x^2` on the half-line.
//!
//! The crate covers every self-adjoint extension of the formal operator
//! `-d^2/dx^2 + alpha / x^2`: regime classification, boundary conditions at the
//! origin, closed-form spectra and eigenfunctions, spectral densities through the
//! resolvent, eigenfunction-expansion transforms, and independent numerical
//! oracles used to cross-check all of it.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod extensions;
pub mod oracle;
pub mod quad;
pub mod specialfn;
pub mod spectral;
pub mod symmetry;
pub mod transform;

pub use error::{Error, Result};
