//! Localized solutions of the (non)linear Klein-Gordon equation
//! `-c^-2 (d_t + i q phi / chi)^2 psi + lap psi - G'(|psi|^2) psi - (mc/chi)^2 psi = 0`
//! and the numerical verification that their restricted energy obeys the
//! relativistic Newton law with mass given by `M = E / c^2`.
//!
//! The crate builds three kinds of solutions:
//! - resting charges (radial nonlinear eigenvalue problem),
//! - uniformly moving charges (Lorentz boost of a rest state),
//! - rectilinearly accelerating charges with a fixed Gaussian shape, driven
//!   by an accelerating potentialplus a small balancing potential obtained
//!   by integrating characteristic ODEs of a quasilinear phase equation,
//!
//! and verifies conservation laws, concentration properties, and the
//! Newton/Einstein limit diagnostics on all of them.

pub mod error;
pub mod numerics;

pub mod nonlinearity;

pub use error::{Error, Result};
