//! Pseudospectral solver for the Zakharov system
//!
//! ```text
//! i E_t = -ΔE + zE,    z_tt = Δz + Δ|E|^2
//! ```
//!
//! on the torus `T^d`, `d ≤ 3`, using the filtered Lie splitting scheme on the
//! first-order reformulation `(E, u)`, `u = z - i|∇|^{-1} z_t`. Alongside the
//! integrator the crate provides rough random data, conservation and error
//! diagnostics, discrete Bourgain norms, and the drivers for convergence and
//! conservation studies.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bourgain;
pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod initial_data;
pub mod spectral;
pub mod splitting;
pub mod state;

pub use error::{Error, Result};
