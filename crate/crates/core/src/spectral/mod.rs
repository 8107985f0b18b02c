//! Torus grids, discrete Fourier transforms and Fourier multipliers.

mod dft;
mod grid;
pub mod io;
mod multipliers;
mod spectrum;

pub use dft::{forward_dft, inverse_dft, DftPlan, DftScratch};
pub use grid::{Grid, WaveVector};
pub use multipliers::{
    cutoff_mask, cutoff_radius, filter_cutoff, fractional_gradient, in_cutoff_cube, japanese_bracket_sq,
    schrodinger_propagator, sobolev_norm, sobolev_norm_sq, wave_propagator, ZERO_MODE_TOL,
};
pub use spectrum::{Field, Spectrum};
