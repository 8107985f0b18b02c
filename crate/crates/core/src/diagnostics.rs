//! Mass, energy and the error triple used in the convergence studies.
//!
//! Physical-space integrals carry the `(2π)^d` torus volume, Sobolev norms do
//! not. The coupling term `∫ z|E|^2` of the energy is evaluated by grid
//! quadrature; since it is cubic the quadrature aliases, so energy logs track
//! this discrete functional rather than the exact integral.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::{fractional_gradient, inverse_dft, sobolev_norm, Spectrum};
use crate::state::{decode_u, WaveData, ZState};

fn volume(dim: usize) -> f64 {
    (2.0 * PI).powi(dim as i32)
}

/// `∫|E|^2 = (2π)^d Σ_k |c_k|^2`.
pub fn mass(e: &Spectrum) -> f64 {
    volume(e.grid().dim()) * e.norm_sq()
}

/// `∫(|∇E|^2 + z|E|^2 + ½||∇|^{-1} z_t|^2 + ½ z^2)`.
pub fn energy(e: &Spectrum, data: &WaveData) -> Result<f64> {
    let grid = e.grid();
    if data.grid() != grid {
        return Err(Error::GridMismatch("E and wave data on different grids".into()));
    }
    let vol = volume(grid.dim());
    let kinetic: f64 = e
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| grid.wave_vector(i).norm_sq() * c.norm_sqr())
        .sum();
    let potential = fractional_gradient(data.zt(), -1.0)?.norm_sq();
    let displacement = data.z().norm_sq();

    let z_grid = inverse_dft(data.z());
    let e_grid = inverse_dft(e);
    let coupling: f64 =
        z_grid.values().iter().zip(e_grid.values()).map(|(z, e)| z.re * e.norm_sqr()).sum();
    let cell = (grid.spacing()).powi(grid.dim() as i32);

    Ok(vol * (kinetic + 0.5 * potential + 0.5 * displacement) + cell * coupling)
}

/// Energy of a first-order state.
pub fn state_energy(state: &ZState) -> Result<f64> {
    energy(state.e(), &state.wave_data())
}

/// Errors of `E`, `z` and `z_t` in `H^{s0+1/2} × H^{s0} × H^{s0-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTriple {
    pub e_e: f64,
    pub e_z: f64,
    pub e_zt: f64,
    pub total: f64,
}

impl ErrorTriple {
    pub fn new(e_e: f64, e_z: f64, e_zt: f64) -> Self {
        ErrorTriple { e_e, e_z, e_zt, total: e_e + e_z + e_zt }
    }
}

/// Compares `numerical` against `reference`; the coarser state is zero-padded
/// onto the finer grid so reference modes the numerical grid cannot represent
/// count fully toward the error.
pub fn error_triple(numerical: &ZState, reference: &ZState, s0: f64) -> Result<ErrorTriple> {
    let (a, b) = (numerical.grid(), reference.grid());
    let target = if a.embeds_in(&b) {
        b
    } else if b.embeds_in(&a) {
        a
    } else {
        return Err(Error::GridMismatch(format!("{a:?} and {b:?} share no embedding")));
    };
    let num_data = decode_u(numerical.u());
    let ref_data = decode_u(reference.u());
    let diff = |x: &Spectrum, y: &Spectrum| -> Result<Spectrum> {
        Ok(&x.resample(target)? - &y.resample(target)?)
    };
    let de = diff(numerical.e(), reference.e())?;
    let dz = diff(num_data.z(), ref_data.z())?;
    let dzt = diff(num_data.zt(), ref_data.zt())?;
    Ok(ErrorTriple::new(
        sobolev_norm(&de, s0 + 0.5),
        sobolev_norm(&dz, s0),
        sobolev_norm(&dzt, s0 - 1.0),
    ))
}
