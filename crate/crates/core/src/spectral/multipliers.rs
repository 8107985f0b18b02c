//! Diagonal Fourier multipliers: the free Schrödinger and wave propagators,
//! fractional powers of `|∇|`, Sobolev weights and the frequency cutoff `Π_θ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{Grid, WaveVector};
use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// Zero-mode magnitude below which a spectrum counts as mean-free.
pub const ZERO_MODE_TOL: f64 = 1e-12;

/// Japanese bracket `<y> = (1 + |y|^2)^{1/2}` of a squared magnitude.
#[inline]
pub fn japanese_bracket_sq(norm_sq: f64) -> f64 {
    1.0 + norm_sq
}

/// `c_k -> exp(-i t |k|^2) c_k`, the symbol of `exp(i t Δ)`.
pub fn schrodinger_propagator(spectrum: &Spectrum, t: f64) -> Spectrum {
    spectrum.map(|k, c| c * Complex64::from_polar(1.0, -t * k.norm_sq()))
}

/// `c_k -> exp(i t |k|) c_k`, the symbol of `exp(i t |∇|)`.
pub fn wave_propagator(spectrum: &Spectrum, t: f64) -> Spectrum {
    spectrum.map(|k, c| c * Complex64::from_polar(1.0, t * k.norm()))
}

/// `|∇|^α`: `c_k -> |k|^α c_k` for `k ≠ 0`, and the zero mode is always removed.
pub fn fractional_gradient(spectrum: &Spectrum, alpha: f64) -> Result<Spectrum> {
    let c0 = spectrum.zero_mode().norm();
    if alpha < 0.0 && c0 > ZERO_MODE_TOL {
        return Err(Error::NegativePowerOnNonzeroMean { c0 });
    }
    Ok(spectrum.map(|k, c| {
        if k.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            c * k.norm().powf(alpha)
        }
    }))
}

/// Half-width `(c/(dθ))^{1/2}` of the retained cube of `Π_θ`, in wave numbers.
pub fn cutoff_radius(dim: usize, theta: f64, c: f64) -> f64 {
    (c / (dim as f64 * theta)).sqrt()
}

fn check_cutoff(theta: f64, c: f64) -> Result<()> {
    if !(c > 0.0 && c < 2.0 * PI) {
        return Err(Error::InvalidCutoff(c));
    }
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::ConfigInvalid(format!("cutoff scale θ = {theta} must be positive")));
    }
    Ok(())
}

/// Whether `k` lies in the half-open cube `θ^{1/2} k_j ∈ [-(c/d)^{1/2}, (c/d)^{1/2})`.
#[inline]
pub fn in_cutoff_cube(k: &WaveVector, radius: f64) -> bool {
    k.components().iter().all(|&kj| {
        let kj = kj as f64;
        -radius <= kj && kj < radius
    })
}

/// 0/1 mask of the modes kept by `Π_θ`, in storage order.
pub fn cutoff_mask(grid: Grid, theta: f64, c: f64) -> Result<Vec<bool>> {
    check_cutoff(theta, c)?;
    let radius = cutoff_radius(grid.dim(), theta, c);
    Ok((0..grid.len()).map(|i| in_cutoff_cube(&grid.wave_vector(i), radius)).collect())
}

/// Frequency projector `Π_θ`: keeps the modes inside the half-open cube and zeroes the rest.
pub fn filter_cutoff(spectrum: &Spectrum, theta: f64, c: f64) -> Result<Spectrum> {
    check_cutoff(theta, c)?;
    let radius = cutoff_radius(spectrum.grid().dim(), theta, c);
    Ok(spectrum.map(|k, v| if in_cutoff_cube(k, radius) { v } else { Complex64::new(0.0, 0.0) }))
}

/// `(Σ_k <k>^{2s} |c_k|^2)^{1/2}`; the `(2π)^{d/2}` volume factor is not included.
pub fn sobolev_norm(spectrum: &Spectrum, s: f64) -> f64 {
    sobolev_norm_sq(spectrum, s).sqrt()
}

pub fn sobolev_norm_sq(spectrum: &Spectrum, s: f64) -> f64 {
    let grid = spectrum.grid();
    spectrum
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| japanese_bracket_sq(grid.wave_vector(i).norm_sq()).powf(s) * c.norm_sqr())
        .sum()
}
