//! Seeded random rough initial data of prescribed Sobolev regularity.
//!
//! Coefficients are power-law weighted uniform draws:
//!
//! ```text
//! E_0:  <k>^{-s2-d/2-1/2} f_k
//! z_0:  Re of <k>^{-s2-d/2}   g_k
//! z_1:  Re of <k>^{-s2-d/2+1} h_k,   h_0 = 0
//! ```
//!
//! with `f, g, h` independent and uniform on `[-1, 1]`. Each field is then
//! rescaled to unit norm in `H^{s2+1/2}`, `H^{s2}` and `H^{s2-1}` respectively.
//!
//! # Random stream
//!
//! Draws come from SplitMix64 seeded with the user seed. Each uniform is
//! `2 * ((x >> 11) * 2^-53) - 1` for the next 64-bit output `x`. The stream is
//! consumed in ascending wave-vector order (row-major, last axis fastest, each
//! axis from `-N/2`), first all of `f`, then `g`, then `h`. `h_0` is drawn and
//! then discarded so the stream layout does not depend on the zero mode.

use num_complex::Complex64;
use rand_core::RngCore;
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::spectral::{japanese_bracket_sq, sobolev_norm, Grid, Spectrum};
use crate::state::WaveData;

/// `s_0 = max(0, d/2 - 1)`, the error-norm base regularity in dimension `d`.
pub fn base_regularity(dim: usize) -> f64 {
    (dim as f64 / 2.0 - 1.0).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoughDataSpec {
    pub grid: Grid,
    pub s2: f64,
    pub seed: u64,
}

impl RoughDataSpec {
    pub fn new(grid: Grid, s2: f64, seed: u64) -> Result<Self> {
        let s0 = base_regularity(grid.dim());
        if !(s2 > s0 && s2.is_finite()) {
            return Err(Error::ConfigInvalid(format!(
                "regularity s2 = {s2} must exceed s0 = {s0} in dimension {}",
                grid.dim()
            )));
        }
        Ok(RoughDataSpec { grid, s2, seed })
    }

    pub fn s0(&self) -> f64 {
        base_regularity(self.grid.dim())
    }

    /// `s_1 = s_2 - s_0`.
    pub fn s1(&self) -> f64 {
        self.s2 - self.s0()
    }
}

/// Uniform `[-1, 1)` stream of the data generator.
#[derive(Debug, Clone)]
pub struct UniformStream(SplitMix64);

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        UniformStream(rand_core::SeedableRng::seed_from_u64(seed))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> f64 {
        let x = self.0.next_u64();
        2.0 * ((x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) - 1.0
    }
}

fn draw_weighted(grid: Grid, stream: &mut UniformStream, exponent: f64) -> Spectrum {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    for i in grid.ascending_order() {
        let weight = japanese_bracket_sq(grid.wave_vector(i).norm_sq()).powf(exponent / 2.0);
        coeffs[i] = Complex64::new(weight * stream.next(), 0.0);
    }
    Spectrum::from_coeffs(grid, coeffs).expect("grid sized")
}

/// Coefficients of the real part: `(a_k + conj(a_{-k}))/2`.
fn real_part(s: &Spectrum) -> Spectrum {
    (s + &s.conj()).scale(Complex64::new(0.5, 0.0))
}

fn normalize(s: Spectrum, exponent: f64) -> Result<Spectrum> {
    let norm = sobolev_norm(&s, exponent);
    if !(norm >= 1e-300) {
        return Err(Error::DegenerateDraw(norm));
    }
    Ok(s.scale(Complex64::new(1.0 / norm, 0.0)))
}

/// Draws `(E_0, (z_0, z_1))` for the given spec.
pub fn random_rough_fields(spec: &RoughDataSpec) -> Result<(Spectrum, WaveData)> {
    let grid = spec.grid;
    let d = grid.dim() as f64;
    let s2 = spec.s2;
    let mut stream = UniformStream::new(spec.seed);

    let e0 = draw_weighted(grid, &mut stream, -s2 - d / 2.0 - 0.5);
    let z0 = real_part(&draw_weighted(grid, &mut stream, -s2 - d / 2.0));
    let mut z1 = draw_weighted(grid, &mut stream, -s2 - d / 2.0 + 1.0);
    z1.coeffs_mut()[0] = Complex64::new(0.0, 0.0);
    let z1 = real_part(&z1);

    let e0 = normalize(e0, s2 + 0.5)?;
    let z0 = normalize(z0, s2)?;
    let z1 = normalize(z1, s2 - 1.0)?;
    Ok((e0, WaveData::new(z0, z1)?))
}
