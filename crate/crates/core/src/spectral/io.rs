//! Spectrum serialization.
//!
//! Binary layout (all little-endian):
//!
//! | bytes    | content                                   |
//! |----------|-------------------------------------------|
//! | 0..4     | `dim` as `u32`                            |
//! | 4..8     | `N` as `u32`                              |
//! | 8..      | `N^d` pairs `(re: f64, im: f64)`          |
//!
//! Coefficients are written in ascending wave-vector order, row-major with the
//! last axis fastest and every axis running `-N/2 ..= N/2 - 1`.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::grid::Grid;
use super::spectrum::Spectrum;
use crate::error::{Error, Result};

pub const SPECTRUM_HEADER_LEN: usize = 8;

pub fn write_spectrum<W: Write>(mut w: W, spectrum: &Spectrum) -> Result<()> {
    let grid = spectrum.grid();
    w.write_all(&(grid.dim() as u32).to_le_bytes())?;
    w.write_all(&(grid.n() as u32).to_le_bytes())?;
    let coeffs = spectrum.coeffs();
    for i in grid.ascending_order() {
        w.write_all(&coeffs[i].re.to_le_bytes())?;
        w.write_all(&coeffs[i].im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_spectrum<R: Read>(mut r: R) -> Result<Spectrum> {
    let mut word = [0u8; 4];
    r.read_exact(&mut word)?;
    let dim = u32::from_le_bytes(word) as usize;
    r.read_exact(&mut word)?;
    let n = u32::from_le_bytes(word) as usize;
    let grid = Grid::new(dim, n).map_err(|e| Error::Format(format!("bad spectrum header: {e}")))?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut buf = [0u8; 16];
    for i in grid.ascending_order() {
        r.read_exact(&mut buf)?;
        let re = f64::from_le_bytes(buf[..8].try_into().unwrap());
        let im = f64::from_le_bytes(buf[8..].try_into().unwrap());
        coeffs[i] = Complex64::new(re, im);
    }
    Spectrum::from_coeffs(grid, coeffs)
}

pub fn spectrum_to_bytes(spectrum: &Spectrum) -> Vec<u8> {
    let mut out = Vec::with_capacity(SPECTRUM_HEADER_LEN + 16 * spectrum.grid().len());
    write_spectrum(&mut out, spectrum).expect("writing to a Vec cannot fail");
    out
}

pub fn spectrum_from_bytes(bytes: &[u8]) -> Result<Spectrum> {
    read_spectrum(bytes)
}

/// Debug dump: one row per mode with the wave-vector components, then `re, im`.
pub fn write_spectrum_csv<W: Write>(mut w: W, spectrum: &Spectrum) -> Result<()> {
    let grid = spectrum.grid();
    let axes = ["k1", "k2", "k3"];
    writeln!(w, "{},re,im", axes[..grid.dim()].join(","))?;
    for i in grid.ascending_order() {
        let k = grid.wave_vector(i);
        let c = spectrum.coeffs()[i];
        let ks: Vec<String> = k.components().iter().map(|v| v.to_string()).collect();
        writeln!(w, "{},{:e},{:e}", ks.join(","), c.re, c.im)?;
    }
    Ok(())
}
