use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::grid::{Grid, WaveVector};
use crate::error::{Error, Result};

/// Fourier coefficients `c_k` of `f(x) = Σ_k c_k exp(i<k,x>)`.
///
/// Coefficients are stored in FFT bin order per axis (`0, 1, .., N/2-1, -N/2, .., -1`),
/// row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

/// Complex samples at the grid points `x_l = 2πl/N`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn zeros(grid: Grid) -> Self {
        Spectrum { grid, coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for a grid of {} modes",
                coeffs.len(),
                grid.len()
            )));
        }
        Ok(Spectrum { grid, coeffs })
    }

    /// Builds a spectrum from a function of the wave vector.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(&WaveVector) -> Complex64) -> Self {
        let coeffs = (0..grid.len()).map(|i| f(&grid.wave_vector(i))).collect();
        Spectrum { grid, coeffs }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at `k`; zero for wave vectors outside the grid.
    pub fn get(&self, k: &WaveVector) -> Complex64 {
        self.grid
            .index_of(k)
            .map(|i| self.coeffs[i])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Sets the coefficient at `k`.
    ///
    /// Panics if `k` is not representable on the grid.
    pub fn set(&mut self, k: &WaveVector, value: Complex64) {
        let i = self.grid.index_of(k).unwrap_or_else(|| panic!("wave vector {k} outside grid"));
        self.coeffs[i] = value;
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Spectrum of the complex conjugate function: `c_k -> conj(c_{-k})`, indices mod `N`.
    pub fn conj(&self) -> Spectrum {
        let coeffs = (0..self.grid.len())
            .map(|i| self.coeffs[self.grid.neg_index(i)].conj())
            .collect();
        Spectrum { grid: self.grid, coeffs }
    }

    /// Checks `c_{-k} = conj(c_k)` (indices mod `N`, so Nyquist rows must be real).
    pub fn is_real_valued(&self, tol: f64) -> bool {
        (0..self.grid.len())
            .all(|i| (self.coeffs[self.grid.neg_index(i)] - self.coeffs[i].conj()).norm() <= tol)
    }

    /// `Σ_k |c_k|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, factor: Complex64) -> Spectrum {
        self.map(|_, c| c * factor)
    }

    /// Applies `f(k, c_k)` to every coefficient.
    pub fn map(&self, mut f: impl FnMut(&WaveVector, Complex64) -> Complex64) -> Spectrum {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(&self.grid.wave_vector(i), c))
            .collect();
        Spectrum { grid: self.grid, coeffs }
    }

    /// Coefficients transferred onto `target` by wave vector: modes missing from
    /// `target` are dropped, modes missing from `self` become zero.
    pub fn resample(&self, target: Grid) -> Result<Spectrum> {
        if target.dim() != self.grid.dim() {
            return Err(Error::GridMismatch(format!(
                "cannot move a {}-d spectrum onto a {}-d grid",
                self.grid.dim(),
                target.dim()
            )));
        }
        if target == self.grid {
            return Ok(self.clone());
        }
        let mut out = Spectrum::zeros(target);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if let Some(j) = target.index_of(&self.grid.wave_vector(i)) {
                out.coeffs[j] = c;
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Spectrum, f: impl Fn(Complex64, Complex64) -> Complex64) -> Spectrum {
        assert_eq!(self.grid, other.grid, "spectra live on different grids");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect();
        Spectrum { grid: self.grid, coeffs }
    }
}

impl Add for &Spectrum {
    type Output = Spectrum;
    fn add(self, rhs: &Spectrum) -> Spectrum {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Spectrum {
    type Output = Spectrum;
    fn sub(self, rhs: &Spectrum) -> Spectrum {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<Complex64> for &Spectrum {
    type Output = Spectrum;
    fn mul(self, rhs: Complex64) -> Spectrum {
        self.scale(rhs)
    }
}

impl Field {
    pub fn zeros(grid: Grid) -> Self {
        Field { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field { grid, values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let x = grid.point(i);
                f(&x[..grid.dim()])
            })
            .collect();
        Field { grid, values }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn conj(&self) -> Field {
        Field { grid: self.grid, values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Field) -> Field {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Field { grid: self.grid, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{forward_dft, inverse_dft};

    #[test]
    fn conj_matches_pointwise_conjugation() {
        let g = Grid::new(2, 6).unwrap();
        let s = Spectrum::from_fn(g, |k| {
            let a = k.components()[0] as f64;
            let b = k.components()[1] as f64;
            Complex64::new((a * 1.3 + b).sin(), (a - 0.7 * b).cos())
        });
        let via_space = forward_dft(&inverse_dft(&s).conj());
        let d = &s.conj() - &via_space;
        assert!(d.max_abs() < 1e-14);
    }

    #[test]
    fn resample_pads_and_truncates() {
        let small = Grid::new(1, 4).unwrap();
        let big = Grid::new(1, 8).unwrap();
        let s = Spectrum::from_fn(small, |k| Complex64::new(k.components()[0] as f64, 0.0));
        let up = s.resample(big).unwrap();
        assert_eq!(up.get(&WaveVector::new(&[-2])), Complex64::new(-2.0, 0.0));
        assert_eq!(up.get(&WaveVector::new(&[3])), Complex64::new(0.0, 0.0));
        assert_eq!(up.resample(small).unwrap(), s);
        assert!(s.resample(Grid::new(2, 4).unwrap()).is_err());
    }

    #[test]
    fn real_flag_requires_real_nyquist() {
        let g = Grid::new(1, 4).unwrap();
        let mut s = Spectrum::zeros(g);
        s.set(&WaveVector::new(&[-2]), Complex64::new(0.5, 0.0));
        assert!(s.is_real_valued(1e-12));
        s.set(&WaveVector::new(&[-2]), Complex64::new(0.5, 0.1));
        assert!(!s.is_real_valued(1e-12));
    }
}
