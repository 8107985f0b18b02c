//! Multidimensional DFT on the tensor grid, built from 1D `rustfft` plans
//! applied axis by axis.
//!
//! Forward transforms use the kernel `exp(-2πi <l,k>/N)` and are unnormalized;
//! [`forward_dft`] applies the `N^{-d}` factor so that spectra hold the
//! coefficients `c_k` of `f(x) = Σ_k c_k exp(i<k,x>)`.

use std::sync::{Arc, LazyLock, Mutex};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;
use super::spectrum::{Field, Spectrum};

static PLANNER: LazyLock<Mutex<FftPlanner<f64>>> = LazyLock::new(|| Mutex::new(FftPlanner::new()));

/// Cached forward/inverse plans for one grid.
#[derive(Clone)]
pub struct DftPlan {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DftPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DftPlan").field("grid", &self.grid).finish()
    }
}

/// Reusable buffers for [`DftPlan`] transforms.
#[derive(Debug, Default, Clone)]
pub struct DftScratch {
    lines: Vec<Complex64>,
    fft: Vec<Complex64>,
}

impl DftPlan {
    pub fn new(grid: Grid) -> Self {
        let mut planner = PLANNER.lock().unwrap_or_else(|e| e.into_inner());
        let forward = planner.plan_fft_forward(grid.n());
        let inverse = planner.plan_fft_inverse(grid.n());
        DftPlan { grid, forward, inverse }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Raw forward transform `F_N` in place (no normalization).
    pub fn forward(&self, data: &mut [Complex64], scratch: &mut DftScratch) {
        self.transform(&*self.forward, data, scratch);
    }

    /// Raw inverse transform in place: `u_l = Σ_k c_k exp(2πi <l,k>/N)`.
    pub fn inverse(&self, data: &mut [Complex64], scratch: &mut DftScratch) {
        self.transform(&*self.inverse, data, scratch);
    }

    fn transform(&self, fft: &dyn Fft<f64>, data: &mut [Complex64], scratch: &mut DftScratch) {
        let n = self.grid.n();
        let dim = self.grid.dim();
        assert_eq!(data.len(), self.grid.len(), "buffer does not match grid");
        let need = fft.get_inplace_scratch_len();
        if scratch.fft.len() < need {
            scratch.fft.resize(need, Complex64::new(0.0, 0.0));
        }

        // last axis: lines are contiguous
        fft.process_with_scratch(data, &mut scratch.fft[..need]);

        for axis in (0..dim.saturating_sub(1)).rev() {
            let stride = n.pow((dim - 1 - axis) as u32);
            let block = stride * n;
            scratch.lines.resize(block, Complex64::new(0.0, 0.0));
            for chunk in data.chunks_exact_mut(block) {
                for t in 0..n {
                    let row = &chunk[t * stride..(t + 1) * stride];
                    for (i, &v) in row.iter().enumerate() {
                        scratch.lines[i * n + t] = v;
                    }
                }
                fft.process_with_scratch(&mut scratch.lines, &mut scratch.fft[..need]);
                for t in 0..n {
                    let row = &mut chunk[t * stride..(t + 1) * stride];
                    for (i, v) in row.iter_mut().enumerate() {
                        *v = scratch.lines[i * n + t];
                    }
                }
            }
        }
    }
}

/// Trigonometric interpolation coefficients of grid samples: `c_k = N^{-d} F_N(u)(k)`.
pub fn forward_dft(field: &Field) -> Spectrum {
    let grid = field.grid();
    let plan = DftPlan::new(grid);
    let mut data = field.values().to_vec();
    plan.forward(&mut data, &mut DftScratch::default());
    let scale = 1.0 / grid.len() as f64;
    data.iter_mut().for_each(|c| *c *= scale);
    Spectrum::from_coeffs(grid, data).expect("length matches grid")
}

/// Samples of `Σ_k c_k exp(i<k,x>)` at the grid points.
pub fn inverse_dft(spectrum: &Spectrum) -> Field {
    let grid = spectrum.grid();
    let plan = DftPlan::new(grid);
    let mut data = spectrum.coeffs().to_vec();
    plan.inverse(&mut data, &mut DftScratch::default());
    Field::from_values(grid, data).expect("length matches grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::WaveVector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_field_has_only_mean() {
        let g = Grid::new(1, 4).unwrap();
        let f = Field::from_values(g, vec![c(1.0, 0.0); 4]).unwrap();
        let s = forward_dft(&f);
        assert!((s.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(s.coeffs()[1..].iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn single_mode_samples() {
        let g = Grid::new(1, 4).unwrap();
        let mut s = Spectrum::zeros(g);
        s.set(&WaveVector::new(&[1]), c(1.0, 0.0));
        let f = inverse_dft(&s);
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (got, want) in f.values().iter().zip(want) {
            assert!((got - want).norm() < 1e-15);
        }
        let back = forward_dft(&f);
        assert!((back.get(&WaveVector::new(&[1])) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn only_mean_gives_constant() {
        let g = Grid::new(2, 4).unwrap();
        let mut s = Spectrum::zeros(g);
        s.set(&WaveVector::new(&[0, 0]), c(1.0, 0.0));
        let f = inverse_dft(&s);
        assert!(f.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
    }
}
