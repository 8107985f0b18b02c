use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Uniform tensor grid on the torus `[0, 2π)^d` with `N` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    dim: usize,
    n: usize,
}

/// Integer wave vector with components in `[-N/2, N/2 - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WaveVector {
    comps: [i64; 3],
    dim: usize,
}

impl WaveVector {
    pub fn new(comps: &[i64]) -> Self {
        assert!((1..=3).contains(&comps.len()), "wave vectors have 1 to 3 components");
        let mut k = [0; 3];
        k[..comps.len()].copy_from_slice(comps);
        WaveVector { comps: k, dim: comps.len() }
    }

    pub fn components(&self) -> &[i64] {
        &self.comps[..self.dim]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_sq(&self) -> f64 {
        self.components().iter().map(|&k| (k * k) as f64).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|&k| k == 0)
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.components().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl Grid {
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in {{1, 2, 3}}")));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("points per axis {n} must be even and >= 2")));
        }
        Ok(Grid { dim, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of grid points, `N^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Wave number stored in FFT bin `b` of one axis.
    #[inline]
    pub fn bin_to_k(&self, b: usize) -> i64 {
        let half = self.n / 2;
        if b < half {
            b as i64
        } else {
            b as i64 - self.n as i64
        }
    }

    /// FFT bin of wave number `k`, if representable on this grid.
    #[inline]
    pub fn k_to_bin(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k < -half || k >= half {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + self.n as i64) as usize)
        }
    }

    /// Splits a flat storage index into per-axis bins (row-major, last axis fastest).
    #[inline]
    pub fn bins(&self, mut idx: usize) -> [usize; 3] {
        let mut b = [0; 3];
        for axis in (0..self.dim).rev() {
            b[axis] = idx % self.n;
            idx /= self.n;
        }
        b
    }

    #[inline]
    pub fn index_from_bins(&self, bins: &[usize]) -> usize {
        bins[..self.dim].iter().fold(0, |acc, &b| acc * self.n + b)
    }

    pub fn wave_vector(&self, idx: usize) -> WaveVector {
        let b = self.bins(idx);
        let mut k = [0i64; 3];
        for axis in 0..self.dim {
            k[axis] = self.bin_to_k(b[axis]);
        }
        WaveVector { comps: k, dim: self.dim }
    }

    pub fn index_of(&self, k: &WaveVector) -> Option<usize> {
        if k.dim != self.dim {
            return None;
        }
        let mut bins = [0usize; 3];
        for (b, &c) in bins.iter_mut().zip(&k.comps[..self.dim]) {
            *b = self.k_to_bin(c)?;
        }
        Some(self.index_from_bins(&bins))
    }

    /// Storage index of `-k` taken modulo `N` per axis; the Nyquist bin maps to itself.
    #[inline]
    pub fn neg_index(&self, idx: usize) -> usize {
        let b = self.bins(idx);
        let mut nb = [0usize; 3];
        for axis in 0..self.dim {
            nb[axis] = (self.n - b[axis]) % self.n;
        }
        self.index_from_bins(&nb)
    }

    /// `|k|^2` for every storage index.
    pub fn norm_sq_table(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.wave_vector(i).norm_sq()).collect()
    }

    /// Storage indices listed in ascending wave-vector order, row-major with the
    /// last axis fastest and each axis running `-N/2 ..= N/2 - 1`.
    pub fn ascending_order(&self) -> Vec<usize> {
        let half = self.n / 2;
        (0..self.len())
            .map(|pos| {
                let b = self.bins(pos);
                let mut bins = [0usize; 3];
                for axis in 0..self.dim {
                    // position p on an axis holds k = p - N/2
                    bins[axis] = (b[axis] + half) % self.n;
                }
                self.index_from_bins(&bins)
            })
            .collect()
    }

    /// True when every wave vector of `self` is representable on `other`.
    pub fn embeds_in(&self, other: &Grid) -> bool {
        self.dim == other.dim && self.n <= other.n
    }

    /// Coordinates of grid point `idx` (row-major over `x_l = 2πl/N`, `l = 0..N`).
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let b = self.bins(idx);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = h * b[axis] as f64;
        }
        x
    }
}
