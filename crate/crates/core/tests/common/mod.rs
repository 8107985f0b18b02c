//! Independent reference implementations used by the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use zakharov::initial_data::UniformStream;
use zakharov::spectral::{Field, Grid, Spectrum, WaveVector};

pub type C64 = Complex64;

/// `c_k = N^{-d} Σ_j f(x_j) e^{-i<k, x_j>}` by direct summation.
pub fn naive_forward(field: &Field) -> Vec<C64> {
    let grid = field.grid();
    let scale = 1.0 / grid.len() as f64;
    let roots = unit_roots(grid.n());
    (0..grid.len())
        .map(|ki| {
            let k = grid.wave_vector(ki);
            let terms = field.values().iter().enumerate().map(|(xi, &f)| f * roots[exponent(grid, &k, xi, -1)]);
            compensated_sum(terms) * scale
        })
        .collect()
}

/// `f(x_j) = Σ_k c_k e^{i<k, x_j>}` by direct summation.
pub fn naive_inverse(spectrum: &Spectrum) -> Vec<C64> {
    let grid = spectrum.grid();
    let roots = unit_roots(grid.n());
    (0..grid.len())
        .map(|xi| {
            let terms = spectrum
                .coeffs()
                .iter()
                .enumerate()
                .map(|(ki, &c)| c * roots[exponent(grid, &grid.wave_vector(ki), xi, 1)]);
            compensated_sum(terms)
        })
        .collect()
}

/// `e^{2πi m/N}` for `m = 0..N`.
fn unit_roots(n: usize) -> Vec<C64> {
    (0..n).map(|m| C64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)).collect()
}

/// `sign Σ k_a j_a mod N`, so that `e^{sign i<k, x_j>}` is `unit_roots[..]` of it.
fn exponent(grid: Grid, k: &WaveVector, point: usize, sign: i64) -> usize {
    let j = grid.bins(point);
    let dot: i64 = k.components().iter().zip(j).map(|(&k, j)| k * j as i64).sum();
    (sign * dot).rem_euclid(grid.n() as i64) as usize
}

/// Neumaier summation of each component.
fn compensated_sum(terms: impl Iterator<Item = C64>) -> C64 {
    let (mut sum, mut comp) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for t in terms {
        for (s, c, x) in [(&mut sum.re, &mut comp.re, t.re), (&mut sum.im, &mut comp.im, t.im)] {
            let next = *s + x;
            *c += if s.abs() >= x.abs() { (*s - next) + x } else { (x - next) + *s };
            *s = next;
        }
    }
    sum + comp
}

pub fn random_field(grid: Grid, stream: &mut UniformStream) -> Field {
    Field::from_fn(grid, |_| C64::new(stream.next(), stream.next()))
}

pub fn random_spectrum(grid: Grid, stream: &mut UniformStream) -> Spectrum {
    Spectrum::from_fn(grid, |_| C64::new(stream.next(), stream.next()))
}

pub fn bracket(y2: f64) -> f64 {
    (1.0 + y2).sqrt()
}

/// Discrete Bourgain norm by direct time summation, gauge-removed form:
/// `(1/(Mτ)) Σ_k Σ_j <k>^{2s} <d_τ(σ_j)>^{2b} |τ Σ_n e^{inτω(k)} v_n(k) e^{-inτσ_j}|^2`.
pub fn direct_bourgain_norm(entries: &[Spectrum], tau: f64, s: f64, b: f64, schrodinger: bool) -> f64 {
    let m = entries.len();
    let grid = entries[0].grid();
    let mut total = 0.0;
    for ki in 0..grid.len() {
        let k = grid.wave_vector(ki);
        let omega = if schrodinger { k.norm_sq() } else { -k.norm() };
        for j in 0..m {
            let jj = if 2 * j > m { j as f64 - m as f64 } else { j as f64 };
            let sigma = 2.0 * PI * jj / (m as f64 * tau);
            let mut acc = C64::new(0.0, 0.0);
            for (n, v) in entries.iter().enumerate() {
                let t = n as f64 * tau;
                acc += v.coeffs()[ki] * C64::from_polar(tau, t * omega - t * sigma);
            }
            let d = (C64::from_polar(1.0, tau * sigma) - 1.0) / tau;
            let weight = bracket(k.norm_sq()).powf(2.0 * s) * bracket(d.norm_sqr()).powf(2.0 * b);
            total += weight * acc.norm_sqr();
        }
    }
    (total / (m as f64 * tau)).sqrt()
}

/// `(τ Σ_n ||v_n||_{H^s}^2)^{1/2}` by direct summation.
pub fn l2_sobolev(entries: &[Spectrum], tau: f64, s: f64) -> f64 {
    let mut total = 0.0;
    for v in entries {
        let grid = v.grid();
        for (i, c) in v.coeffs().iter().enumerate() {
            total += bracket(grid.wave_vector(i).norm_sq()).powf(2.0 * s) * c.norm_sqr();
        }
    }
    (tau * total).sqrt()
}
