use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use super::csv_f64;
use crate::bourgain::{
    embedding_ratio, estimate_spaces, multilinear_ratio, BourgainFlavor, Estimate, MultilinearParams, TimeSeq,
};
use crate::error::{Error, Result};
use crate::initial_data::UniformStream;
use crate::spectral::{japanese_bracket_sq, sobolev_norm, Grid, Spectrum};

/// Multilinear ratio sweep over random pairs at `levels` dyadic resolutions.
///
/// Level `l` uses `M = m·2^l` time steps of size `τ/2^l` on an `N·2^l` grid,
/// so every level covers the same time window `Mτ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BourgainSweepConfig {
    pub dim: usize,
    pub trials: usize,
    pub m: usize,
    pub n: usize,
    pub tau: f64,
    pub levels: usize,
    pub estimates: Vec<Estimate>,
    pub s0: f64,
    pub s2: f64,
    pub b: f64,
    pub c: f64,
    pub seed: u64,
    /// Relative amplitude of the iid perturbation added to each free flight.
    pub noise: f64,
}

impl Default for BourgainSweepConfig {
    fn default() -> Self {
        BourgainSweepConfig {
            dim: 1,
            trials: 50,
            m: 16,
            n: 16,
            tau: 1.0 / 16.0,
            levels: 2,
            estimates: Estimate::ALL.to_vec(),
            s0: 0.0,
            s2: 0.5,
            b: 0.45,
            c: 1.0,
            seed: 1,
            noise: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub trial: usize,
    pub estimate: Estimate,
    pub m: usize,
    pub n: usize,
    pub tau: f64,
    pub ratio: f64,
}

/// Largest ratio per estimate and resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub estimate: Estimate,
    pub m: usize,
    pub n: usize,
    pub tau: f64,
    pub max_ratio: f64,
    /// `max_ratio` over the previous level's, `NaN` on the coarsest level.
    pub growth: f64,
}

/// Per-trial seed derived from the user seed with the SplitMix64 finalizer.
fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(seed, |h, &p| {
        let mut z = h ^ p.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    })
}

/// Random coefficients decaying like `<k>^{-s-d/2-1/2}`.
fn rough_spectrum(grid: Grid, s: f64, stream: &mut UniformStream) -> Spectrum {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let exponent = -s - grid.dim() as f64 / 2.0 - 0.5;
    for i in grid.ascending_order() {
        let w = japanese_bracket_sq(grid.wave_vector(i).norm_sq()).powf(exponent / 2.0);
        coeffs[i] = Complex64::new(w * stream.next(), w * stream.next());
    }
    Spectrum::from_coeffs(grid, coeffs).expect("grid sized")
}

/// Free flight of the given flavor through random data of regularity `s`,
/// plus iid noise of relative size `noise` in every entry.
pub fn random_free_flight(
    grid: Grid,
    tau: f64,
    m: usize,
    flavor: BourgainFlavor,
    s: f64,
    noise: f64,
    seed: u64,
) -> Result<TimeSeq> {
    let mut stream = UniformStream::new(seed);
    let base = rough_spectrum(grid, s, &mut stream);
    let scale = sobolev_norm(&base, s);
    let entries = (0..m)
        .map(|n| {
            let t = n as f64 * tau;
            let flight = base.map(|k, c| {
                let phase = match flavor {
                    BourgainFlavor::Schrodinger => -k.norm_sq() * t,
                    BourgainFlavor::Wave => k.norm() * t,
                };
                c * Complex64::from_polar(1.0, phase)
            });
            if noise == 0.0 {
                return flight;
            }
            let pert = rough_spectrum(grid, s, &mut stream);
            let amp = noise * scale / sobolev_norm(&pert, s).max(1e-300);
            &flight + &pert.scale(Complex64::new(amp, 0.0))
        })
        .collect();
    TimeSeq::new(tau, entries)
}

impl BourgainSweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.levels == 0 || self.m == 0 || self.estimates.is_empty() {
            return Err(Error::ConfigInvalid("trials, levels, M and estimates must be nonempty".into()));
        }
        for l in 0..self.levels {
            let (_, _, tau) = self.level(l);
            Grid::new(self.dim, self.n << l)?;
            self.params(l).validate(tau)?;
        }
        Ok(())
    }

    /// `(M, N, τ)` at level `l`.
    pub fn level(&self, l: usize) -> (usize, usize, f64) {
        (self.m << l, self.n << l, self.tau / (1u64 << l) as f64)
    }

    pub fn params(&self, l: usize) -> MultilinearParams {
        let (_, n, tau) = self.level(l);
        let theta = tau.max(self.c / (self.dim as f64 * (n as f64).powi(2)));
        MultilinearParams { s0: self.s0, s2: self.s2, b: self.b, theta, c: self.c }
    }
}

/// Ratios of every estimate for every trial at every level, plus per-level maxima.
pub fn bourgain_sweep(cfg: &BourgainSweepConfig) -> Result<(Vec<SweepRecord>, Vec<SweepSummary>)> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize, Estimate)> = (0..cfg.levels)
        .flat_map(|l| cfg.estimates.iter().flat_map(move |&e| (0..cfg.trials).map(move |t| (l, t, e))))
        .collect();
    let records: Vec<SweepRecord> = jobs
        .par_iter()
        .map(|&(l, trial, est)| {
            let (m, n, tau) = cfg.level(l);
            let grid = Grid::new(cfg.dim, n)?;
            let params = cfg.params(l);
            let (_, vs, ws, _) = estimate_spaces(est, &params);
            let key = |side| mix_seed(cfg.seed, &[l as u64, trial as u64, est as u64, side]);
            let v = random_free_flight(grid, tau, m, vs.flavor, vs.s, cfg.noise, key(0))?;
            let w = random_free_flight(grid, tau, m, ws.flavor, ws.s, cfg.noise, key(1))?;
            let ratio = multilinear_ratio(&v, &w, est, &params)?;
            Ok(SweepRecord { trial, estimate: est, m, n, tau, ratio })
        })
        .collect::<Result<_>>()?;
    let mut summary = Vec::new();
    for &est in &cfg.estimates {
        let mut prev = f64::NAN;
        for l in 0..cfg.levels {
            let (m, n, tau) = cfg.level(l);
            let max_ratio = records
                .iter()
                .filter(|r| r.estimate == est && r.m == m)
                .map(|r| r.ratio)
                .fold(0.0, f64::max);
            summary.push(SweepSummary { estimate: est, m, n, tau, max_ratio, growth: max_ratio / prev });
            prev = max_ratio;
        }
    }
    Ok((records, summary))
}

/// Largest `τ^{1/2}·sup/norm` over `trials` random Schrödinger sequences of
/// length `m` on an `n` grid, a proxy for the embedding constant.
pub fn embedding_sweep(trials: usize, m: usize, n: usize, tau: f64, s: f64, b: f64, seed: u64) -> Result<f64> {
    let grid = Grid::new(1, n)?;
    let ratios: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seq = random_free_flight(grid, tau, m, BourgainFlavor::Schrodinger, s, 1.0, mix_seed(seed, &[t as u64, m as u64]))?;
            embedding_ratio(&seq, s, b, BourgainFlavor::Schrodinger)
        })
        .collect::<Result<_>>()?;
    Ok(ratios.into_iter().fold(0.0, f64::max) * tau.sqrt())
}

pub fn write_sweep_csv<W: Write>(mut w: W, records: &[SweepRecord]) -> Result<()> {
    writeln!(w, "trial,estimate_id,M,N,tau,ratio")?;
    for r in records {
        writeln!(w, "{},{},{},{},{},{}", r.trial, r.estimate.label(), r.m, r.n, csv_f64(r.tau), csv_f64(r.ratio))?;
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(mut w: W, summary: &[SweepSummary]) -> Result<()> {
    writeln!(w, "estimate_id,M,N,tau,max_ratio,growth")?;
    for s in summary {
        writeln!(w, "{},{},{},{},{},{}", s.estimate.label(), s.m, s.n, csv_f64(s.tau), csv_f64(s.max_ratio), csv_f64(s.growth))?;
    }
    Ok(())
}

/// Writes `bourgain.csv` and `bourgain_summary.csv` into `dir`.
pub fn write_outputs(dir: &Path, records: &[SweepRecord], summary: &[SweepSummary]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_sweep_csv(std::fs::File::create(dir.join("bourgain.csv"))?, records)?;
    write_summary_csv(std::fs::File::create(dir.join("bourgain_summary.csv"))?, summary)?;
    Ok(())
}
