//! Discrete Bourgain norms of finite space-time sequences.
//!
//! A sequence `v_0, .., v_{M-1}` with step `τ` is extended `M`-periodically in
//! time. The time transform is sampled at `σ_j = 2πj/(Mτ)` with `j` running
//! over one period `(-π/τ, π/τ]`, and the `L^2_σ` integral becomes the
//! corresponding Riemann sum, scaled so that `b = 0` gives
//! `(τ Σ_n ||v_n||_{H^s}^2)^{1/2}` exactly.
//!
//! Two formulations are available. [`Formulation::GaugeRemoved`] (the default)
//! removes the free flow, `g_n = exp(-inτA) v_n`, and weights the transform of
//! `g` by `<d_τ(σ_j)>^b`; this is the transform of `v` evaluated on the grid
//! `σ_j ∓ ω(k)` shifted per mode. [`Formulation::Transform`] weights the
//! transform of `v` itself on the fixed grid by `<d_τ(σ_j ± ω(k))>^b`. The
//! two agree for `b = 0` and are equivalent up to constants otherwise.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::spectral::{
    cutoff_mask, japanese_bracket_sq, DftPlan, DftScratch, Grid, Spectrum,
};

/// Time step and entries of a space-time sequence on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeq {
    tau: f64,
    entries: Vec<Spectrum>,
}

impl TimeSeq {
    pub fn new(tau: f64, entries: Vec<Spectrum>) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::ConfigInvalid(format!("time step τ = {tau} must be positive")));
        }
        let Some(first) = entries.first() else {
            return Err(Error::ConfigInvalid("a time sequence needs at least one entry".into()));
        };
        let grid = first.grid();
        if entries.iter().any(|e| e.grid() != grid) {
            return Err(Error::GridMismatch("sequence entries on different grids".into()));
        }
        Ok(TimeSeq { tau, entries })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn grid(&self) -> Grid {
        self.entries[0].grid()
    }

    pub fn entries(&self) -> &[Spectrum] {
        &self.entries
    }

    pub fn scale(&self, factor: Complex64) -> TimeSeq {
        TimeSeq { tau: self.tau, entries: self.entries.iter().map(|e| e.scale(factor)).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BourgainFlavor {
    /// `X_1`: weight `<d_τ(σ + |k|^2)>`.
    Schrodinger,
    /// `X_2`: weight `<d_τ(σ - |k|)>`.
    Wave,
}

impl BourgainFlavor {
    /// Shift `ω(k)` with the weight evaluated at `σ + ω(k)`.
    fn shift(self, norm_sq: f64) -> f64 {
        match self {
            BourgainFlavor::Schrodinger => norm_sq,
            BourgainFlavor::Wave => -norm_sq.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Formulation {
    #[default]
    GaugeRemoved,
    Transform,
}

/// `d_τ(σ) = (exp(iτσ) - 1)/τ`.
pub fn d_tau_symbol(sigma: f64, tau: f64) -> Complex64 {
    (Complex64::from_polar(1.0, tau * sigma) - 1.0) / tau
}

/// Representative of DFT bin `j` in `(-M/2, M/2]`.
fn centered_bin(j: usize, m: usize) -> f64 {
    if 2 * j > m {
        j as f64 - m as f64
    } else {
        j as f64
    }
}

pub fn discrete_bourgain_norm(seq: &TimeSeq, s: f64, b: f64, flavor: BourgainFlavor) -> f64 {
    discrete_bourgain_norm_with(seq, s, b, flavor, Formulation::GaugeRemoved)
}

pub fn discrete_bourgain_norm_with(
    seq: &TimeSeq,
    s: f64,
    b: f64,
    flavor: BourgainFlavor,
    formulation: Formulation,
) -> f64 {
    let grid = seq.grid();
    let m = seq.len();
    let tau = seq.tau();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(m);
    let mut line = vec![Complex64::new(0.0, 0.0); m];
    let sigma: Vec<f64> = (0..m).map(|j| 2.0 * PI * centered_bin(j, m) / (m as f64 * tau)).collect();

    let mut total = 0.0;
    for idx in 0..grid.len() {
        let k2 = grid.wave_vector(idx).norm_sq();
        let omega = flavor.shift(k2);
        for (n, slot) in line.iter_mut().enumerate() {
            let c = seq.entries[n].coeffs()[idx];
            *slot = match formulation {
                // exp(-inτA) has symbol exp(inτ ω(k))
                Formulation::GaugeRemoved => c * Complex64::from_polar(1.0, n as f64 * tau * omega),
                Formulation::Transform => c,
            };
        }
        if line.iter().all(|c| c.norm_sqr() == 0.0) {
            continue;
        }
        fft.process(&mut line);
        let space = japanese_bracket_sq(k2).powf(s);
        let mut acc = 0.0;
        for (j, g) in line.iter().enumerate() {
            let at = match formulation {
                Formulation::GaugeRemoved => sigma[j],
                Formulation::Transform => sigma[j] + omega,
            };
            let modulation = japanese_bracket_sq(d_tau_symbol(at, tau).norm_sqr()).powf(b);
            acc += modulation * g.norm_sqr();
        }
        total += space * acc;
    }
    (tau / m as f64 * total).sqrt()
}

/// `max_n ||v_n||_{H^s} / ||v||_{X^{s,b}}`, requiring `b > 1/2`.
pub fn embedding_ratio(seq: &TimeSeq, s: f64, b: f64, flavor: BourgainFlavor) -> Result<f64> {
    if b <= 0.5 {
        return Err(Error::InvalidExponents(format!("embedding needs b > 1/2, got {b}")));
    }
    let denom = discrete_bourgain_norm(seq, s, b, flavor);
    if !(denom >= 1e-300) {
        return Err(Error::ZeroSequence);
    }
    let sup = seq
        .entries()
        .iter()
        .map(|v| crate::spectral::sobolev_norm(v, s))
        .fold(0.0, f64::max);
    Ok(sup / denom)
}

/// The five bilinear estimates of the Schrödinger-wave coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimate {
    M1,
    M2,
    M3,
    M4,
    M5,
}

impl Estimate {
    pub const ALL: [Estimate; 5] = [Estimate::M1, Estimate::M3, Estimate::M4, Estimate::M2, Estimate::M5];

    pub fn label(self) -> &'static str {
        match self {
            Estimate::M1 => "M1",
            Estimate::M2 => "M2",
            Estimate::M3 => "M3",
            Estimate::M4 => "M4",
            Estimate::M5 => "M5",
        }
    }
}

impl std::str::FromStr for Estimate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(Estimate::M1),
            "M2" => Ok(Estimate::M2),
            "M3" => Ok(Estimate::M3),
            "M4" => Ok(Estimate::M4),
            "M5" => Ok(Estimate::M5),
            other => Err(Error::ConfigInvalid(format!("unknown estimate `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultilinearParams {
    pub s0: f64,
    pub s2: f64,
    pub b: f64,
    pub theta: f64,
    pub c: f64,
}

impl MultilinearParams {
    pub fn validate(&self, tau: f64) -> Result<()> {
        let lower = (3.0f64 / 8.0).max(0.5 - 0.5 * (self.s2 - self.s0));
        if !(self.s2 > self.s0) {
            return Err(Error::InvalidExponents(format!("need s2 > s0, got s2 = {}, s0 = {}", self.s2, self.s0)));
        }
        if !(self.b > lower && self.b < 0.5) {
            return Err(Error::InvalidExponents(format!(
                "b = {} outside ({lower}, 1/2)",
                self.b
            )));
        }
        if !(self.theta >= tau) {
            return Err(Error::InvalidExponents(format!("θ = {} below τ = {tau}", self.theta)));
        }
        Ok(())
    }
}

/// Space and flavor of one side of an estimate.
#[derive(Debug, Clone, Copy)]
pub struct NormSpec {
    pub flavor: BourgainFlavor,
    pub s: f64,
    pub b: f64,
}

/// Norms on both sides of an estimate: `(lhs, v, w)` and whether the products
/// conjugate `w` (`v w̄ + v̄ w`) instead of `v` only (`v w + v̄ w`).
pub fn estimate_spaces(est: Estimate, p: &MultilinearParams) -> (NormSpec, NormSpec, NormSpec, bool) {
    use BourgainFlavor::{Schrodinger as X1, Wave as X2};
    let (s0, s2, b) = (p.s0, p.s2, p.b);
    let n = |flavor, s, b| NormSpec { flavor, s, b };
    match est {
        Estimate::M1 => (n(X1, s2 + 0.5, -b), n(X2, s2, b), n(X1, s2 + 0.5, b), false),
        Estimate::M3 => (n(X1, s0 + 0.5, -b), n(X2, s0, b), n(X1, s2 + 0.5, b), false),
        Estimate::M4 => (n(X1, s0 + 0.5, -b), n(X2, s2, b), n(X1, s0 + 0.5, b), false),
        Estimate::M2 => (n(X2, s2 + 1.0, -b), n(X1, s2 + 0.5, b), n(X1, s2 + 0.5, b), true),
        Estimate::M5 => (n(X2, s0 + 1.0, -b), n(X1, s2 + 0.5, b), n(X1, s0 + 0.5, b), true),
    }
}

/// Stepwise grid products `T_N(Π a_n · Π b_n)` with the conjugations selected.
pub fn projected_products(
    v: &TimeSeq,
    w: &TimeSeq,
    conj_v: bool,
    conj_w: bool,
    theta: f64,
    c: f64,
) -> Result<TimeSeq> {
    let grid = v.grid();
    if w.grid() != grid || w.len() != v.len() || w.tau() != v.tau() {
        return Err(Error::GridMismatch("sequences differ in grid, length or step".into()));
    }
    let mask = cutoff_mask(grid, theta, c)?;
    let plan = DftPlan::new(grid);
    let mut scratch = DftScratch::default();
    let scale = 1.0 / grid.len() as f64;
    let project = |s: &Spectrum, conj: bool| -> Vec<Complex64> {
        let src = if conj { s.conj() } else { s.clone() };
        src.coeffs()
            .iter()
            .zip(&mask)
            .map(|(&c, &keep)| if keep { c } else { Complex64::new(0.0, 0.0) })
            .collect()
    };
    let mut out = Vec::with_capacity(v.len());
    for (vn, wn) in v.entries().iter().zip(w.entries()) {
        let mut a = project(vn, conj_v);
        let mut b = project(wn, conj_w);
        plan.inverse(&mut a, &mut scratch);
        plan.inverse(&mut b, &mut scratch);
        a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y);
        plan.forward(&mut a, &mut scratch);
        a.iter_mut().for_each(|x| *x *= scale);
        out.push(Spectrum::from_coeffs(grid, a)?);
    }
    TimeSeq::new(v.tau(), out)
}

/// Left side over right side of one bilinear estimate; `0/0` is reported as 0.
pub fn multilinear_ratio(v: &TimeSeq, w: &TimeSeq, est: Estimate, params: &MultilinearParams) -> Result<f64> {
    params.validate(v.tau())?;
    let (lhs, vs, ws, conj_w) = estimate_spaces(est, params);
    let (first, second) = if conj_w {
        (
            projected_products(v, w, false, true, params.theta, params.c)?,
            projected_products(v, w, true, false, params.theta, params.c)?,
        )
    } else {
        (
            projected_products(v, w, false, false, params.theta, params.c)?,
            projected_products(v, w, true, false, params.theta, params.c)?,
        )
    };
    let left = discrete_bourgain_norm(&first, lhs.s, lhs.b, lhs.flavor)
        + discrete_bourgain_norm(&second, lhs.s, lhs.b, lhs.flavor);
    let right = discrete_bourgain_norm(v, vs.s, vs.b, vs.flavor) * discrete_bourgain_norm(w, ws.s, ws.b, ws.flavor);
    if left == 0.0 {
        return Ok(0.0);
    }
    if right == 0.0 {
        return Err(Error::ZeroSequence);
    }
    Ok(left / right)
}
