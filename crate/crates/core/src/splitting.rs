//! Lie splitting for the first-order Zakharov system
//!
//! ```text
//! i E_t = -ΔE + (u + ū)E/2
//! i u_t = -|∇|u - |∇|(E Ē)
//! ```
//!
//! Each step composes the exact nonlinear subflow with the exact linear flow
//! `(exp(iτΔ), exp(iτ|∇|))`. The filtered variant additionally passes every
//! input through `Π_θ`, evaluates products on the grid, interpolates back with
//! the DFT and projects again, in exactly that order.
//!
//! The phase `exp(-iτ(Π_θu + Π_θū)/2)` is evaluated from the real part of the
//! grid values, so the pointwise factor is unimodular by construction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    cutoff_mask, forward_dft, fractional_gradient, inverse_dft, DftPlan, DftScratch, Field, Grid,
    Spectrum,
};
use crate::state::ZState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Filtered,
    Unfiltered,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "filtered" => Ok(Variant::Filtered),
            "unfiltered" => Ok(Variant::Unfiltered),
            other => Err(Error::ConfigInvalid(format!("unknown scheme variant `{other}`"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Filtered => "filtered",
            Variant::Unfiltered => "unfiltered",
        })
    }
}

/// Default cutoff constant `c` of the CFL condition and the projector.
pub const DEFAULT_C: f64 = 1.0;

/// Step size, grid and cutoff settings of one scheme instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    tau: f64,
    grid: Grid,
    c: f64,
    theta: f64,
    variant: Variant,
    cfl_satisfied: bool,
}

impl SchemeParams {
    pub fn new(tau: f64, grid: Grid, c: f64, variant: Variant) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::ConfigInvalid(format!("time step τ = {tau} must be positive")));
        }
        if !(c > 0.0 && c < 2.0 * PI) {
            return Err(Error::InvalidCutoff(c));
        }
        let d = grid.dim() as f64;
        let n2 = (grid.n() * grid.n()) as f64;
        let theta = tau.max(c / (d * n2));
        let cfl_satisfied = d * n2 * tau <= c;
        Ok(SchemeParams { tau, grid, c, theta, variant, cfl_satisfied })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `θ = max(τ, c d^{-1} N^{-2})`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `d N^2 τ <= c`.
    pub fn cfl_satisfied(&self) -> bool {
        self.cfl_satisfied
    }

    /// Number of steps to reach `t_final`, if `τ` divides it to `1e-12` relative.
    pub fn steps_to(&self, t_final: f64) -> Result<usize> {
        let steps = (t_final / self.tau).round();
        if t_final < 0.0 || ((steps * self.tau - t_final).abs() > 1e-12 * t_final.abs().max(self.tau))
        {
            return Err(Error::ConfigInvalid(format!(
                "τ = {} does not divide T = {t_final}",
                self.tau
            )));
        }
        Ok(steps as usize)
    }
}

/// Exact flow of `G_t = -i(w + w̄)G/2`, `w_t = i|∇|(G Ḡ)` for time `t`.
///
/// Returns `(exp(-it Re w_0) G_0, w_0 + it|∇|(G_0 Ḡ_0))` with the products
/// taken on the grid and interpolated back by the DFT.
pub fn nonlinear_subflow(g0: &Spectrum, w0: &Spectrum, t: f64) -> (Spectrum, Spectrum) {
    assert_eq!(g0.grid(), w0.grid(), "subflow inputs on different grids");
    let grid = g0.grid();
    let g_grid = inverse_dft(g0);
    let w_grid = inverse_dft(w0);
    let rotated: Vec<Complex64> = g_grid
        .values()
        .iter()
        .zip(w_grid.values())
        .map(|(g, w)| g * Complex64::from_polar(1.0, -t * w.re))
        .collect();
    let g_t = forward_dft(&Field::from_values(grid, rotated).expect("grid sized"));

    let density: Vec<Complex64> =
        g_grid.values().iter().map(|g| Complex64::new(g.norm_sqr(), 0.0)).collect();
    let density = forward_dft(&Field::from_values(grid, density).expect("grid sized"));
    let kick = fractional_gradient(&density, 1.0)
        .expect("positive power is total")
        .scale(Complex64::new(0.0, t));
    (g_t, w0 + &kick)
}

/// One step of the unfiltered Lie scheme.
pub fn lie_step_unfiltered(state: &ZState, params: &SchemeParams) -> Result<ZState> {
    if params.variant() != Variant::Unfiltered {
        return Err(Error::ConfigInvalid("lie_step_unfiltered needs the unfiltered variant".into()));
    }
    let mut stepper = Stepper::new(state, params)?;
    stepper.step_unfiltered();
    Ok(stepper.snapshot())
}

/// One step of the filtered Lie scheme.
pub fn lie_step_filtered(state: &ZState, params: &SchemeParams) -> Result<ZState> {
    if params.variant() != Variant::Filtered {
        return Err(Error::ConfigInvalid("lie_step_filtered needs the filtered variant".into()));
    }
    let mut stepper = Stepper::new(state, params)?;
    stepper.step_filtered();
    Ok(stepper.snapshot())
}

/// Advances `state` by `n_steps` steps of the selected scheme.
///
/// `observer(step, state)` is called for the initial state and after every
/// `every`-th step (never when `every == 0`).
pub fn evolve(
    state: &ZState,
    params: &SchemeParams,
    n_steps: usize,
    every: usize,
    mut observer: impl FnMut(usize, &ZState),
) -> Result<ZState> {
    let mut stepper = Stepper::new(state, params)?;
    if every > 0 {
        observer(0, state);
    }
    for step in 1..=n_steps {
        stepper.step();
        if !stepper.is_finite() {
            return Err(Error::NonFiniteState { step });
        }
        if every > 0 && step % every == 0 {
            observer(step, &stepper.snapshot());
        }
    }
    Ok(stepper.snapshot())
}

/// Step map with precomputed multipliers and reusable buffers.
pub struct Stepper {
    params: SchemeParams,
    plan: DftPlan,
    scratch: DftScratch,
    e: Vec<Complex64>,
    u: Vec<Complex64>,
    schrodinger: Vec<Complex64>,
    wave: Vec<Complex64>,
    gradient: Vec<f64>,
    mask: Vec<bool>,
    neg: Vec<usize>,
    buf_a: Vec<Complex64>,
    buf_e: Vec<Complex64>,
    buf_b: Vec<Complex64>,
    buf_pu: Vec<Complex64>,
}

impl Stepper {
    pub fn new(state: &ZState, params: &SchemeParams) -> Result<Self> {
        let grid = params.grid();
        if state.grid() != grid {
            return Err(Error::GridMismatch(format!(
                "state on {:?}, scheme on {:?}",
                state.grid(),
                grid
            )));
        }
        let tau = params.tau();
        let norm_sq = grid.norm_sq_table();
        let schrodinger = norm_sq.iter().map(|&k2| Complex64::from_polar(1.0, -tau * k2)).collect();
        let wave = norm_sq.iter().map(|&k2| Complex64::from_polar(1.0, tau * k2.sqrt())).collect();
        let gradient = norm_sq.iter().map(|&k2| k2.sqrt()).collect();
        let mask = cutoff_mask(grid, params.theta(), params.c())?;
        let neg = (0..grid.len()).map(|i| grid.neg_index(i)).collect();
        let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
        Ok(Stepper {
            params: *params,
            plan: DftPlan::new(grid),
            scratch: DftScratch::default(),
            e: state.e().coeffs().to_vec(),
            u: state.u().coeffs().to_vec(),
            schrodinger,
            wave,
            gradient,
            mask,
            neg,
            buf_a: zero.clone(),
            buf_e: zero.clone(),
            buf_b: zero.clone(),
            buf_pu: zero,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn step(&mut self) {
        match self.params.variant() {
            Variant::Filtered => self.step_filtered(),
            Variant::Unfiltered => self.step_unfiltered(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().chain(&self.u).all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn snapshot(&self) -> ZState {
        let grid = self.params.grid();
        ZState::new(
            Spectrum::from_coeffs(grid, self.e.clone()).expect("grid sized"),
            Spectrum::from_coeffs(grid, self.u.clone()).expect("grid sized"),
        )
        .expect("shared grid")
    }

    /// Grid buffer to interpolation coefficients (`N^{-d}`-normalized forward DFT).
    fn interpolate(&mut self, which: Buf) {
        let scale = 1.0 / self.params.grid().len() as f64;
        let buf = match which {
            Buf::A => &mut self.buf_a,
            Buf::B => &mut self.buf_b,
        };
        self.plan.forward(buf, &mut self.scratch);
        buf.iter_mut().for_each(|c| *c *= scale);
    }

    pub fn step_filtered(&mut self) {
        let half_tau = 0.5 * self.params.tau();
        let tau = self.params.tau();
        let zero = Complex64::new(0.0, 0.0);

        // Π u, and Π u + Π ū on the grid
        for i in 0..self.u.len() {
            if self.mask[i] {
                self.buf_pu[i] = self.u[i];
                self.buf_a[i] = self.u[i] + self.u[self.neg[i]].conj();
            } else {
                self.buf_pu[i] = zero;
                self.buf_a[i] = zero;
            }
        }
        self.plan.inverse(&mut self.buf_a, &mut self.scratch);

        // Π E and Π Ē on the grid
        for i in 0..self.e.len() {
            if self.mask[i] {
                self.buf_e[i] = self.e[i];
                self.buf_b[i] = self.e[self.neg[i]].conj();
            } else {
                self.buf_e[i] = zero;
                self.buf_b[i] = zero;
            }
        }
        self.plan.inverse(&mut self.buf_e, &mut self.scratch);
        self.plan.inverse(&mut self.buf_b, &mut self.scratch);

        for l in 0..self.buf_a.len() {
            let phase = Complex64::from_polar(1.0, -half_tau * self.buf_a[l].re);
            let eg = self.buf_e[l];
            self.buf_a[l] = phase * eg;
            self.buf_b[l] *= eg;
        }

        // E_{n+1} = exp(iτΔ) Π T_N(phase · Π E)
        self.interpolate(Buf::A);
        for i in 0..self.e.len() {
            self.e[i] = if self.mask[i] { self.schrodinger[i] * self.buf_a[i] } else { zero };
        }

        // u_{n+1} = exp(iτ|∇|)(iτ|∇| Π T_N(Π E · Π Ē) + Π u)
        self.interpolate(Buf::B);
        for i in 0..self.u.len() {
            let kick = if self.mask[i] {
                Complex64::new(0.0, tau * self.gradient[i]) * self.buf_b[i]
            } else {
                zero
            };
            self.u[i] = self.wave[i] * (kick + self.buf_pu[i]);
        }
    }

    pub fn step_unfiltered(&mut self) {
        let tau = self.params.tau();

        self.buf_a.copy_from_slice(&self.u);
        self.plan.inverse(&mut self.buf_a, &mut self.scratch);
        self.buf_e.copy_from_slice(&self.e);
        self.plan.inverse(&mut self.buf_e, &mut self.scratch);

        for l in 0..self.buf_a.len() {
            let eg = self.buf_e[l];
            let phase = Complex64::from_polar(1.0, -tau * self.buf_a[l].re);
            self.buf_a[l] = phase * eg;
            self.buf_b[l] = Complex64::new(eg.norm_sqr(), 0.0);
        }

        self.interpolate(Buf::A);
        for i in 0..self.e.len() {
            self.e[i] = self.schrodinger[i] * self.buf_a[i];
        }
        self.interpolate(Buf::B);
        for i in 0..self.u.len() {
            let kick = Complex64::new(0.0, tau * self.gradient[i]) * self.buf_b[i];
            self.u[i] = self.wave[i] * (self.u[i] + kick);
        }
    }
}

#[derive(Clone, Copy)]
enum Buf {
    A,
    B,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::WaveVector;

    fn grid1(n: usize) -> Grid {
        Grid::new(1, n).unwrap()
    }

    #[test]
    fn theta_and_cfl() {
        let g = grid1(16);
        let p = SchemeParams::new(1.0 / 256.0, g, 1.0, Variant::Filtered).unwrap();
        assert!(p.cfl_satisfied());
        assert_eq!(p.theta(), 1.0 / 256.0);
        let p = SchemeParams::new(1.0 / 1024.0, g, 1.0, Variant::Filtered).unwrap();
        assert_eq!(p.theta(), 1.0 / 256.0);
        let p = SchemeParams::new(1.0 / 64.0, g, 1.0, Variant::Filtered).unwrap();
        assert!(!p.cfl_satisfied());
        assert_eq!(p.theta(), 1.0 / 64.0);
        assert!(SchemeParams::new(0.0, g, 1.0, Variant::Filtered).is_err());
        assert!(SchemeParams::new(0.1, g, 7.0, Variant::Filtered).is_err());
    }

    #[test]
    fn steps_to_requires_divisibility() {
        let p = SchemeParams::new(0.25, grid1(4), 1.0, Variant::Filtered).unwrap();
        assert_eq!(p.steps_to(1.0).unwrap(), 4);
        assert!(p.steps_to(1.1).is_err());
    }

    #[test]
    fn zero_state_is_fixed() {
        let g = grid1(8);
        let z = ZState::zeros(g);
        for v in [Variant::Filtered, Variant::Unfiltered] {
            let p = SchemeParams::new(0.01, g, 1.0, v).unwrap();
            let next = match v {
                Variant::Filtered => lie_step_filtered(&z, &p).unwrap(),
                Variant::Unfiltered => lie_step_unfiltered(&z, &p).unwrap(),
            };
            assert_eq!(next, z);
        }
    }

    #[test]
    fn plane_wave_only_rotates() {
        let g = grid1(16);
        let k = WaveVector::new(&[3]);
        let mut e = Spectrum::zeros(g);
        e.set(&k, Complex64::new(0.7, 0.0));
        let state = ZState::new(e.clone(), Spectrum::zeros(g)).unwrap();
        let tau = 0.01;
        let p = SchemeParams::new(tau, g, 1.0, Variant::Unfiltered).unwrap();
        let next = lie_step_unfiltered(&state, &p).unwrap();
        let want = e.scale(Complex64::from_polar(1.0, -9.0 * tau));
        assert!((next.e() - &want).max_abs() < 1e-15);
        assert!(next.u().max_abs() < 1e-15);
    }

    #[test]
    fn variant_mismatch_is_rejected() {
        let g = grid1(8);
        let p = SchemeParams::new(0.01, g, 1.0, Variant::Filtered).unwrap();
        assert!(lie_step_unfiltered(&ZState::zeros(g), &p).is_err());
    }

    #[test]
    fn zero_data_subflow() {
        let g = grid1(8);
        let mut w = Spectrum::zeros(g);
        w.set(&WaveVector::new(&[2]), Complex64::new(0.3, -0.1));
        let (gt, wt) = nonlinear_subflow(&Spectrum::zeros(g), &w, 5.0);
        assert!(gt.max_abs() == 0.0);
        assert_eq!(wt, w);
    }

    #[test]
    fn evolve_zero_steps_and_composition() {
        let g = grid1(8);
        let e = Spectrum::from_fn(g, |k| Complex64::new(1.0 / (1.0 + k.norm_sq()), 0.1));
        let u = Spectrum::from_fn(g, |k| Complex64::new(0.2 / (1.0 + k.norm_sq()), 0.0));
        let s = ZState::new(e, u).unwrap();
        let p = SchemeParams::new(1.0 / 128.0, g, 1.0, Variant::Filtered).unwrap();
        assert_eq!(evolve(&s, &p, 0, 0, |_, _| {}).unwrap(), s);
        let once = evolve(&s, &p, 6, 0, |_, _| {}).unwrap();
        let twice = evolve(&evolve(&s, &p, 3, 0, |_, _| {}).unwrap(), &p, 3, 0, |_, _| {}).unwrap();
        assert_eq!(once, twice);
        let mut seen = Vec::new();
        evolve(&s, &p, 6, 2, |i, _| seen.push(i)).unwrap();
        assert_eq!(seen, vec![0, 2, 4, 6]);
    }

    #[test]
    fn non_finite_reports_step() {
        let g = grid1(8);
        let mut e = Spectrum::zeros(g);
        e.set(&WaveVector::new(&[1]), Complex64::new(f64::NAN, 0.0));
        let s = ZState::new(e, Spectrum::zeros(g)).unwrap();
        let p = SchemeParams::new(0.01, g, 1.0, Variant::Unfiltered).unwrap();
        assert!(matches!(evolve(&s, &p, 5, 0, |_, _| {}), Err(Error::NonFiniteState { step: 1 })));
    }
}
