use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::fit::{loglog_fit, pairwise_orders, LinearFit};
use super::{csv_f64, round_even};
use crate::diagnostics::error_triple;
use crate::error::{Error, Result};
use crate::initial_data::{base_regularity, random_rough_fields, RoughDataSpec};
use crate::spectral::Grid;
use crate::splitting::{evolve, SchemeParams, Variant};
use crate::state::ZState;

/// Setup of a convergence study; see [`convergence_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceConfig {
    pub dim: usize,
    pub s1_list: Vec<f64>,
    pub tau_list: Vec<f64>,
    /// `N = round_even(kappa τ^{-1/2})`.
    pub kappa: f64,
    /// Overrides the coupling with one grid size for every τ.
    pub n_fixed: Option<usize>,
    pub n_ref: usize,
    pub tau_ref: f64,
    pub seed: u64,
    pub c: f64,
    pub variant: Variant,
    pub t_final: f64,
}

/// Coupling constant between `N` and `τ^{-1/2}` used in each dimension.
pub fn default_kappa(dim: usize) -> f64 {
    if dim == 1 {
        2.0
    } else {
        std::f64::consts::SQRT_2
    }
}

impl ConvergenceConfig {
    /// Grid size paired with `tau`.
    pub fn n_for(&self, tau: f64) -> usize {
        self.n_fixed.unwrap_or_else(|| round_even(self.kappa * tau.powf(-0.5)))
    }

    pub fn s0(&self) -> f64 {
        base_regularity(self.dim)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigInvalid(m));
        if !(1..=3).contains(&self.dim) {
            return bad(format!("dimension {} not in 1..=3", self.dim));
        }
        if self.s1_list.is_empty() || self.tau_list.is_empty() {
            return bad("s1 and tau lists must be nonempty".into());
        }
        if self.s1_list.iter().any(|&s| !(s > 0.0)) {
            return bad("every s1 must be positive".into());
        }
        let tau_min = self.tau_list.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(tau_min > 0.0) {
            return bad("time steps must be positive".into());
        }
        if self.tau_ref > tau_min / 16.0 {
            return bad(format!("tau_ref = {} must be at most min(tau)/16 = {}", self.tau_ref, tau_min / 16.0));
        }
        let n_max = self.tau_list.iter().map(|&t| self.n_for(t)).max().unwrap_or(0);
        if self.n_ref < n_max {
            return bad(format!("n_ref = {} below the largest coupled N = {n_max}", self.n_ref));
        }
        Grid::new(self.dim, self.n_ref)?;
        for &tau in self.tau_list.iter().chain(std::iter::once(&self.tau_ref)) {
            SchemeParams::new(tau, Grid::new(self.dim, 2)?, self.c, self.variant)?.steps_to(self.t_final)?;
        }
        Ok(())
    }
}

/// Error of one `(s1, τ, N)` trajectory at the final time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    pub s1: f64,
    pub tau: f64,
    pub n: usize,
    pub e_e: f64,
    pub e_z: f64,
    pub e_zt: f64,
    pub total: f64,
    pub wall_time_seconds: f64,
    /// Step at which the trajectory produced NaN/Inf, if it did.
    pub blow_up_step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderFit {
    pub s1: f64,
    pub fit: LinearFit,
    pub pairwise: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceResult {
    pub records: Vec<ConvergenceRecord>,
    pub orders: Vec<OrderFit>,
}

impl ConvergenceResult {
    pub fn order_for(&self, s1: f64) -> Option<&OrderFit> {
        self.orders.iter().find(|o| o.s1 == s1)
    }

    pub fn any_blow_up(&self) -> bool {
        self.records.iter().any(|r| r.blow_up_step.is_some())
    }
}

fn run(state: &ZState, params: &SchemeParams, t_final: f64) -> Result<ZState> {
    evolve(state, params, params.steps_to(t_final)?, 0, |_, _| {})
}

/// Builds the initial state on the reference grid for regularity `s2 = s0 + s1`.
pub fn reference_initial_state(cfg: &ConvergenceConfig, s1: f64) -> Result<ZState> {
    let grid = Grid::new(cfg.dim, cfg.n_ref)?;
    let spec = RoughDataSpec::new(grid, cfg.s0() + s1, cfg.seed)?;
    let (e0, data) = random_rough_fields(&spec)?;
    ZState::from_data(e0, &data)
}

/// Error record of `numerical` against `reference`.
pub fn evaluate(s1: f64, tau: f64, numerical: &ZState, reference: &ZState, s0: f64, wall: f64) -> Result<ConvergenceRecord> {
    let err = error_triple(numerical, reference, s0)?;
    Ok(ConvergenceRecord {
        s1,
        tau,
        n: numerical.grid().n(),
        e_e: err.e_e,
        e_z: err.e_z,
        e_zt: err.e_zt,
        total: err.total,
        wall_time_seconds: wall,
        blow_up_step: None,
    })
}

/// Errors at `T` for every `(s1, τ)` pair against a fine reference run of the filtered scheme.
///
/// One data draw per `s1` (same seed for the whole curve) is made on the
/// reference grid; coarser runs start from its restriction to their grid.
pub fn convergence_study(cfg: &ConvergenceConfig) -> Result<ConvergenceResult> {
    cfg.validate()?;
    let s0 = cfg.s0();
    let ref_grid = Grid::new(cfg.dim, cfg.n_ref)?;
    let ref_params = SchemeParams::new(cfg.tau_ref, ref_grid, cfg.c, Variant::Filtered)?;

    let references: Vec<(ZState, ZState)> = cfg
        .s1_list
        .par_iter()
        .map(|&s1| {
            let initial = reference_initial_state(cfg, s1)?;
            log::info!("reference run s1 = {s1}: N = {}, τ = {}", cfg.n_ref, cfg.tau_ref);
            let fin = run(&initial, &ref_params, cfg.t_final).map_err(|e| Error::ReferenceUnresolved(Box::new(e)))?;
            Ok((initial, fin))
        })
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, f64)> = (0..cfg.s1_list.len())
        .flat_map(|i| cfg.tau_list.iter().map(move |&t| (i, t)))
        .collect();
    let records: Vec<ConvergenceRecord> = jobs
        .par_iter()
        .map(|&(i, tau)| {
            let s1 = cfg.s1_list[i];
            let (initial, reference) = &references[i];
            let grid = Grid::new(cfg.dim, cfg.n_for(tau))?;
            let params = SchemeParams::new(tau, grid, cfg.c, cfg.variant)?;
            let start = initial.resample(grid)?;
            let clock = Instant::now();
            match run(&start, &params, cfg.t_final) {
                Ok(fin) => evaluate(s1, tau, &fin, reference, s0, clock.elapsed().as_secs_f64()),
                Err(Error::NonFiniteState { step }) => Ok(ConvergenceRecord {
                    s1,
                    tau,
                    n: grid.n(),
                    e_e: f64::NAN,
                    e_z: f64::NAN,
                    e_zt: f64::NAN,
                    total: f64::NAN,
                    wall_time_seconds: clock.elapsed().as_secs_f64(),
                    blow_up_step: Some(step),
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;

    let orders = fit_orders(&cfg.s1_list, &records);
    Ok(ConvergenceResult { records, orders })
}

/// Least-squares order per `s1` over every record of that curve.
pub fn fit_orders(s1_list: &[f64], records: &[ConvergenceRecord]) -> Vec<OrderFit> {
    s1_list
        .iter()
        .map(|&s1| {
            let curve: Vec<&ConvergenceRecord> = records.iter().filter(|r| r.s1 == s1).collect();
            let taus: Vec<f64> = curve.iter().map(|r| r.tau).collect();
            let errs: Vec<f64> = curve.iter().map(|r| r.total).collect();
            OrderFit { s1, fit: loglog_fit(&taus, &errs), pairwise: pairwise_orders(&taus, &errs) }
        })
        .collect()
}

pub fn write_records_csv<W: Write>(mut w: W, records: &[ConvergenceRecord]) -> Result<()> {
    writeln!(w, "s1,tau,N,e_E,e_z,e_zt,total,wall_time_s")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            csv_f64(r.s1),
            csv_f64(r.tau),
            r.n,
            csv_f64(r.e_e),
            csv_f64(r.e_z),
            csv_f64(r.e_zt),
            csv_f64(r.total),
            csv_f64(r.wall_time_seconds)
        )?;
    }
    Ok(())
}

pub fn write_orders_csv<W: Write>(mut w: W, orders: &[OrderFit]) -> Result<()> {
    writeln!(w, "s1,slope,intercept,r2")?;
    for o in orders {
        writeln!(w, "{},{},{},{}", csv_f64(o.s1), csv_f64(o.fit.slope), csv_f64(o.fit.intercept), csv_f64(o.fit.r2))?;
    }
    Ok(())
}

pub fn write_pairwise_csv<W: Write>(mut w: W, cfg: &ConvergenceConfig, orders: &[OrderFit]) -> Result<()> {
    writeln!(w, "s1,tau_coarse,tau_fine,order")?;
    for o in orders {
        for (pair, order) in cfg.tau_list.windows(2).zip(&o.pairwise) {
            writeln!(w, "{},{},{},{}", csv_f64(o.s1), csv_f64(pair[0]), csv_f64(pair[1]), csv_f64(*order))?;
        }
    }
    Ok(())
}

/// Gnuplot script drawing `total` against `τ` per `s1` with `τ^{s1/2}` guides.
pub fn convergence_plot_script(cfg: &ConvergenceConfig, records_file: &str) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script: error at T against tau\n");
    s.push_str("set datafile separator ','\nset logscale xy\nset key left top\n");
    s.push_str("set xlabel 'tau'\nset ylabel 'error'\n");
    s.push_str("set terminal pngcairo size 900,650\nset output 'fig_convergence.png'\n");
    let mut parts = Vec::new();
    for &s1 in &cfg.s1_list {
        parts.push(format!(
            "'{records_file}' using ($1=={s1} ? $2 : 1/0):7 with linespoints title 's1 = {s1}'"
        ));
        let order = (s1.min(2.0)) / 2.0;
        parts.push(format!("x**{order} with lines dashtype 2 title 'tau^{{{order}}}'"));
    }
    s.push_str("plot ");
    s.push_str(&parts.join(", \\\n     "));
    s.push('\n');
    s
}

/// Writes `records.csv`, `orders.csv`, `pairwise_orders.csv` and `fig_convergence.plot` into `dir`.
pub fn write_outputs(dir: &Path, cfg: &ConvergenceConfig, result: &ConvergenceResult) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_records_csv(std::fs::File::create(dir.join("records.csv"))?, &result.records)?;
    write_orders_csv(std::fs::File::create(dir.join("orders.csv"))?, &result.orders)?;
    write_pairwise_csv(std::fs::File::create(dir.join("pairwise_orders.csv"))?, cfg, &result.orders)?;
    std::fs::write(dir.join("fig_convergence.plot"), convergence_plot_script(cfg, "records.csv"))?;
    Ok(())
}
