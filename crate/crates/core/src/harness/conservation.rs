use std::io::Write;
use std::path::Path;

use super::csv_f64;
use super::fit::{linear_fit, LinearFit};
use crate::diagnostics::{mass, state_energy};
use crate::error::{Error, Result};
use crate::initial_data::{random_rough_fields, RoughDataSpec};
use crate::spectral::Grid;
use crate::splitting::{SchemeParams, Stepper, Variant};
use crate::state::ZState;

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationConfig {
    pub dim: usize,
    pub n: usize,
    pub tau: f64,
    pub s2: f64,
    pub t_final: f64,
    pub seed: u64,
    pub c: f64,
    /// Log every `stride` steps (and always the last one).
    pub stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationRow {
    pub step: usize,
    pub time: f64,
    pub mass: f64,
    pub mass_rel_drift: f64,
    pub energy: f64,
    pub energy_rel_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationResult {
    pub rows: Vec<ConservationRow>,
    pub max_mass_drift: f64,
    pub max_energy_drift: f64,
    /// Fit of the signed relative energy drift against time.
    pub energy_trend: LinearFit,
    pub cfl_satisfied: bool,
}

impl ConservationResult {
    /// Whether the fitted energy trend is within two standard errors of zero.
    pub fn trend_consistent_with_zero(&self) -> bool {
        let t = &self.energy_trend;
        if t.is_degenerate() {
            return true;
        }
        t.slope == 0.0 || t.slope.abs() < 2.0 * t.slope_stderr
    }
}

fn rel(value: f64, base: f64) -> f64 {
    if base == 0.0 {
        if value == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        (value - base) / base.abs()
    }
}

/// Evolves the filtered scheme from `initial` for `steps` steps, logging
/// mass and energy every `stride` steps.
pub fn conservation_run(initial: &ZState, params: &SchemeParams, steps: usize, stride: usize) -> Result<ConservationResult> {
    if params.variant() != Variant::Filtered {
        return Err(Error::ConfigInvalid("conservation runs use the filtered scheme".into()));
    }
    if stride == 0 {
        return Err(Error::ConfigInvalid("stride must be positive".into()));
    }
    if !params.cfl_satisfied() {
        log::warn!(
            "CFL condition violated (d N^2 tau = {} > c = {}); mass is not expected to be conserved",
            params.grid().dim() as f64 * (params.grid().n() as f64).powi(2) * params.tau(),
            params.c()
        );
    }
    let m0 = mass(initial.e());
    let en0 = state_energy(initial)?;
    let row = |step: usize, s: &ZState| -> Result<ConservationRow> {
        let m = mass(s.e());
        let en = state_energy(s)?;
        Ok(ConservationRow {
            step,
            time: step as f64 * params.tau(),
            mass: m,
            mass_rel_drift: rel(m, m0),
            energy: en,
            energy_rel_drift: rel(en, en0),
        })
    };
    let mut rows = vec![row(0, initial)?];
    let mut stepper = Stepper::new(initial, params)?;
    for step in 1..=steps {
        stepper.step();
        if step % stride == 0 || step == steps {
            if !stepper.is_finite() {
                return Err(Error::NonFiniteState { step });
            }
            rows.push(row(step, &stepper.snapshot())?);
        }
    }
    let max_mass_drift = rows.iter().map(|r| r.mass_rel_drift.abs()).fold(0.0, f64::max);
    let max_energy_drift = rows.iter().map(|r| r.energy_rel_drift.abs()).fold(0.0, f64::max);
    let times: Vec<f64> = rows.iter().map(|r| r.time).collect();
    let drifts: Vec<f64> = rows.iter().map(|r| r.energy_rel_drift).collect();
    Ok(ConservationResult {
        energy_trend: linear_fit(&times, &drifts),
        rows,
        max_mass_drift,
        max_energy_drift,
        cfl_satisfied: params.cfl_satisfied(),
    })
}

/// Rough data at regularity `s2`, evolved by the filtered scheme to `T`.
pub fn conservation_study(cfg: &ConservationConfig) -> Result<ConservationResult> {
    let grid = Grid::new(cfg.dim, cfg.n)?;
    let params = SchemeParams::new(cfg.tau, grid, cfg.c, Variant::Filtered)?;
    let steps = params.steps_to(cfg.t_final)?;
    let (e0, data) = random_rough_fields(&RoughDataSpec::new(grid, cfg.s2, cfg.seed)?)?;
    conservation_run(&ZState::from_data(e0, &data)?, &params, steps, cfg.stride)
}

pub fn write_conserve_csv<W: Write>(mut w: W, rows: &[ConservationRow]) -> Result<()> {
    writeln!(w, "step,time,mass,mass_rel_drift,energy,energy_rel_drift")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.step,
            csv_f64(r.time),
            csv_f64(r.mass),
            csv_f64(r.mass_rel_drift),
            csv_f64(r.energy),
            csv_f64(r.energy_rel_drift)
        )?;
    }
    Ok(())
}

pub fn write_summary<W: Write>(mut w: W, result: &ConservationResult) -> Result<()> {
    writeln!(w, "max_mass_rel_drift = {}", csv_f64(result.max_mass_drift))?;
    writeln!(w, "max_energy_rel_drift = {}", csv_f64(result.max_energy_drift))?;
    writeln!(w, "energy_trend_slope = {}", csv_f64(result.energy_trend.slope))?;
    writeln!(w, "energy_trend_stderr = {}", csv_f64(result.energy_trend.slope_stderr))?;
    writeln!(w, "trend_consistent_with_zero = {}", result.trend_consistent_with_zero())?;
    writeln!(w, "cfl_satisfied = {}", result.cfl_satisfied)?;
    Ok(())
}

pub fn conservation_plot_script(csv_file: &str) -> String {
    format!(
        "# gnuplot script: relative mass and energy drift\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'time'\n\
         set ylabel 'relative drift'\n\
         set terminal pngcairo size 900,650\n\
         set output 'fig_conservation.png'\n\
         plot '{csv_file}' using 2:(abs($4)) with lines title 'mass', \\\n     \
         '{csv_file}' using 2:(abs($6)) with lines title 'energy'\n"
    )
}

/// Writes `conserve.csv`, `conserve_summary.txt` and `fig_conservation.plot` into `dir`.
pub fn write_outputs(dir: &Path, result: &ConservationResult) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_conserve_csv(std::fs::File::create(dir.join("conserve.csv"))?, &result.rows)?;
    write_summary(std::fs::File::create(dir.join("conserve_summary.txt"))?, result)?;
    std::fs::write(dir.join("fig_conservation.plot"), conservation_plot_script("conserve.csv"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_logs_exact_zeros() {
        let grid = Grid::new(1, 16).unwrap();
        let params = SchemeParams::new(2f64.powi(-10), grid, 1.0, Variant::Filtered).unwrap();
        let r = conservation_run(&ZState::zeros(grid), &params, 20, 5).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert!(r.rows.iter().all(|x| x.mass == 0.0 && x.mass_rel_drift == 0.0 && x.energy_rel_drift == 0.0));
        assert!(r.trend_consistent_with_zero());
    }

    #[test]
    fn short_rough_run_conserves_mass() {
        let cfg = ConservationConfig {
            dim: 1,
            n: 32,
            tau: 2f64.powi(-10),
            s2: 0.5,
            t_final: 2f64.powi(-3),
            seed: 7,
            c: 1.0,
            stride: 16,
        };
        let r = conservation_study(&cfg).unwrap();
        assert!(r.cfl_satisfied);
        assert_eq!(r.rows.last().unwrap().step, 128);
        assert!(r.max_mass_drift < 1e-12, "{}", r.max_mass_drift);
        assert!(r.max_energy_drift < 5e-2);
        let mut out = Vec::new();
        write_conserve_csv(&mut out, &r.rows).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("step,time,mass,mass_rel_drift,energy,energy_rel_drift\n"));
    }

    #[test]
    fn stride_zero_rejected() {
        let grid = Grid::new(1, 8).unwrap();
        let params = SchemeParams::new(0.01, grid, 1.0, Variant::Filtered).unwrap();
        assert!(conservation_run(&ZState::zeros(grid), &params, 1, 0).is_err());
    }
}
