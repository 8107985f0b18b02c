//! `zs`: command-line driver for the Zakharov splitting experiments.
//!
//! Subcommands write their CSV tables and gnuplot scripts into `--out`.
//! Exit status is 0 on success, 2 for usage and configuration errors, 3 for
//! numerical failures (blow-up, unresolved reference, degenerate data) and 1
//! for I/O problems.

pub mod config;
pub mod parse;

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use zakharov::bourgain::Estimate;
use zakharov::diagnostics::{mass, state_energy};
use zakharov::harness::bourgain_check::{self, BourgainSweepConfig};
use zakharov::harness::conservation::{self, ConservationConfig};
use zakharov::harness::convergence::{self, ConvergenceConfig};
use zakharov::harness::{default_kappa, init_thread_pool};
use zakharov::initial_data::{random_rough_fields, RoughDataSpec};
use zakharov::spectral::io::{read_spectrum, write_spectrum, write_spectrum_csv};
use zakharov::spectral::Grid;
use zakharov::splitting::{evolve, SchemeParams, Variant};
use zakharov::state::{Checkpoint, WaveData, ZState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zs", version, about = "Filtered Lie splitting for the Zakharov system: experiments and diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve one trajectory and log mass and energy.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Error against a fine reference for a sweep of time steps.
    #[command(args_override_self = true)]
    Converge(ConvergeArgs),
    /// Long filtered run logging relative mass and energy drift.
    #[command(args_override_self = true)]
    Conserve(ConserveArgs),
    /// Random sweep of the discrete bilinear estimates.
    #[command(args_override_self = true, name = "bourgain-check")]
    BourgainCheck(BourgainArgs),
    /// Write seeded rough initial data as spectrum files.
    #[command(args_override_self = true, name = "gen-data")]
    GenData(GenDataArgs),
}

fn real(s: &str) -> Result<f64, String> {
    parse::parse_real(s)
}

/// Parsed real list; a newtype so clap treats the whole list as one value.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

fn real_list(s: &str) -> Result<RealList, String> {
    parse::parse_real_list(s).map(RealList)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, value_parser = real, default_value = "2^-10")]
    pub tau: f64,
    #[arg(long = "T", value_parser = real, default_value = "1")]
    pub t_final: f64,
    #[arg(long, value_parser = real, default_value = "0.5")]
    pub s2: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = real, default_value = "1")]
    pub c: f64,
    #[arg(long, default_value_t = Variant::Filtered)]
    pub variant: Variant,
    /// Log every this many steps.
    #[arg(long, default_value_t = 16)]
    pub every: usize,
    /// Initial E as a spectrum file (with --z0 and --z1) instead of random data.
    #[arg(long, requires_all = ["z0", "z1"])]
    pub e0: Option<PathBuf>,
    #[arg(long, requires = "e0")]
    pub z0: Option<PathBuf>,
    #[arg(long, requires = "e0")]
    pub z1: Option<PathBuf>,
    /// Resume from a checkpoint; its grid, step, τ, c and variant take precedence.
    #[arg(long, conflicts_with = "e0")]
    pub resume: Option<PathBuf>,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, value_parser = real_list, default_value = "0.5,1,2")]
    pub s1: RealList,
    #[arg(long, value_parser = real_list, default_value = "2^-8..2^-12")]
    pub tau: RealList,
    #[arg(long = "T", value_parser = real, default_value = "1")]
    pub t_final: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Coupling constant of `N = round_even(kappa τ^{-1/2})` [default: 2 in 1d, √2 otherwise].
    #[arg(long, value_parser = real)]
    pub kappa: Option<f64>,
    /// Fixed grid size for every τ instead of the coupling.
    #[arg(long)]
    pub n: Option<usize>,
    /// Reference grid size [default: power of two ≥ 8 × the largest N].
    #[arg(long)]
    pub n_ref: Option<usize>,
    /// Reference step [default: min τ / 64 in 1d, / 16 otherwise].
    #[arg(long, value_parser = real)]
    pub tau_ref: Option<f64>,
    #[arg(long, value_parser = real, default_value = "1")]
    pub c: f64,
    #[arg(long, default_value_t = Variant::Filtered)]
    pub variant: Variant,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConserveArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, value_parser = real, default_value = "2^-12")]
    pub tau: f64,
    #[arg(long, value_parser = real, default_value = "0.5")]
    pub s2: f64,
    #[arg(long = "T", value_parser = real, default_value = "100")]
    pub t_final: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_parser = real, default_value = "1")]
    pub c: f64,
    /// Log every this many steps.
    #[arg(long, default_value_t = 256)]
    pub stride: usize,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BourgainArgs {
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Number of time steps at the coarsest level.
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, value_parser = real, default_value = "2^-4")]
    pub tau: f64,
    /// Resolutions `(M 2^l, N 2^l, τ 2^-l)` for `l < levels`.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    #[arg(long, value_delimiter = ',', default_value = "M1,M3,M4,M2,M5")]
    pub estimates: Vec<Estimate>,
    #[arg(long, value_parser = real, default_value = "0")]
    pub s0: f64,
    #[arg(long, value_parser = real, default_value = "0.5")]
    pub s2: f64,
    #[arg(long, value_parser = real, default_value = "0.45")]
    pub b: f64,
    #[arg(long, value_parser = real, default_value = "1")]
    pub c: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_parser = real, default_value = "0.1")]
    pub noise: f64,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DataFormat {
    Bin,
    Csv,
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, value_parser = real, default_value = "0.5")]
    pub s2: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DataFormat::Bin)]
    pub format: DataFormat,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

/// Failure of a subcommand with its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<zakharov::Error> for CliError {
    fn from(e: zakharov::Error) -> Self {
        let code = match &e {
            e if e.is_numerical() => EXIT_NUMERICAL,
            zakharov::Error::Io(_) => EXIT_IO,
            _ => EXIT_CONFIG,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EXIT_IO, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name) and runs the subcommand; returns the exit status.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = match config::expand_config(argv.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_CONFIG;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Some(n) = init_thread_pool() {
        log::info!("using {n} worker threads");
    }
    match dispatch(cli.command) {
        Ok(summary) => {
            print!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<String> {
    match cmd {
        Command::Simulate(a) => simulate(&a),
        Command::Converge(a) => converge(&a),
        Command::Conserve(a) => conserve(&a),
        Command::BourgainCheck(a) => bourgain(&a),
        Command::GenData(a) => gen_data(&a),
    }
}

fn create(dir: &Path, name: &str) -> CliResult<BufWriter<File>> {
    std::fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn open(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError { code: EXIT_IO, message: format!("{}: {e}", path.display()) })
}

fn simulate(a: &SimulateArgs) -> CliResult<String> {
    let (initial, params, first_step) = if let Some(path) = &a.resume {
        let ck = Checkpoint::read(open(path)?)?;
        let params = SchemeParams::new(ck.tau, ck.state.grid(), ck.c, ck.variant)?;
        (ck.state, params, ck.step)
    } else {
        let grid = Grid::new(a.dim, a.n)?;
        let params = SchemeParams::new(a.tau, grid, a.c, a.variant)?;
        let state = match (&a.e0, &a.z0, &a.z1) {
            (Some(e0), Some(z0), Some(z1)) => {
                let e = read_spectrum(open(e0)?)?;
                let data = WaveData::new(read_spectrum(open(z0)?)?, read_spectrum(open(z1)?)?)?;
                ZState::from_data(e, &data)?.resample(grid)?
            }
            _ => {
                let (e, data) = random_rough_fields(&RoughDataSpec::new(grid, a.s2, a.seed)?)?;
                ZState::from_data(e, &data)?
            }
        };
        (state, params, 0)
    };
    if !params.cfl_satisfied() {
        log::warn!("CFL condition d N^2 τ ≤ c is violated");
    }
    let steps = params.steps_to(a.t_final)?;
    let every = a.every.max(1);
    let mut rows = Vec::new();
    let mut energy_error = None;
    let fin = evolve(&initial, &params, steps, every, |n, s| {
        let e = state_energy(s).unwrap_or_else(|err| {
            energy_error.get_or_insert(err.to_string());
            f64::NAN
        });
        rows.push((first_step + n as u64, mass(s.e()), e));
    })?;
    if rows.last().map(|r| r.0) != Some(first_step + steps as u64) {
        rows.push((first_step + steps as u64, mass(fin.e()), state_energy(&fin)?));
    }
    if let Some(msg) = energy_error {
        log::warn!("energy unavailable: {msg}");
    }

    let mut w = create(&a.out, "trajectory.csv")?;
    use std::io::Write;
    writeln!(w, "step,time,mass,energy")?;
    for (step, m, e) in &rows {
        writeln!(w, "{step},{:e},{m:e},{e:e}", *step as f64 * params.tau())?;
    }
    w.flush()?;
    let last = first_step + steps as u64;
    let ck = Checkpoint { state: fin, step: last, tau: params.tau(), c: params.c(), variant: params.variant() };
    let mut ckw = create(&a.out, "final.zsck")?;
    ck.write(&mut ckw)?;
    ckw.flush()?;
    std::fs::write(
        a.out.join("fig_simulate.plot"),
        "# gnuplot script: mass and energy along the trajectory\n\
         set datafile separator ','\nset xlabel 'time'\n\
         set terminal pngcairo size 900,650\nset output 'fig_simulate.png'\n\
         plot 'trajectory.csv' using 2:3 with lines title 'mass', \\\n     \
         'trajectory.csv' using 2:4 with lines title 'energy'\n",
    )?;
    let (m0, e0) = (rows[0].1, rows[0].2);
    let (m1, e1) = (rows[rows.len() - 1].1, rows[rows.len() - 1].2);
    Ok(format!(
        "steps {first_step}..{last}, τ = {:e}, N = {}, θ = {:e}, CFL {}\nmass {m0:e} -> {m1:e}\nenergy {e0:e} -> {e1:e}\n",
        params.tau(),
        params.grid().n(),
        params.theta(),
        params.cfl_satisfied()
    ))
}

fn converge_config(a: &ConvergeArgs) -> ConvergenceConfig {
    let kappa = a.kappa.unwrap_or_else(|| default_kappa(a.dim));
    let mut cfg = ConvergenceConfig {
        dim: a.dim,
        s1_list: a.s1.0.clone(),
        tau_list: a.tau.0.clone(),
        kappa,
        n_fixed: a.n,
        n_ref: 0,
        tau_ref: 0.0,
        seed: a.seed,
        c: a.c,
        variant: a.variant,
        t_final: a.t_final,
    };
    let tau_min = a.tau.0.iter().cloned().fold(f64::INFINITY, f64::min);
    let n_max = a.tau.0.iter().map(|&t| cfg.n_for(t)).max().unwrap_or(4);
    cfg.n_ref = a.n_ref.unwrap_or_else(|| (8 * n_max).next_power_of_two());
    cfg.tau_ref = a.tau_ref.unwrap_or(if a.dim == 1 { tau_min / 64.0 } else { tau_min / 16.0 });
    cfg
}

fn converge(a: &ConvergeArgs) -> CliResult<String> {
    let cfg = converge_config(a);
    let result = convergence::convergence_study(&cfg)?;
    convergence::write_outputs(&a.out, &cfg, &result)?;
    let mut s = format!("reference N = {}, τ = {}\n", cfg.n_ref, cfg.tau_ref);
    for o in &result.orders {
        let _ = writeln!(s, "s1 = {}: order {:.4} (r2 {:.4})", o.s1, o.fit.slope, o.fit.r2);
    }
    for r in result.records.iter().filter(|r| r.blow_up_step.is_some()) {
        let _ = writeln!(s, "s1 = {}, τ = {}: non-finite at step {}", r.s1, r.tau, r.blow_up_step.unwrap_or(0));
    }
    Ok(s)
}

fn conserve(a: &ConserveArgs) -> CliResult<String> {
    let cfg = ConservationConfig {
        dim: a.dim,
        n: a.n,
        tau: a.tau,
        s2: a.s2,
        t_final: a.t_final,
        seed: a.seed,
        c: a.c,
        stride: a.stride,
    };
    let result = conservation::conservation_study(&cfg)?;
    conservation::write_outputs(&a.out, &result)?;
    let mut s = Vec::new();
    conservation::write_summary(&mut s, &result)?;
    Ok(String::from_utf8_lossy(&s).into_owned())
}

fn bourgain(a: &BourgainArgs) -> CliResult<String> {
    let cfg = BourgainSweepConfig {
        dim: 1,
        trials: a.trials,
        m: a.m,
        n: a.n,
        tau: a.tau,
        levels: a.levels,
        estimates: a.estimates.clone(),
        s0: a.s0,
        s2: a.s2,
        b: a.b,
        c: a.c,
        seed: a.seed,
        noise: a.noise,
    };
    let (records, summary) = bourgain_check::bourgain_sweep(&cfg)?;
    bourgain_check::write_outputs(&a.out, &records, &summary)?;
    let mut s = Vec::new();
    bourgain_check::write_summary_csv(&mut s, &summary)?;
    Ok(String::from_utf8_lossy(&s).into_owned())
}

fn gen_data(a: &GenDataArgs) -> CliResult<String> {
    let grid = Grid::new(a.dim, a.n)?;
    let (e0, data) = random_rough_fields(&RoughDataSpec::new(grid, a.s2, a.seed)?)?;
    let fields = [("e0", &e0), ("z0", data.z()), ("z1", data.zt())];
    let mut names = Vec::new();
    for (name, spec) in fields {
        let file = match a.format {
            DataFormat::Bin => format!("{name}.spec"),
            DataFormat::Csv => format!("{name}.csv"),
        };
        let mut w = create(&a.out, &file)?;
        match a.format {
            DataFormat::Bin => write_spectrum(&mut w, spec)?,
            DataFormat::Csv => write_spectrum_csv(&mut w, spec)?,
        }
        std::io::Write::flush(&mut w)?;
        names.push(file);
    }
    Ok(format!("wrote {} into {}\n", names.join(", "), a.out.display()))
}
