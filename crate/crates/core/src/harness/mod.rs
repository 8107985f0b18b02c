//! Experiment drivers: convergence, conservation and Bourgain sweeps.
//!
//! Each driver returns plain records and has a companion writer for its CSV
//! tables and gnuplot script. Trajectories run on the rayon pool; the worker
//! count can be capped with the `ZS_THREADS` environment variable (see
//! [`init_thread_pool`]). Records are always collected in configuration order.

pub mod bourgain_check;
pub mod conservation;
pub mod convergence;
pub mod fit;

pub use bourgain_check::{bourgain_sweep, BourgainSweepConfig, SweepRecord, SweepSummary};
pub use conservation::{conservation_study, ConservationConfig, ConservationResult, ConservationRow};
pub use convergence::{
    convergence_study, default_kappa, ConvergenceConfig, ConvergenceRecord, ConvergenceResult, OrderFit,
};
pub use fit::{linear_fit, loglog_fit, pairwise_orders, LinearFit};

/// Nearest even integer to `x`, at least 4.
pub fn round_even(x: f64) -> usize {
    let n = 2.0 * (x / 2.0).round();
    if n.is_finite() && n > 4.0 {
        n as usize
    } else {
        4
    }
}

/// Configures the global rayon pool from `ZS_THREADS` if it is set.
///
/// Returns the number of threads requested, or `None` when the variable is
/// absent, unparsable, or the pool was already built.
pub fn init_thread_pool() -> Option<usize> {
    let n: usize = std::env::var("ZS_THREADS").ok()?.trim().parse().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok()?;
    Some(n)
}

/// Shortest round-trip formatting; `NaN` and infinities as `nan`, `inf`, `-inf`.
pub(crate) fn csv_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}
