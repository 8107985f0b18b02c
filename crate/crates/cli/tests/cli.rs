use std::path::Path;
use std::process::{Command, Output};

fn zs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zs")).args(args).env("RUST_LOG", "error").output().expect("spawn zs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn unknown_flag_exits_2_with_usage() {
    let out = zs(&["converge", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn help_exits_0() {
    assert_eq!(zs(&["--help"]).status.code(), Some(0));
}

#[test]
fn converge_writes_tables_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let res = zs(&[
        "converge", "--dim", "1", "--s1", "1,2", "--tau", "2^-4..2^-6", "--T", "0.25", "--seed", "42", "--n-ref", "64",
        "--tau-ref", "2^-11", "--out", out,
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let records = read(&dir.path().join("records.csv"));
    let mut lines = records.lines();
    assert_eq!(lines.next(), Some("s1,tau,N,e_E,e_z,e_zt,total,wall_time_s"));
    assert_eq!(lines.count(), 6);
    assert!(read(&dir.path().join("orders.csv")).starts_with("s1,slope,intercept,r2\n"));
    assert!(read(&dir.path().join("fig_convergence.plot")).contains("set logscale xy"));
}

#[test]
fn config_file_mirrors_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("study.cfg");
    std::fs::write(
        &cfg,
        format!(
            "# small conservation run\ndim = 1\nn = 32\ntau = 2^-10\nT = 2^-4\nseed = 3\nstride = 8\nout = {}\n",
            dir.path().join("ignored").display()
        ),
    )
    .unwrap();
    let out = dir.path().join("run");
    let res = zs(&["conserve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let csv = read(&out.join("conserve.csv"));
    assert!(csv.starts_with("step,time,mass,mass_rel_drift,energy,energy_rel_drift\n"));
    assert_eq!(csv.lines().count(), 1 + 9);
    assert!(!dir.path().join("ignored").exists());
}

#[test]
fn bad_config_value_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "tau = fast\n").unwrap();
    assert_eq!(zs(&["conserve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(zs(&["conserve", "--config", "/nonexistent/zs.cfg"]).status.code(), Some(2));
}

#[test]
fn invalid_study_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let res = zs(&["converge", "--tau", "2^-4", "--tau-ref", "2^-5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn blow_up_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // the wave update overflows at this step size
    let res = zs(&[
        "simulate", "--n", "16", "--tau", "1e308", "--T", "1e308", "--variant", "unfiltered", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(3), "{}", String::from_utf8_lossy(&res.stdout));
}

#[test]
fn gen_data_then_simulate_then_resume() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let d = data.to_str().unwrap();
    assert_eq!(zs(&["gen-data", "--n", "16", "--s2", "1", "--seed", "9", "--out", d]).status.code(), Some(0));
    for name in ["e0.spec", "z0.spec", "z1.spec"] {
        assert_eq!(std::fs::metadata(data.join(name)).unwrap().len(), 8 + 16 * 16);
    }
    let run = dir.path().join("run");
    let res = zs(&[
        "simulate", "--n", "16", "--tau", "2^-8", "--T", "2^-4", "--every", "4", "--e0", &format!("{d}/e0.spec"), "--z0",
        &format!("{d}/z0.spec"), "--z1", &format!("{d}/z1.spec"), "--out", run.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let traj = read(&run.join("trajectory.csv"));
    assert_eq!(traj.lines().count(), 1 + 5);

    let resumed = dir.path().join("resumed");
    let res = zs(&[
        "simulate", "--resume", run.join("final.zsck").to_str().unwrap(), "--T", "2^-4", "--out",
        resumed.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(read(&resumed.join("trajectory.csv")).lines().nth(1).unwrap().starts_with("16,"));

    let csv = dir.path().join("csv");
    let res = zs(&["gen-data", "--n", "8", "--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    assert!(read(&csv.join("e0.csv")).starts_with("k1,re,im\n"));
}

#[test]
fn bourgain_check_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let res = zs(&[
        "bourgain-check", "--trials", "2", "--m", "8", "--n", "8", "--tau", "2^-3", "--estimates", "M1,M2", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let csv = read(&dir.path().join("bourgain.csv"));
    assert!(csv.starts_with("trial,estimate_id,M,N,tau,ratio\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 2);
    assert!(String::from_utf8_lossy(&res.stdout).contains("max_ratio"));
}
