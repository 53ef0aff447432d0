use std::path::Path;
use std::process::{Command, Output};

fn nonlocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonlocal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL: &str = "scheme = fv\nN = 100\ntau = 0.01\nt_end = 0.5\nsnapshot_times = 0, 0.25, 0.5\n";

#[test]
fn run_writes_snapshots_and_diagnostics() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "small.conf", SMALL);
    let out = tmp.path().join("out");
    let res = nonlocal(&["run", "--config", &cfg, "--output", out.to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    for name in ["snap_t0.csv", "snap_t0.25.csv", "snap_t0.5.csv", "diagnostics.csv"] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
    let snap = std::fs::read_to_string(out.join("snap_t0.5.csv")).unwrap();
    assert_eq!(snap.lines().next(), Some("x,u"));
    assert_eq!(snap.lines().count(), 101);
    let diag = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert!(diag.starts_with("step,t,mass_u,min_u,max_u,oscillatory_u\n"));
    assert_eq!(diag.lines().count(), 52);
}

#[test]
fn reference_fd_config_gives_six_snapshots() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/table1_fd.conf");
    let res = nonlocal(&["run", "--config", cfg, "--output", tmp.path().to_str().unwrap(), "--quiet"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(res.stdout.is_empty());
    let mut names: Vec<String> = std::fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("snap_t"))
        .collect();
    names.sort();
    assert_eq!(
        names,
        ["snap_t0.01.csv", "snap_t0.5.csv", "snap_t0.75.csv", "snap_t0.csv", "snap_t1.csv", "snap_t10.csv"]
    );
}

#[test]
fn incompatible_config_exits_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.conf", "dim = 2\nscheme = fv\nL = 2.5\nN = 80\n");
    let res = nonlocal(&["run", "--config", &cfg, "--output", tmp.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("scheme/dim") && err.contains("fv"), "{err}");
}

#[test]
fn unknown_key_and_missing_file_exit_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "typo.conf", "alpah = 10\n");
    let res = nonlocal(&["run", "--config", &cfg]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("alpah"));
    let res = nonlocal(&["run", "--config", tmp.path().join("nope.conf").to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let res = nonlocal(&["run"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_3_and_keeps_diagnostics() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "blow.conf", "alpha = 1e308\nN = 100\nt_end = 1\n");
    let out = tmp.path().join("out");
    let res = nonlocal(&["run", "--config", &cfg, "--output", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3));
    let diag = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert!(diag.lines().count() >= 2, "{diag}");
    assert!(diag.lines().nth(1).unwrap().starts_with("0,"));
}

#[test]
fn reruns_are_byte_identical_and_seed_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "small.conf", SMALL);
    let dirs: Vec<_> = ["a", "b", "c"].iter().map(|d| tmp.path().join(d)).collect();
    for (dir, seed) in dirs.iter().zip(["1", "1", "2"]) {
        let res = nonlocal(&["run", "--config", &cfg, "--output", dir.to_str().unwrap(), "--seed", seed, "--quiet"]);
        assert!(res.status.success());
    }
    for name in ["snap_t0.5.csv", "diagnostics.csv"] {
        let a = std::fs::read(dirs[0].join(name)).unwrap();
        let b = std::fs::read(dirs[1].join(name)).unwrap();
        let c = std::fs::read(dirs[2].join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
        assert_ne!(a, c, "{name} ignores --seed");
    }
}

#[test]
fn compare_writes_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "small.conf", SMALL);
    let res = nonlocal(&[
        "compare", "--config", &cfg, "--output", tmp.path().to_str().unwrap(), "--schemes", "fd,fv,fd",
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let report = std::fs::read_to_string(tmp.path().join("comparison.csv")).unwrap();
    let mut lines = report.lines();
    assert_eq!(lines.next(), Some("t,scheme_a,scheme_b,rel_l2,rel_linf,oscillatory_a,oscillatory_b"));
    // Three pairs at three times; fd against itself is exactly zero.
    assert_eq!(report.lines().count(), 1 + 9);
    let self_pair = report.lines().find(|l| l.contains(",fd,fd,")).unwrap();
    assert!(self_pair.contains(",0.0000000000000000e0,0.0000000000000000e0,"), "{self_pair}");

    let res = nonlocal(&["compare", "--config", &cfg, "--schemes", "fd,upwind"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn two_population_run_reports_regime() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "two.conf",
        "model = two\nSu = 25\nSv = 15\nC = 30\nN = 200\nt_end = 1\n",
    );
    let res = nonlocal(&["run", "--config", &cfg, "--output", tmp.path().to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let stdout = String::from_utf8_lossy(&res.stdout);
    assert!(stdout.contains("predicted mixing"), "{stdout}");
    let snap = std::fs::read_to_string(tmp.path().join("snap_t1.csv")).unwrap();
    assert_eq!(snap.lines().next(), Some("x,u,v"));
}
