use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphcap::cli::report::mask_timestamp;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the binary inside `dir` so the default cache directory lands there.
fn graphcap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcap"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gen_prints_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphcap(dir.path(), &["gen", "c5", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Dhc\n");

    let file = dir.path().join("sq.g6");
    let o = graphcap(
        dir.path(),
        &["gen", "c5", "--power", "2", "--out", file.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    let g6 = fs::read_to_string(&file).unwrap();
    assert_eq!(g6.trim(), stdout(&o).trim());

    let o = graphcap(
        dir.path(),
        &["alpha", file.to_str().unwrap(), "--format", "json", "--no-cache"],
    );
    assert_eq!(json(&o)["result"]["value"], 5);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(graphcap(d, &["gen", "bogus"]).status.code(), Some(2));
    assert_eq!(graphcap(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(graphcap(d, &["alpha", "g6:D?@"]).status.code(), Some(2));
    assert_eq!(graphcap(d, &["--help"]).status.code(), Some(0));

    let o = graphcap(d, &["alpha", "c7", "--power", "2", "--budget-nodes", "5", "--no-cache"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));

    let bad = d.join("bad.toml");
    fs::write(&bad, "kmax = 0\n").unwrap();
    assert_eq!(
        graphcap(d, &["verify", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    fs::write(&bad, "nonsense = 1\n").unwrap();
    assert_eq!(
        graphcap(d, &["verify", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn capacity_and_theta_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphcap(
        dir.path(),
        &["capacity", "c5", "--kmax", "2", "--format", "json", "--no-cache"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let (lo, hi) = (
        v["result"]["lower"].as_f64().unwrap(),
        v["result"]["upper"].as_f64().unwrap(),
    );
    assert!(lo <= 5f64.sqrt() && 5f64.sqrt() <= hi && hi - lo <= 1e-4);
    assert_eq!(v["result"]["lower_provenance"]["alpha"], 5);
    assert_eq!(v["config"]["kmax"], 2);

    let o = graphcap(dir.path(), &["theta", "petersen", "--format", "json"]);
    let t = json(&o)["result"]["value"].as_f64().unwrap();
    assert!((t - 4.0).abs() < 1e-6);
}

#[test]
fn eval_builds_polynomial_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphcap(
        dir.path(),
        &[
            "eval",
            "x^2 + 2 x y",
            "e2",
            "e3",
            "--alpha",
            "--format",
            "json",
            "--no-cache",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["vertices"], 16);
    assert_eq!(v["result"]["alpha"], 16);
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "--format", "json"];
        args.extend_from_slice(extra);
        let o = graphcap(d, &args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        json(&o)
    };
    let cold = run(&[]);
    let warm = run(&[]);
    let checked = run(&["--verify-cache"]);
    let off = run(&["--no-cache"]);
    assert!(d.join(".graphcap-cache").is_dir());
    assert!(cold["cache"]["writes"].as_u64().unwrap() > 0);
    assert_eq!(warm["cache"]["misses"], 0);
    assert!(checked["cache"]["verified"].as_u64().unwrap() > 0);
    assert_eq!(checked["cache"]["mismatches"], 0);
    assert_eq!(off["cache"]["enabled"], false);
    for v in [&warm, &checked, &off] {
        assert_eq!(v["checks"], cold["checks"]);
        assert_eq!(v["summary"], cold["summary"]);
    }
}

#[test]
fn same_seed_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = golden("small.toml");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = graphcap(
            dir.path(),
            &[
                "verify",
                "--config",
                cfg.to_str().unwrap(),
                "--no-cache",
                "--seed",
                "7",
                "--report",
                path.to_str().unwrap(),
            ],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    let (a, b) = (fs::read_to_string(a).unwrap(), fs::read_to_string(b).unwrap());
    assert_eq!(mask_timestamp(&a), mask_timestamp(&b));
    assert!(a.contains("\"seed\": 7"));
}

/// The stock suite report, timestamp masked. Set `GRAPHCAP_BLESS=1` to
/// rewrite the golden file after an intended change.
#[test]
fn golden_verify_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphcap(dir.path(), &["verify", "--no-cache", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let got = mask_timestamp(&stdout(&o));
    let path = golden("verify_stock.json");
    if std::env::var_os("GRAPHCAP_BLESS").is_some() {
        fs::write(&path, &got).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap();
    assert_eq!(got, want, "report differs from {}", path.display());
}

#[test]
fn injected_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fail.toml");
    let base = fs::read_to_string(golden("small.toml")).unwrap();
    fs::write(&cfg, format!("inject_failure = true\n{base}")).unwrap();
    let o = graphcap(dir.path(), &["verify", "--config", cfg.to_str().unwrap(), "--no-cache"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn report_dir_keeps_every_run() {
    let dir = tempfile::tempdir().unwrap();
    let reports = dir.path().join("reports");
    for _ in 0..2 {
        let o = graphcap(
            dir.path(),
            &["alpha", "c5", "--no-cache", "--report-dir", reports.to_str().unwrap()],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read_dir(&reports).unwrap().count(), 2);
}
