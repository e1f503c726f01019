use std::path::Path;
use std::process::{Command, Output};

use nambu_vorticity::io::{metadata_path, read_json, read_mode_field, Metadata};

fn bin(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nambu-vorticity"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_random_writes_outputs_and_conserves() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"n": 11, "dt": 1e-3, "steps": 1000, "record_every": 100, "seed": 7,
            "initial": {"kind": "random_shell", "shell_min": 1, "shell_max": 242, "amplitude": 3.0}}"#,
    );
    let o = bin(&["run", "--config", &cfg, "--out", "a"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = dir.path().join("a");
    for f in [
        "diagnostics.csv",
        "initial_state.csv",
        "final_state.csv",
        "summary.json",
    ] {
        assert!(out.join(f).exists(), "{f}");
        let meta: Metadata = read_json(&metadata_path(&out.join(f))).unwrap();
        assert_eq!(meta.seed, Some(7));
        assert_eq!(meta.config_sha256.len(), 64);
    }
    let summary: serde_json::Value = read_json(&out.join("summary.json")).unwrap();
    assert!(summary["max_drift_energy"].as_f64().unwrap() < 1e-8);
    assert!(summary["max_drift_enstrophy"].as_f64().unwrap() < 1e-8);

    // Same config and seed give byte-identical tables.
    let o = bin(&["run", "--config", &cfg, "--out", "b"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    for f in ["diagnostics.csv", "initial_state.csv", "final_state.csv"] {
        let a = std::fs::read(out.join(f)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

#[test]
fn run_zero_and_single_pair() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"n": 5, "dt": 0.01, "steps": 50, "initial": {"kind": "zero"}, "output_dir": "z"}"#,
    );
    assert_eq!(
        bin(&["run", "--config", &zero], dir.path()).status.code(),
        Some(0)
    );
    let f = std::fs::File::open(dir.path().join("z/final_state.csv")).unwrap();
    assert_eq!(read_mode_field(f, None).unwrap().max_abs(), 0.0);
    let summary: serde_json::Value = read_json(&dir.path().join("z/summary.json")).unwrap();
    assert_eq!(summary["max_drift_energy"].as_f64(), Some(0.0));

    let pair = write(
        dir.path(),
        "pair.json",
        r#"{"n": 7, "scheme": "implicit_midpoint", "dt": 0.01, "steps": 1000,
            "initial": {"kind": "modes", "modes": [{"i1": 2, "i2": -1, "re": 0.3, "im": 0.4}]},
            "output_dir": "p"}"#,
    );
    assert_eq!(
        bin(&["run", "--config", &pair], dir.path()).status.code(),
        Some(0)
    );
    let read = |name: &str| {
        read_mode_field(
            std::fs::File::open(dir.path().join("p").join(name)).unwrap(),
            None,
        )
        .unwrap()
    };
    let (a, b) = (read("initial_state.csv"), read("final_state.csv"));
    assert!(a.max_abs_diff(&b) <= 1e-13 * a.max_abs());
}

#[test]
fn run_from_physical_samples() {
    let dir = tempfile::tempdir().unwrap();
    // 2 cos(x1) on the 5 x 5 grid.
    let rows: Vec<String> = (0..5)
        .map(|a| {
            let v = 2.0 * (2.0 * std::f64::consts::PI * a as f64 / 5.0).cos();
            vec![format!("{v}"); 5].join(",")
        })
        .collect();
    let csv = write(dir.path(), "zeta.csv", &(rows.join("\n") + "\n"));
    let cfg = write(
        dir.path(),
        "cfg.json",
        &format!(
            r#"{{"n": 5, "dt": 0.01, "steps": 10, "initial": {{"kind": "physical_csv", "path": "{csv}"}}, "output_dir": "o"}}"#
        ),
    );
    assert_eq!(
        bin(&["run", "--config", &cfg], dir.path()).status.code(),
        Some(0)
    );
    let f = read_mode_field(
        std::fs::File::open(dir.path().join("o/initial_state.csv")).unwrap(),
        None,
    )
    .unwrap();
    let c = f.get((1, 0).into()).unwrap();
    assert!((c.re - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12);
}

#[test]
fn run_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(
        bin(&["run", "--config", &bad], dir.path()).status.code(),
        Some(2)
    );
    let even = write(
        dir.path(),
        "even.json",
        r#"{"n": 4, "dt": 0.1, "steps": 1, "initial": {"kind": "zero"}}"#,
    );
    assert_eq!(
        bin(&["run", "--config", &even], dir.path()).status.code(),
        Some(2)
    );
    let neg = write(
        dir.path(),
        "neg.json",
        r#"{"n": 5, "dt": -0.1, "steps": 1, "initial": {"kind": "zero"}}"#,
    );
    assert_eq!(
        bin(&["run", "--config", &neg], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["run", "--config", "missing.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
    // A huge step makes the midpoint iteration diverge.
    let blow = write(
        dir.path(),
        "blow.json",
        r#"{"n": 7, "scheme": "implicit_midpoint", "dt": 1.0, "steps": 3,
            "initial": {"kind": "random_shell", "shell_min": 1, "shell_max": 18, "amplitude": 1e4}}"#,
    );
    let o = bin(&["run", "--config", &blow, "--out", "x"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["verify", "--n", "5", "--all", "--out", "v"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = read_json(&dir.path().join("v/verify_report.json")).unwrap();
    assert!(report.as_array().unwrap().len() >= 12);
    assert!(metadata_path(&dir.path().join("v/verify_report.json")).exists());

    assert_eq!(
        bin(&["verify", "--n", "4"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["verify", "--n", "17"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["verify", "--bogus"], dir.path()).status.code(),
        Some(2)
    );

    let o = bin(
        &["verify", "--n", "5", "--counterexample", "--out", "c"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("zeitlin summands") && text.contains("continuum summands"),
        "{text}"
    );

    let o = bin(
        &[
            "--workers",
            "2",
            "verify",
            "--n",
            "3",
            "--suite",
            "identity",
            "--out",
            "i",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn converge_and_pairs_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(
        &["converge", "--sizes", "11,21,41", "--out", "c"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(dir.path().join("c/exponents.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i1,i2,j1,j2,cross,exponent"));
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[4] == "0" {
            assert_eq!(fields[5], "");
            continue;
        }
        let e: f64 = fields[5].parse().unwrap();
        assert!((1.8..=2.2).contains(&e), "{line}");
    }
    for f in ["convergence.csv", "functional.csv", "converge_report.json"] {
        assert!(dir.path().join("c").join(f).exists());
    }

    let empty = write(dir.path(), "empty.csv", "i1,i2,j1,j2\n");
    assert_eq!(
        bin(&["converge", "--pairs", &empty], dir.path())
            .status
            .code(),
        Some(2)
    );
    let junk = write(dir.path(), "junk.csv", "i1,i2,j1,j2\n1,x,0,1\n");
    assert_eq!(
        bin(&["converge", "--pairs", &junk], dir.path())
            .status
            .code(),
        Some(2)
    );
    let far = write(dir.path(), "far.csv", "i1,i2,j1,j2\n9,0,0,1\n");
    assert_eq!(
        bin(&["converge", "--pairs", &far], dir.path())
            .status
            .code(),
        Some(2)
    );
    let ok = write(dir.path(), "ok.csv", "i1,i2,j1,j2\n1,0,0,1\n2,1,1,2\n");
    let o = bin(&["converge", "--pairs", &ok, "--out", "d"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn jacobi_scan_flags_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["jacobi-scan", "--n", "5", "--out", "s"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("counterexample tuple flagged"), "{text}");
    let csv = std::fs::read_to_string(dir.path().join("s/violations.csv")).unwrap();
    assert!(csv.starts_with("i1,i2,j1,j2,k1,k2,l1,l2,p1,p2,q1,q2,residual\n"));
    assert!(csv.lines().count() > 1);
    assert_eq!(
        bin(&["jacobi-scan", "--n", "3"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["jacobi-scan", "--n", "6"], dir.path()).status.code(),
        Some(2)
    );
}
