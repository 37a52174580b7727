use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ghzbell"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exact_defaults_json() {
    let out = run_ok(&["exact", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["chsh_value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!((v["ch_value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    for key in [
        "state_params",
        "visibility",
        "strategy",
        "terms",
        "bounds",
        "shots",
        "seed",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["bounds"]["chsh"]["lhv"], 2.0);
    assert_eq!(v["bounds"]["ch"]["lhv_lower"], -1.0);
    assert_eq!(out, run_ok(&["exact", "--format", "json"]));
}

#[test]
fn sample_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| {
            (
                dir.path().join(format!("c{i}.txt")),
                dir.path().join(format!("r{i}.json")),
            )
        })
        .collect();
    for (counts, report) in &paths {
        run_ok(&[
            "sample",
            "--shots",
            "2000",
            "--visibility",
            "0.8",
            "--seed",
            "17",
            "--format",
            "json",
            "--counts-out",
            counts.to_str().unwrap(),
            "--out",
            report.to_str().unwrap(),
        ]);
    }
    let read = |p: &std::path::Path| std::fs::read(p).unwrap();
    assert_eq!(read(&paths[0].0), read(&paths[1].0));
    assert_eq!(read(&paths[0].1), read(&paths[1].1));

    // Analyzing the saved counts reproduces the sampled estimates.
    let again = run_ok(&[
        "sample",
        "--counts-in",
        paths[0].0.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let a: serde_json::Value = serde_json::from_slice(&read(&paths[0].1)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(a["chsh_value"], b["chsh_value"]);
    assert_eq!(a["ch_value"], b["ch_value"]);
}

#[test]
fn single_shot_marks_degenerate() {
    let out = run_ok(&["sample", "--shots", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for t in ["zz", "zx", "xz", "xx"] {
        assert_eq!(v["terms"]["correlations"][t]["degenerate"], true);
    }
}

#[test]
fn sweep_csv_shape() {
    let out = run_ok(&[
        "sweep",
        "--param",
        "visibility",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "param,value,chsh,ch,bound_lhv,bound_cirelson,bound_max"
    );
    assert_eq!(lines.len(), 12);
    let last: Vec<&str> = lines[11].split(',').collect();
    assert_eq!(last[0], "visibility");
    assert_eq!(last[2].parse::<f64>().unwrap(), 4.0);
}

#[test]
fn lhv_and_cirelson_commands() {
    let out = run_ok(&["lhv"]);
    assert!(out.contains(": 2\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("  v_A")).count(), 8);
    let v: serde_json::Value = serde_json::from_str(&run_ok(&[
        "cirelson", "--random", "200", "--format", "json",
    ]))
    .unwrap();
    assert!((v["norm"]["direct"].as_f64().unwrap() - 8f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["random"]["violations"], 0);
}

#[test]
fn errors_are_machine_readable() {
    for args in [
        vec!["exact", "--visibility", "1.5"],
        vec!["cirelson", "--angles", "1,2,3"],
        vec!["sweep", "--steps", "1"],
        vec!["exact", "--strategy", "fixed:9"],
        vec!["bogus"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"]["kind"].is_string() && err["error"]["message"].is_string());
    }
}

#[test]
fn bad_counts_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "# x\nZXX -1 0 1 5\n").unwrap();
    let out = bin()
        .args(["sample", "--counts-in", p.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 2"));
}
