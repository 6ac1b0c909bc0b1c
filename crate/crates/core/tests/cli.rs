use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidrep"));
    c.env_remove("BRAIDREP_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golden_check_passes() {
    let o = run(&["golden-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("exact match").count(), 4);
    let o = run(&["build", "--n", "5", "--m", "3", "--golden-check"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_round_trip_through_load() {
    let path = scratch("phi.json");
    let o = run(&["build", "--n", "5", "--m", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    assert!(stderr(&o).contains("relations: 6/6 passed"));
    std::fs::write(&path, &first).unwrap();
    let o = run(&[
        "build",
        "--load",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), first);
    let o = run(&["analyze", "--load", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("corank 6 = closed form"));
}

#[test]
fn tampered_json_fails_relations_with_exit_two() {
    let path = scratch("bad.json");
    let o = run(&["build", "--n", "4", "--m", "2", "--format", "json"]);
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    doc["generators"][1]["scale"][0] = "t^2".into();
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = run(&["build", "--load", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("FAIL t1 t2 t1 = t2 t1 t2 at basis"),
        "{}",
        stdout(&o)
    );
    let o = run(&["build", "--load", path.to_str().unwrap(), "--no-verify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn explicit_seed_and_qtable() {
    let path = scratch("q.json");
    std::fs::write(
        &path,
        r#"{"0,0": "1", "0,1": "(0+1i)", "1,0": "(0-1i)", "1,1": "1"}"#,
    )
    .unwrap();
    let o = run(&[
        "analyze",
        "--seed",
        "1,1,0,0",
        "--qtable",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("tau_1: self_adjoint+unitary"));

    std::fs::write(&path, r#"{"0,0": "1", "0,1": "0", "1,0": "t", "1,1": "1"}"#).unwrap();
    let o = run(&[
        "build",
        "--seed",
        "1,0,0",
        "--qtable",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("zero"), "{}", stderr(&o));
}

#[test]
fn reducible_witness_reported() {
    let path = scratch("const.json");
    std::fs::write(&path, r#"{"0,0": "t", "0,1": "t", "1,0": "t", "1,1": "t"}"#).unwrap();
    let o = run(&[
        "analyze",
        "--seed",
        "(1,0,0)",
        "--qtable",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "reducible");
    assert_eq!(v["witness"]["kind"], "invariant_line");
    assert_eq!(v["witness"]["vector"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn word_evaluation() {
    let o = run(&[
        "word",
        "--n",
        "4",
        "--m",
        "2",
        "1 2 1 -2 -1 -2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["identity"], true);

    let o = run(&[
        "word", "--n", "3", "--m", "1", "1^2", "--t", "5/2", "--dense",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // τ_1² on φ_1 with three strands: diag(t², t², 1) at t = 5/2
    assert!(text.contains("(25/4)"), "{text}");
    assert!(text.contains("identity: no"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["word", "--n", "4", "--m", "2", "1 0"],
        vec!["word", "--n", "4", "--m", "2", "4"],
        vec!["analyze", "--n", "4", "--m", "2", "--t", "2.5"],
        vec!["build", "--n", "4", "--m", "4"],
        vec!["build", "--n", "4", "--m", "2", "--load", "x.json"],
        vec!["build", "--load", "/nonexistent/rep.json"],
        vec!["sweep", "--n-min", "2"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = run(&["word", "--n", "4", "--m", "2", "1 0"]);
    assert!(stderr(&o).contains("byte 2"), "{}", stderr(&o));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Exit codes"));
}

#[test]
fn sweep_is_deterministic() {
    let a = run(&["sweep", "--n-min", "3", "--n-max", "6"]);
    let b = run(&["sweep", "--n-min", "3", "--n-max", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let out = stdout(&a);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,m,dim,corank_measured,corank_closed_form,dense_agrees,verdict"
    );
    assert_eq!(lines.len(), 1 + 2 + 3 + 4 + 5);
    assert!(lines.contains(&"5,3,10,6,6,true,irreducible"));

    let t = run(&["sweep", "--n-min", "3", "--n-max", "3", "--timing"]);
    assert!(stdout(&t).lines().next().unwrap().ends_with(",wall_ms"));
}

#[test]
fn rng_seed_env_selects_points() {
    let line = |o: &Output| {
        stdout(o)
            .lines()
            .find(|l| l.starts_with("dense rank"))
            .unwrap()
            .to_string()
    };
    let a = run(&["analyze", "--n", "4", "--m", "1"]);
    let b = bin()
        .args(["analyze", "--n", "4", "--m", "1"])
        .env("BRAIDREP_SEED", "99")
        .output()
        .unwrap();
    let c = run(&["analyze", "--n", "4", "--m", "1", "--rng-seed", "99"]);
    assert_ne!(line(&a), line(&b));
    assert_eq!(line(&b), line(&c));
    assert!(stdout(&a).contains("m = 1: dimension n = 4 and corank 2"));
    assert!(stdout(&a).contains(": pass"));
}

#[test]
fn csv_export_has_one_block_per_generator() {
    let o = run(&["build", "--n", "3", "--m", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("# tau_").count(), 2);
    assert_eq!(text.lines().count(), 2 * (1 + 3));
}
