use std::process::{Command, Output};

fn lcmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcmlab"))
        .args(args)
        .env_remove("LCMLAB_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn sweep_csv_rows_and_ratio_growth() {
    let o = lcmlab(&["sweep", "--poly", "x^2+1", "--n", "10,100,1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "ratio_L").unwrap();
    let ratios: Vec<f64> = lines.map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.windows(2).all(|w| w[0] < w[1]), "{ratios:?}");
}

#[test]
fn empty_schedule_is_a_config_error() {
    let o = lcmlab(&["sweep", "--poly", "x^2+1", "--n", ""]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("empty schedule"));
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(lcmlab(&["verify", "--poly", "x^3+2", "--n", "200", "--checks", "bogus"]).status.code(), Some(1));
    assert_eq!(lcmlab(&["sweep", "--poly", "x^2+", "--n", "10"]).status.code(), Some(1));
    assert_eq!(lcmlab(&["sweep", "--poly", "x^2+1", "--n", "100", "--bound", "200"]).status.code(), Some(1));
    assert_eq!(lcmlab(&["local", "--poly", "x^2+1", "--n", "10", "--p", "9"]).status.code(), Some(1));
    assert_eq!(lcmlab(&["sweep", "--nonsense"]).status.code(), Some(1));
    assert_eq!(lcmlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_checks() {
    let o = lcmlab(&["verify", "--poly", "x^3+2", "--n", "200", "--checks", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = json(&o);
    assert_eq!(doc["schema_version"], 1);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn verify_refined_multiplicity() {
    let o = lcmlab(&["verify", "--poly", "x^2+1", "--n", "1000", "--checks", "refined_multiplicity"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_check_exit_codes() {
    let o = lcmlab(&["oracle-check", "--poly", "2*x^3 - x + 7", "--n", "500"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["identical"], true);
    let o = lcmlab(&["oracle-check", "--poly", "x^2+1", "--n", "100000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn local_dump() {
    let o = lcmlab(&["local", "--poly", "x^2+1", "--n", "20", "--p", "5"]);
    assert!(o.status.success());
    let doc = json(&o);
    // 5 | n^2+1 for n = 2,3 mod 5 and 25 | n^2+1 for n = 7,18 mod 25
    assert_eq!(doc["data"]["alpha"], 10);
    assert_eq!(doc["data"]["layer_counts"], serde_json::json!([8, 2]));
    assert_eq!(doc["rho"], 2);
}

#[test]
fn output_independent_of_workers() {
    let run = |w: &str| {
        lcmlab(&["sweep", "--poly", "2*x^3 - x + 7", "--n", "geom:10:20000:3", "--workers", w, "--no-timing"]).stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("8"));
}

#[test]
fn env_overrides_workers_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_lcmlab"))
        .args(["sweep", "--poly", "x^2+1", "--n", "10", "--workers", "2"])
        .env("LCMLAB_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("workers"));
}

#[test]
fn config_file_and_positions() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.toml");
    let out = dir.path().join("out.json");
    std::fs::write(
        &good,
        format!("poly = \"x^2 + x + 1\"\nn = [10, 100]\nformat = \"json\"\nout = {:?}\n", out.to_str().unwrap()),
    )
    .unwrap();
    let o = lcmlab(&["sweep", "--config", good.to_str().unwrap(), "--no-timing"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 2);
    assert_eq!(doc["gaps"].as_array().unwrap().len(), 0);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "poly = \"x^2+1\"\n\nworkrs = 3\n").unwrap();
    let o = lcmlab(&["sweep", "--config", bad.to_str().unwrap(), "--n", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3, column 1"), "{}", stderr(&o));
}

#[test]
fn reducible_input_warns() {
    let o = lcmlab(&["sweep", "--poly", "x^2 - 1", "--n", "10,20"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("reducible"));
}
