use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use photonbox::report::Report;
use photonbox::runner::{run_scenario, RunOptions};

const BIN: &str = env!("CARGO_BIN_EXE_photonbox");

fn scenarios() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn photonbox(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn counterexample_run_reports_three_violations() {
    let path = scenarios().join("counterexample.toml");
    let out = photonbox(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.schema_version, "1.0");
    assert_eq!(report.results.len(), 3);
    for r in &report.results {
        assert_eq!(r["violates_impulse"], true);
        assert_eq!(r["units"], "natural");
    }
    assert!(!report.checks.is_empty());
    assert!(stderr(&out).contains("PASS boomerang[0]"));
}

#[test]
fn misspelled_key_is_an_error_naming_it() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.toml", "name = \"x\"\nkind = \"counterexample\"\n[params]\nalpah = [0.1]\n");
    let out = photonbox(&["run", &f]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("alpah") && err.contains("line 4"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn syntax_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.toml", "name = \"x\"\nkind = [\n");
    let out = photonbox(&["run", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn numeric_failure_is_module_tagged() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "big.toml", "name = \"x\"\nkind = \"coherent\"\n[params]\nalphas = [13.0]\n");
    let out = photonbox(&["run", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("states: truncation"), "{}", stderr(&out));
}

#[test]
fn failed_check_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "strict.toml",
        "name = \"x\"\nkind = \"pulse\"\n[params]\nshape = \"gaussian\"\nwidth = 1.0\n[defaults]\nduality_tol = -1.0\n",
    );
    let out = photonbox(&["run", &f, "--quiet"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).is_empty());
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert!(!report.all_passed());
}

#[test]
fn missing_file_and_bad_usage_exit_with_one() {
    assert_eq!(photonbox(&["run", "/nonexistent/file.toml"]).status.code(), Some(1));
    assert_eq!(photonbox(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(photonbox(&["run", "x.toml", "--units", "imperial"]).status.code(), Some(1));
    assert_eq!(photonbox(&["--help"]).status.code(), Some(0));
}

#[test]
fn gaussian_pulse_duality_check() {
    let out = photonbox(&["run", scenarios().join("pulse_gaussian.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout(&out)).unwrap();
    let c = report.checks.iter().find(|c| c.name == "duality_product").unwrap();
    assert!(c.passed && c.measured <= 1e-6 && c.threshold == 1e-6);
}

#[test]
fn out_path_and_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let src = scenarios().join("counterexample.toml");
    let src = src.to_str().unwrap();
    assert_eq!(photonbox(&["run", src, "--out", json.to_str().unwrap(), "--quiet"]).status.code(), Some(0));
    assert!(Report::from_json(&std::fs::read_to_string(&json).unwrap()).is_ok());

    let out = photonbox(&["run", src, "--format", "csv", "--out", csv.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert!(lines.next().unwrap().split(',').any(|h| h == "violates_impulse"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn units_flag_switches_to_si() {
    let src = scenarios().join("counterexample.toml");
    let out = photonbox(&["--units", "si", "run", src.to_str().unwrap(), "--quiet"]);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert!(report.results.iter().all(|r| r["units"] == "si"));
    // the SI threshold is astronomically large, so every amplitude violates
    assert!(report.results.iter().all(|r| r["violates_impulse"] == true));
}

#[test]
fn seed_changes_random_checks_but_runs_are_reproducible() {
    let src = scenarios().join("chain.toml");
    let src = src.to_str().unwrap();
    let a = photonbox(&["run", src, "--seed", "7", "--quiet"]);
    let b = photonbox(&["run", src, "--seed", "7", "--quiet"]);
    let c = photonbox(&["run", src, "--seed", "8", "--quiet"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).contains("\"seed\": 7"));
}

#[test]
fn alpha_sweep_flips_at_threshold() {
    let src = scenarios().join("counterexample_sweep.toml");
    let out = photonbox(&["sweep", src.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "alpha");
    let col = headers.iter().position(|h| h == "violates_impulse").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 15);
    for row in &rows {
        let alpha: f64 = row[0].parse().unwrap();
        assert_eq!(&row[col] == "true", alpha <= 0.7, "alpha {alpha}");
    }
}

#[test]
fn width_sweep_doubles_bandwidth() {
    let src = scenarios().join("pulse_width_sweep.toml");
    let out = photonbox(&["sweep", src.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let col = reader.headers().unwrap().iter().position(|h| h == "delta_omega").unwrap();
    let dw: Vec<f64> = reader.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    assert_eq!(dw.len(), 3);
    for pair in dw.windows(2) {
        assert!((pair[1] / pair[0] - 2.0).abs() < 1e-6);
    }
}

#[test]
fn sweep_from_command_line_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let src = scenarios().join("counterexample.toml");
    let src = src.to_str().unwrap();
    let out = photonbox(&["sweep", src, "--param", "alpha", "--range", "0:0.3:0.1", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 5);

    let empty = photonbox(&["sweep", src, "--param", "alpha", "--range", "1:0:0.1"]);
    assert_eq!(empty.status.code(), Some(1));
    assert!(stderr(&empty).contains("empty"));

    let two = write(
        dir.path(),
        "two.toml",
        "name = \"x\"\nkind = \"counterexample\"\n[params]\nalphas = [0.1]\n[sweep]\nparam = \"mass\"\nrange = \"1:2:0.5\"\n",
    );
    let out = photonbox(&["sweep", &two, "--param", "alpha", "--range", "0:1:0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exactly one"));

    assert_eq!(photonbox(&["sweep", src]).status.code(), Some(1));
}

#[test]
fn reports_round_trip_and_reproduce_their_checks() {
    for entry in std::fs::read_dir(scenarios()).unwrap() {
        let path = entry.unwrap().path();
        let out = photonbox(&["run", path.to_str().unwrap(), "--quiet"]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        let text = stdout(&out);
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json().unwrap(), text, "{}", path.display());
        assert!(!report.checks.is_empty(), "{}", path.display());

        let rerun = run_scenario(&report.scenario, &RunOptions::default()).unwrap();
        assert_eq!(rerun.checks, report.checks, "{}", path.display());
        assert_eq!(rerun.results, report.results, "{}", path.display());
    }
}

#[test]
fn every_result_record_carries_units() {
    for entry in std::fs::read_dir(scenarios()).unwrap() {
        let path = entry.unwrap().path();
        let out = photonbox(&["run", path.to_str().unwrap(), "--quiet"]);
        let report = Report::from_json(&stdout(&out)).unwrap();
        for r in &report.results {
            assert!(r["units"] == "natural" || r["units"] == "si", "{}", path.display());
        }
    }
}
