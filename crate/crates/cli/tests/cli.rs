//! End-to-end tests through the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn alphafair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphafair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_example_population(path: &Path) {
    std::fs::write(path, "id,a,b,z,y\np1,1,1,0,1\np2,2,1,1,1\np3,0.5,1,0,0\n").unwrap();
}

#[test]
fn rates_prints_the_utilitarian_solution() {
    let out = alphafair(&["rates", "--scenario", "1", "--sigma", "0.25", "--alpha", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "S=0.375, s=0.000, case=A");
}

#[test]
fn select_takes_the_largest_differentials() {
    let dir = tempfile::tempdir().unwrap();
    let pop = dir.path().join("pop.csv");
    write_example_population(&pop);
    let out = alphafair(&[
        "select",
        "--input",
        pop.to_str().unwrap(),
        "--m",
        "2",
        "--alpha",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).expect("data row");
    assert!(row.contains("p2;p1"), "row: {row}");
}

#[test]
fn scenario_parity_alpha_reports_structural_nonexistence() {
    let out = alphafair(&[
        "scenario",
        "--id",
        "3",
        "--sigma",
        "0.8",
        "--cmd",
        "parity-alpha",
    ]);
    assert!(out.status.success(), "nonexistence is not an error");
    let text = stdout(&out);
    assert!(
        text.contains("none (structural: harm cap at s=0.6667)"),
        "got: {text}"
    );
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    // missing file: 3
    let out = alphafair(&["select", "--input", "/nonexistent/pop.csv", "--m", "1", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let pop = dir.path().join("pop.csv");
    write_example_population(&pop);

    // quota beyond the population: 2
    let out = alphafair(&["select", "--input", pop.to_str().unwrap(), "--m", "9", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // nonpositive baseline in the data: 4
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "id,a,b,z,y\nx,1,0,0,1\n").unwrap();
    let out = alphafair(&["select", "--input", bad.to_str().unwrap(), "--m", "1", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(4));

    // malformed flag values: 3
    let badflags = dir.path().join("badflags.csv");
    std::fs::write(&badflags, "id,a,b,z,y\nx,1,1,2,0\n").unwrap();
    let out = alphafair(&["select", "--input", badflags.to_str().unwrap(), "--m", "1", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(3));

    // missing model options: 2
    let out = alphafair(&["rates", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown subcommand: 2 (from the parser)
    let out = alphafair(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_and_json_sweeps_carry_identical_values() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let json_path = dir.path().join("sweep.json");
    let base = [
        "sweep", "--scenario", "2", "--sigma", "0.6", "--alpha-start", "0", "--alpha-stop", "2",
        "--alpha-step", "0.25",
    ];
    let out = alphafair(
        &[&base[..], &["--output", csv_path.to_str().unwrap()]].concat(),
    );
    assert!(out.status.success());
    let out = alphafair(
        &[
            &base[..],
            &["--format", "json", "--output", json_path.to_str().unwrap()],
        ]
        .concat(),
    );
    assert!(out.status.success());

    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    let csv_rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let json_rows: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(csv_rows.len(), json_rows.len());
    assert_eq!(csv_rows.len(), 9);

    let numeric = ["alpha", "S", "s", "odds_np", "odds_p", "pred_np", "pred_p"];
    for (crow, jrow) in csv_rows.iter().zip(&json_rows) {
        for (idx, key) in headers.iter().enumerate() {
            let cval = &crow[idx];
            if numeric.contains(&key) {
                let c: f64 = cval.parse().unwrap();
                let j = jrow[key].as_f64().unwrap();
                assert_eq!(c.to_bits(), j.to_bits(), "column {key}: {c} vs {j}");
            }
        }
    }
}

#[test]
fn population_json_round_trip_preserves_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("pop.json");
    let first_out = dir.path().join("first.csv");
    let second_out = dir.path().join("second.csv");

    let out = alphafair(&[
        "select", "--scenario", "1", "--sigma", "0.6", "--n", "60", "--seed", "11", "--alpha",
        "2", "--save-population", saved.to_str().unwrap(), "--output",
        first_out.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = alphafair(&[
        "select", "--input", saved.to_str().unwrap(), "--m", "36", "--alpha", "2", "--output",
        second_out.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let first = std::fs::read_to_string(&first_out).unwrap();
    let second = std::fs::read_to_string(&second_out).unwrap();
    assert_eq!(first, second);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# defaults\nscenario = 1\nsigma = 0.25\nalpha = 0\n").unwrap();
    let out = alphafair(&["rates", "--config", conf.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "S=0.375, s=0.000, case=A");

    // the sigma flag overrides the config value
    let out = alphafair(&["rates", "--config", conf.to_str().unwrap(), "--sigma", "0.6"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("S=0.746"));

    // unreadable config: 3
    let out = alphafair(&["rates", "--config", "/nonexistent.conf", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn thread_count_does_not_change_the_output() {
    let args = [
        "sweep", "--scenario", "3", "--sigma", "0.8", "--alpha-start", "0", "--alpha-stop", "4",
        "--alpha-step", "0.1",
    ];
    let one = alphafair(&[&args[..], &["--threads", "1"]].concat());
    let four = alphafair(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn report_emits_verdicts() {
    let out = alphafair(&[
        "report", "--scenario", "1", "--sigma", "0.6", "--alpha", "0.840096",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("demographic_parity=true"), "got: {text}");
}
