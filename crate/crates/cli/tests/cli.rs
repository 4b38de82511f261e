use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use photonchip::analysis::{FitReport, SweepReport};
use photonchip::metrics::{logical_fidelity, Permutation, TruthTable};

const NOMINAL: &str = "0.3333333333,0.3333333333,0.3333333333,0.5,0.5";
const MEASURED: &str = "0.3078,0.3078,0.3078,0.442,0.452";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photonchip"))
        .args(args)
        .env_remove("PHOTONCHIP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn circuits_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/circuits")
}

#[test]
fn nominal_truth_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = run(&["truth-table", "--cnot", "--etas", NOMINAL, "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("F(CNOT) = 1.000000"), "{text}");
    assert_eq!(text.matches("= 0.111111").count(), 4, "{text}");

    let table = TruthTable::<f64>::read_json(fs::File::open(&out).unwrap()).unwrap();
    assert!((logical_fidelity(&table, Permutation::CNOT) - 1.0).abs() < 1e-9);
}

#[test]
fn measured_truth_table_fidelity() {
    let o = run(&["truth-table", "--cnot", "--etas", MEASURED]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let f: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("F(CNOT) = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(f > 0.969);
}

#[test]
fn conventions_agree_on_shipped_files() {
    let real = run(&["truth-table", "--circuit", path_str(&circuits_dir().join("cnot_measured.pqc"))]);
    let sym = run(&[
        "--convention",
        "symmetric",
        "truth-table",
        "--circuit",
        path_str(&circuits_dir().join("cnot_measured_symmetric.pqc")),
    ]);
    assert_eq!(real.status.code(), Some(0));
    assert_eq!(stdout(&real), stdout(&sym));
}

#[test]
fn missing_circuit_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = run(&["truth-table", "--circuit", "/definitely/not/here.pqc", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let pqc = dir.path().join("bad.pqc");
    fs::write(&pqc, "modes 6\ndc 1 2 0.5\ndc 3 3 0.5\n").unwrap();
    let o = run(&["truth-table", "--circuit", path_str(&pqc)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn post_selection_failure_exits_3() {
    // every photon is routed into an ancilla, so the heralding pattern never occurs
    let dir = tempfile::tempdir().unwrap();
    let pqc = dir.path().join("dump.pqc");
    fs::write(&pqc, "modes 6\ndc 1 2 0\ndc 3 4 0\ndc 4 5 0\ndc 5 6 0\n").unwrap();
    let o = run(&["truth-table", "--circuit", path_str(&pqc)]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn hom_values_and_range() {
    let o = run(&["hom", "--eta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.000000"));
    assert!(stdout(&run(&["hom", "--eta", "0.5267"])).contains("0.9943"));
    assert_eq!(run(&["hom", "--eta", "1.5"]).status.code(), Some(2));
}

#[test]
fn hom_scan_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let svg = dir.path().join("scan.svg");
    assert_eq!(run(&["hom", "--eta", "0.5", "--scan", "--points", "11", "--out", path_str(&csv)]).status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eta,v_ideal");
    assert_eq!(lines.len(), 12);
    assert!(lines[6].starts_with("0.500000000000,1.00000000000"));
    assert_eq!(run(&["hom", "--eta", "0.5", "--scan", "--out", path_str(&svg)]).status.code(), Some(0));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn hom_filter_diagnostic() {
    let o = run(&["hom", "--eta", "0.5", "--filter-nm", "2", "--measured-fwhm-um", "249.4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("142.6"), "{text}");
    assert!(text.contains("ratio"));
}

fn synth(dir: &Path, seed: &str) -> PathBuf {
    let data = dir.join("dip.csv");
    let o = run(&["--seed", seed, "synth-dip", "--v", "0.9", "--b", "0.05", "--out", path_str(&data)]);
    assert_eq!(o.status.code(), Some(0));
    data
}

#[test]
fn fit_dip_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "2010");
    let json = dir.path().join("fit.json");
    let svg = dir.path().join("fit.svg");
    let o = run(&[
        "fit-dip", "--data", path_str(&data), "--eta", "0.5267", "--accidentals", "20",
        "--out", path_str(&json), "--plot", path_str(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("v_rel = "));

    let text = fs::read_to_string(&json).unwrap();
    let _: serde_json::Value = serde_json::from_str(&text).unwrap();
    let report = FitReport::from_json(&text).unwrap();
    assert!(report.converged);
    assert_eq!(report.points, 61);
    let v = report.params.v.value;
    let sigma = report.params.v.uncertainty.unwrap();
    assert!((v - 0.9).abs() < 4.0 * sigma, "v = {v} ± {sigma}");
    assert!((report.fwhm_um.value - 249.4).abs() < 4.0 * report.fwhm_um.uncertainty.unwrap());
    let vis = report.visibility.unwrap();
    assert!(vis.v_rel.is_some());

    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("<circle") && svg.contains("stroke-dasharray"));
}

#[test]
fn fit_dip_accidentals_above_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "3");
    let json = dir.path().join("fit.json");
    let o = run(&["fit-dip", "--data", path_str(&data), "--accidentals", "100000", "--out", path_str(&json)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fit_dip_bad_csv() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("bad.csv");
    fs::write(&data, "x,y\n1,2\n").unwrap();
    let json = dir.path().join("fit.json");
    assert_eq!(run(&["fit-dip", "--data", path_str(&data), "--out", path_str(&json)]).status.code(), Some(2));
}

#[test]
fn fit_dip_non_convergence_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "5");
    let json = dir.path().join("fit.json");
    let o = run(&["fit-dip", "--data", path_str(&data), "--max-iterations", "1", "--out", path_str(&json)]);
    assert_eq!(o.status.code(), Some(4));
    let report = FitReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!report.converged);
    assert_eq!(report.iterations, 1);
}

#[test]
fn sweep_zero_width_is_exact() {
    let o = run(&["sweep", "--cnot", "--etas", NOMINAL, "--vary", "half-1=0", "--mode", "grid:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("worst similarity = 1.000000"));
}

#[test]
fn sweep_lower_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("nominal.json");
    run(&["truth-table", "--cnot", "--etas", NOMINAL, "--out", path_str(&reference)]);
    let out = dir.path().join("s.json");
    let o = run(&[
        "sweep", "--cnot", "--etas", MEASURED,
        "--vary", "lower-third-a=0.01,lower-third-b=0.01",
        "--mode", "grid:11", "--reference", path_str(&reference), "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = SweepReport::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.samples, 121);
    assert!(report.worst.value >= 0.97);
}

#[test]
fn sweep_same_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..3).map(|i| dir.path().join(format!("mc{i}.json"))).collect();
    let args = |p: &Path, seed: &str| {
        run(&[
            "--seed", seed, "sweep", "--cnot", "--etas", NOMINAL,
            "--vary", "half-1=0.02,half-2=0.02", "--mode", "mc:300",
            "--metric", "fidelity", "--out", path_str(p),
        ])
    };
    args(&paths[0], "11");
    args(&paths[1], "11");
    args(&paths[2], "12");
    let read = |p: &PathBuf| fs::read(p).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));
    assert_ne!(read(&paths[0]), read(&paths[2]));
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    run(&["--seed", "42", "synth-dip", "--out", path_str(&a)]);
    let o = Command::new(env!("CARGO_BIN_EXE_photonchip"))
        .args(["synth-dip", "--out", path_str(&b)])
        .env("PHOTONCHIP_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn sweep_unknown_label_lists_available() {
    let o = run(&["sweep", "--cnot", "--etas", NOMINAL, "--vary", "nope=0.01"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("half-1") && err.contains("lower-third-b"), "{err}");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["truth-table"]).status.code(), Some(2));
    assert_eq!(run(&["truth-table", "--cnot", "--etas", "0.3,0.3"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--cnot", "--etas", NOMINAL, "--vary", "half-1=0.01", "--mode", "box:3"]).status.code(), Some(2));
}
