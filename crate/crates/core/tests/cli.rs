use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geu::cli::format::ProblemFile;
use geu::cli::fuzz::FuzzSummary;
use geu::cli::report::{Status, UpdateReport};
use geu::numeric::{GaussScalar, Scalar};
use geu::worked;
use tempfile::TempDir;

fn geu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geu")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn worked_file(dir: &TempDir) -> PathBuf {
    let file = ProblemFile::from_problem(&worked::problem());
    write(dir, "worked.json", &serde_json::to_string_pretty(&file).unwrap())
}

fn report(out: &Output) -> UpdateReport<GaussScalar> {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

#[test]
fn example_passes_and_round_trips() {
    let out = geu(&["example"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r.status, Status::Passed);
    let again: UpdateReport<GaussScalar> = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn compute_matches_example() {
    let dir = TempDir::new().unwrap();
    let input = worked_file(&dir);
    let out_path = dir.path().join("report.json");
    let out = geu(&["compute", s(&input), "--output", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let from_file: UpdateReport<GaussScalar> =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(from_file, report(&geu(&["example"])));
}

#[test]
fn compute_chain_filter() {
    let dir = TempDir::new().unwrap();
    let input = worked_file(&dir);
    let r = report(&geu(&["compute", s(&input), "--chains", "distinct"]));
    assert_eq!(r.chains.len(), 1);
    assert_eq!(r.chains[0].block, worked::MU_BLOCK);
}

#[test]
fn compute_float_mode() {
    let dir = TempDir::new().unwrap();
    let input = worked_file(&dir);
    let out = geu(&["compute", s(&input), "--mode", "float", "--tolerance", "1e-12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"mode\": \"float\""));
}

#[test]
fn zero_b_is_trivial() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "zero.json",
        r#"{"blocks": [{"eigenvalue": {"re": "2"}, "size": 3}, {"eigenvalue": {"re": "2"}, "size": 2},
                      {"eigenvalue": {"re": "-1", "im": "1/2"}, "size": 1}],
            "b": [{"re": "0"}, {"re": "0"}, {"re": "0"}, {"re": "0"}, {"re": "0"}, {"re": "0"}],
            "source": {"block": 0, "rank": 2}}"#,
    );
    let out = geu(&["compute", s(&input)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r.bound, 0);
    assert!(r.factor.moments.iter().all(Scalar::is_zero));
    // f = (t - 2)^2
    assert_eq!(r.factor.monomial, vec![GaussScalar::int(4), GaussScalar::int(-4), GaussScalar::int(1)]);
    let same = r.chains.iter().find(|c| c.block == 0).unwrap();
    assert_eq!(same.beta, Some(GaussScalar::zero()));
    assert!(r.chains.iter().flat_map(|c| &c.vectors).all(|v| v.coefficients.iter().all(Scalar::is_zero)));
}

#[test]
fn rank_beyond_block_names_the_field() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "bad.json",
        r#"{"blocks": [{"eigenvalue": {"re": "1"}, "size": 2}], "b": [{"re": "1"}, {"re": "0"}],
            "source": {"block": 0, "rank": 3}}"#,
    );
    let out = geu(&["compute", s(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("source.rank"));
}

#[test]
fn malformed_json_reports_line() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "broken.json", "{\n  \"blocks\": [\n    {\"size\": }\n  ]\n}");
    let out = geu(&["compute", s(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

fn verify_inputs(dir: &TempDir, order: &[usize]) -> (PathBuf, PathBuf) {
    let p = worked::problem();
    let rows = p.updated_matrix().to_rows();
    let r = report(&geu(&["example"]));
    let same = r.chains.iter().find(|c| c.block == worked::SOURCE_BLOCK).unwrap();
    let vectors: Vec<&Vec<GaussScalar>> = order.iter().map(|&i| &same.vectors[i].vector).collect();
    (
        write(dir, "matrix.json", &serde_json::to_string(&rows).unwrap()),
        write(dir, "vectors.json", &serde_json::to_string(&vectors).unwrap()),
    )
}

#[test]
fn verify_updated_chain() {
    let dir = TempDir::new().unwrap();
    let (m, v) = verify_inputs(&dir, &[0, 1, 2, 3]);
    let out = geu(&["verify", s(&m), "2", s(&v)]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["ranks"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn verify_reordered_fails_with_index() {
    let dir = TempDir::new().unwrap();
    let (m, v) = verify_inputs(&dir, &[1, 0, 2, 3]);
    let out = geu(&["verify", s(&m), "2", s(&v)]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"]["passed"], false);
    assert_eq!(json["verdict"]["failed_at"], 1);
}

#[test]
fn verify_wrong_eigenvalue_fails_first() {
    let dir = TempDir::new().unwrap();
    let (m, v) = verify_inputs(&dir, &[0, 1, 2, 3]);
    let out = geu(&["verify", s(&m), "7", s(&v)]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"]["failed_at"], 1);
}

#[test]
fn fuzz_is_clean_and_deterministic() {
    let a = geu(&["fuzz", "--seed", "1", "--count", "100", "--n-max", "6"]);
    let b = geu(&["fuzz", "--seed", "1", "--count", "100", "--n-max", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let summary: FuzzSummary = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!((summary.count, summary.failed), (100, 0));
}

#[test]
fn fuzz_empty_and_limits() {
    let out = geu(&["fuzz", "--count", "0"]);
    let summary: FuzzSummary = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((summary.passed, summary.failed, summary.degenerate_chains), (0, 0, 0));
    assert_eq!(geu(&["fuzz", "--n-max", "9"]).status.code(), Some(2));
}

#[test]
fn shipped_data_files() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let out = geu(&["compute", s(&data.join("worked.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out), report(&geu(&["example"])));
    let out = geu(&["verify", s(&data.join("j3_matrix.json")), "2", s(&data.join("j3_chain.json"))]);
    assert_eq!(out.status.code(), Some(0));
}
