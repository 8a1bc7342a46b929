use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_realbott"))
}

fn write_matrix(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const A5: &str = "\
# five-dimensional example
0 1 1 0 0
0 0 1 1 0
0 0 0 1 1
0 0 0 0 0
0 0 0 0 0
";

#[test]
fn analyze_reports_invariants_for_an_orientable_matrix() {
    let f = write_matrix(A5);
    let out = bin().args(["analyze"]).arg(f.path()).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n: 5"));
    assert!(text.contains("orientable: true"));
    assert!(text.contains("spin: false"));
    assert!(text.contains("spinc: false"));
}

#[test]
fn analyze_all_oracles_agree() {
    let f = write_matrix(A5);
    let out = bin()
        .args(["analyze", "--all-oracles", "--format", "json-lines"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["spinc"], false);
    let oracles = &v["spinc_by_oracle"];
    assert_eq!(oracles["combinatorial"], false);
    assert_eq!(oracles["linear"], false);
    assert_eq!(oracles["bockstein"], false);
}

#[test]
fn analyze_handles_non_orientable_input() {
    // single 1 in row 1: odd row weight
    let f = write_matrix("0 1\n0 0\n");
    let out = bin().args(["analyze"]).arg(f.path()).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("orientable: false"));
    assert!(text.contains("spin: n/a"));
    assert!(text.contains("spinc: n/a"));
}

#[test]
fn analyze_missing_file_exits_1() {
    let out = bin()
        .args(["analyze", "/nonexistent/matrix.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_malformed_matrix_exits_2() {
    let f = write_matrix("0 2\n0 0\n");
    let out = bin().args(["analyze"]).arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 1"),
        "diagnostic should locate the token: {err}"
    );
}

#[test]
fn census_csv_output_is_byte_stable() {
    let run = || {
        let out = bin()
            .args(["census", "--dims", "4..6", "--format", "csv", "--no-timing"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    assert_eq!(
        String::from_utf8(first.clone()).unwrap(),
        "dimension,orientable,spinc,spin,elapsed_s\n\
         4,8,8,8,-\n\
         5,64,56,30,-\n\
         6,1024,592,176,-\n"
    );
    assert_eq!(first, run(), "repeated runs must agree byte for byte");
}

#[test]
fn census_json_lines_parse() {
    let out = bin()
        .args([
            "census",
            "--dims",
            "5",
            "--format",
            "json-lines",
            "--no-timing",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["orientable"], 64);
}

#[test]
fn census_dimension_10_requires_allow_long() {
    let out = bin().args(["census", "--dims", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn census_rejects_bad_dimension_ranges() {
    for dims in ["3..5", "8..4", "4..11", "nope"] {
        let out = bin().args(["census", "--dims", dims]).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "--dims {dims}");
    }
}

#[test]
fn verify_reports_agreement() {
    let out = bin()
        .args(["verify", "--max-exhaustive", "5", "--samples", "20"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all oracles agree"), "{text}");
}
