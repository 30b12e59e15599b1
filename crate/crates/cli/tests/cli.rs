//! End-to-end tests of the `liefol` binary: golden reports, determinism,
//! and exit codes. Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn liefol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liefol"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = liefol(&full);
    (
        serde_json::from_slice(&out.stdout).expect("valid JSON report"),
        code(&out),
    )
}

fn claim<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("claim `{name}` missing"))
}

fn golden(name: &str, args: &[&str]) {
    let out = liefol(args);
    let text = stdout(&out);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, expected, "report for {args:?} differs from {}", path.display());
}

fn temp_doc(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn golden_rigidity_of_familia1() {
    golden(
        "rigidity-familia1.txt",
        &["rigidity", "inputs/familia1.json", "--t", "1"],
    );
}

#[test]
fn golden_family_check() {
    golden("family-check-familia1.txt", &["family-check", "inputs/familia1.json"]);
}

#[test]
fn golden_validate_jacobi_violation() {
    golden("validate-sl2-broken.txt", &["validate", "inputs/sl2-broken.json"]);
}

#[test]
fn golden_form_with_kupka_points() {
    golden(
        "form-exceptional-p3.txt",
        &[
            "form",
            "inputs/exceptional-p3.json",
            "--frobenius",
            "--kupka",
            "1:0:0:0,0:1:0:0,0:0:1:0,0:0:0:1",
        ],
    );
}

#[test]
fn golden_catalog_codigo_m2() {
    golden("catalog-codigoM2.txt", &["catalog", "run", "codigoM2"]);
}

#[test]
fn catalog_familia1_reports_published_numbers() {
    let (r, exit) = json(&["catalog", "run", "familia1", "--n", "5", "--t", "1"]);
    assert_eq!(exit, 0);
    assert_eq!(r["schema"], "liefol-report/1");
    assert_eq!(claim(&r, "dim Z1")["computed"], 32);
    assert_eq!(claim(&r, "dim B1")["computed"], 28);
    assert_eq!(claim(&r, "rigid")["computed"], false);
    assert_eq!(claim(&r, "dim Z1")["provenance"], "PAPER");
}

#[test]
fn catalog_quadric_reports_rigidity_and_orbit_dim() {
    let (r, exit) = json(&["catalog", "run", "aff-so5-quadric"]);
    assert_eq!(exit, 0);
    assert_eq!(claim(&r, "dim Z1")["computed"], 8);
    assert_eq!(claim(&r, "dim B1")["computed"], 8);
    assert_eq!(claim(&r, "rigid")["computed"], true);
    assert_eq!(claim(&r, "generic orbit dim on Q")["computed"], 2);
    assert_eq!(r["samples"], 25);
}

#[test]
fn file_and_catalog_pipelines_agree_on_the_quadric() {
    let (r, exit) = json(&["rigidity", "inputs/aff-quadric.json"]);
    assert_eq!(exit, 0);
    assert_eq!(r["results"]["dim Z1"], 8);
    assert_eq!(r["results"]["dim B1"], 8);
    let (o, _) = json(&["orbit-dim", "inputs/aff-quadric.json"]);
    assert_eq!(o["results"]["generic orbit dim"], 2);
}

#[test]
fn validate_flags_jacobi_violation_with_exit_1() {
    let (r, exit) = json(&["validate", "inputs/sl2-broken.json"]);
    assert_eq!(exit, 1);
    assert_eq!(claim(&r, "jacobi identity")["status"], "fail");
    assert_eq!(r["results"]["jacobi violations"].as_array().unwrap().len(), 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["--json", "orbit-dim", "inputs/sym4.json", "--seed", "7"],
        vec!["--json", "maximality", "inputs/sym4.json"],
        vec!["catalog", "run", "--all"],
    ] {
        let a = liefol(&args);
        let b = liefol(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn seed_changes_the_sample_log() {
    let (a, _) = json(&["orbit-dim", "inputs/sym4.json", "--seed", "1", "--samples", "3"]);
    let (b, _) = json(&["orbit-dim", "inputs/sym4.json", "--seed", "2", "--samples", "3"]);
    assert_eq!(a["results"]["generic orbit dim"], 3);
    assert_ne!(a["results"]["sample log"], b["results"]["sample log"]);
}

#[test]
fn catalog_all_runs_in_fixed_order() {
    let (r, exit) = json(&["catalog", "run", "--all"]);
    assert_eq!(exit, 0);
    let names: Vec<&str> = r["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["results"]["entry"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "familia1",
            "sl2-sym4",
            "exceptional-p3",
            "aff-so5-quadric",
            "adjoint-sln",
            "codigoM2"
        ]
    );
}

#[test]
fn timing_is_opt_in() {
    let (plain, _) = json(&["rigidity", "inputs/sl2-aff.json"]);
    assert!(plain.get("timing_ms").is_none());
    let (timed, _) = json(&["--timing", "rigidity", "inputs/sl2-aff.json"]);
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn input_errors_exit_2() {
    let malformed = temp_doc("{ not json");
    let out = liefol(&["validate", malformed.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));

    let bad_index = temp_doc(r#"{"kind": "structure", "dim": 2, "brackets": [[0, 5, [[1, 1]]]]}"#);
    assert_eq!(code(&liefol(&["validate", bad_index.path().to_str().unwrap()])), 2);

    // A structure document without a subalgebra cannot be certified.
    let no_sub = temp_doc(r#"{"kind": "structure", "dim": 1, "brackets": []}"#);
    assert_eq!(code(&liefol(&["rigidity", no_sub.path().to_str().unwrap()])), 2);

    assert_eq!(code(&liefol(&["catalog", "run", "no-such-entry"])), 2);
    assert_eq!(code(&liefol(&["catalog", "run", "familia1", "--n", "4"])), 2);
    assert_eq!(
        code(&liefol(&["rigidity", "inputs/familia1.json"])),
        2,
        "parametric fields need --t"
    );
    assert_eq!(
        code(&liefol(&["cohomology", "inputs/sl2-broken.json", "--degree", "1"])),
        2
    );
}

#[test]
fn json_errors_are_structured() {
    let (r, exit) = json(&["catalog", "run", "nope"]);
    assert_eq!(exit, 2);
    assert_eq!(r["error"]["kind"], "input");
}

#[test]
fn subalgebra_flag_overrides_document() {
    // span{h} in sl2: L/g = span{e, f} with weights ±2, no invariants.
    let (r, exit) = json(&["rigidity", "inputs/sl2-aff.json", "--subalgebra", "0"]);
    assert_eq!(exit, 0);
    assert_eq!(r["results"]["dim g"], 1);
    assert_eq!(r["results"]["dim Z1"], 2);
    assert_eq!(r["results"]["dim B1"], 2);
}

#[test]
fn cohomology_of_adjoint_sl2_vanishes() {
    let doc = temp_doc(
        r#"{"kind": "structure", "dim": 3, "names": ["h", "e", "f"],
            "brackets": [[0, 1, [[1, 2]]], [0, 2, [[2, -2]]], [1, 2, [[0, 1]]]]}"#,
    );
    for k in ["1", "2"] {
        let (r, exit) = json(&["cohomology", doc.path().to_str().unwrap(), "--degree", k]);
        assert_eq!(exit, 0);
        assert_eq!(r["results"][format!("dim H{k}")], 0);
    }
}

#[test]
fn catalog_list_names_every_entry() {
    let (r, exit) = json(&["catalog", "list"]);
    assert_eq!(exit, 0);
    assert_eq!(r["results"]["entries"].as_array().unwrap().len(), 6);
}
