//! Exit codes and reports of the documented command-line scenarios.

use std::path::{Path, PathBuf};

use mlat_cli::{run, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use mlat_core::corpus::write_shipped_corpus;
use tempfile::TempDir;

fn corpus() -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus");
    write_shipped_corpus(&path).unwrap();
    (dir, path)
}

fn arg(p: &Path) -> String {
    p.display().to_string()
}

fn mlat(args: &[&str]) -> (i32, String) {
    run(std::iter::once("mlat").chain(args.iter().copied()))
}

#[test]
fn validate_reports_valid() {
    let (_d, c) = corpus();
    let (code, text) = mlat(&["validate", &arg(&c.join("v4.mla"))]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(text, "valid\n");
}

#[test]
fn validate_rejects_a_broken_star() {
    let (_d, c) = corpus();
    let text = std::fs::read_to_string(c.join("c3.mla")).unwrap();
    let broken = text.replacen(
        "\"star\": [\n    [0, 0, 0],\n    [0, 0, 0]",
        "\"star\": [\n    [0, 0, 0],\n    [0, 1, 0]",
        1,
    );
    assert_ne!(broken, text);
    let path = c.join("broken.json");
    std::fs::write(&path, broken).unwrap();
    let out = c.join("broken-report.json");
    let (code, text) = mlat(&["validate", &arg(&path), "--out", &arg(&out)]);
    assert_eq!(code, EXIT_NEGATIVE, "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["valid"], false);
    assert_eq!(report["violations"][0]["axiom"], "1");
    assert_eq!(report["violations"][0]["witness"], serde_json::json!([1]));
}

#[test]
fn missing_and_malformed_inputs_are_usage_errors() {
    let (_d, c) = corpus();
    assert_eq!(mlat(&["validate", "/nonexistent/x.mla"]).0, EXIT_USAGE);
    let bad = c.join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(mlat(&["invariants", &arg(&bad)]).0, EXIT_USAGE);
    assert_eq!(mlat(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(mlat(&["--help"]).0, EXIT_OK);
}

#[test]
fn isoclinic_abelian_pair() {
    let (_d, c) = corpus();
    let (code, text) = mlat(&[
        "isoclinic",
        &arg(&c.join("c4.mla")),
        &arg(&c.join("v4.mla")),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("isoclinic"), "{text}");
    let (code, _) = mlat(&[
        "isoclinic",
        &arg(&c.join("d4.mla")),
        &arg(&c.join("c8.mla")),
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
}

#[test]
fn tensor_methods_and_preconditions() {
    let (_d, c) = corpus();
    assert_eq!(
        mlat(&["tensor", &arg(&c.join("d4.mla")), "--method", "snf"]).0,
        EXIT_USAGE
    );
    let (code, text) = mlat(&["tensor", &arg(&c.join("c6.mla"))]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("order 6 via snf"), "{text}");
    let out = c.join("v4-tensor.json");
    let (code, _) = mlat(&[
        "tensor",
        &arg(&c.join("v4.mla")),
        "--method",
        "enumeration",
        "--out",
        &arg(&out),
    ]);
    assert_eq!(code, EXIT_OK);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["order"], 16);
    assert_eq!(report["method"], "enumeration");
    assert_eq!(report["gen_map"].as_array().unwrap().len(), 4);
    // a budget too small for the enumeration
    let (code, _) = mlat(&[
        "tensor",
        &arg(&c.join("d4.mla")),
        "--method",
        "enumeration",
        "--budget",
        "5",
    ]);
    assert_eq!(code, EXIT_BUDGET);
    // over the enumeration bound
    assert_eq!(mlat(&["tensor", &arg(&c.join("d4xc2.mla"))]).0, EXIT_BUDGET);
}

#[test]
fn quotient_by_an_ideal() {
    let (_d, c) = corpus();
    let (code, text) = mlat(&["quotient", &arg(&c.join("d4.mla")), "--ideal", "0,2"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("quotient of order 4"), "{text}");
    assert_eq!(
        mlat(&["quotient", &arg(&c.join("d4.mla")), "--ideal", "0,4"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        mlat(&["quotient", &arg(&c.join("d4.mla")), "--ideal", "0,99"]).0,
        EXIT_USAGE
    );
}

#[test]
fn extension_commands() {
    let (_d, c) = corpus();
    let (d4, q8) = (
        arg(&c.join("d4_over_v4.ext")),
        arg(&c.join("q8_over_v4.ext")),
    );
    let (code, text) = mlat(&["ext-isoclinic", &d4, &q8]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(!text.contains("finding"));
    let (code, text) = mlat(&["stem-reduce", &arg(&c.join("d4xc2_over_centre.ext"))]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.starts_with("J = {0,1}"), "{text}");
    let (code, _) = mlat(&["ext-isoclinic", &d4, &arg(&c.join("v4_over_c2.ext"))]);
    assert_eq!(code, EXIT_NEGATIVE);
}

#[test]
fn pullback_along_the_identity() {
    let (_d, c) = corpus();
    let d4 = arg(&c.join("d4_over_v4.ext"));
    let (code, text) = mlat(&["pullback", &d4, &d4, "--nu", "[0,1,2,3]"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.starts_with("pullback of order 16"), "{text}");
    // collapsing V₄ to the identity is a homomorphism but not onto
    let (code, text) = mlat(&["pullback", &d4, &d4, "--nu", "[0,0,0,0]"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert_eq!(
        mlat(&["pullback", &d4, &d4, "--nu", "[0,1,1,3]"]).0,
        EXIT_USAGE
    );
}

#[test]
fn check_suites_and_corpus_errors() {
    let (_d, c) = corpus();
    let (code, text) = mlat(&["check", "quotient-center", "--corpus", &arg(&c)]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.contains("PASS"));
    assert_eq!(
        mlat(&["check", "no-such-suite", "--corpus", &arg(&c)]).0,
        EXIT_USAGE
    );

    let empty = c.parent().unwrap().join("empty");
    std::fs::create_dir_all(&empty).unwrap();
    let (code, text) = mlat(&["check", "stem-reduce", "--corpus", &arg(&empty)]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("warning: vacuous"), "{text}");

    std::fs::write(c.join("c5.mla"), "not json").unwrap();
    let (code, text) = mlat(&["check", "axioms", "--corpus", &arg(&c)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(text.contains("c5.mla"), "{text}");
}

#[test]
fn shipped_corpus_matches_the_generator() {
    let (_d, fresh) = corpus();
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut names: Vec<_> = std::fs::read_dir(&fresh)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    let mut shipped_names: Vec<_> = std::fs::read_dir(&shipped)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    shipped_names.sort();
    assert_eq!(names, shipped_names);
    for n in names {
        assert_eq!(
            std::fs::read(fresh.join(&n)).unwrap(),
            std::fs::read(shipped.join(&n)).unwrap(),
            "{n:?}"
        );
    }
}
