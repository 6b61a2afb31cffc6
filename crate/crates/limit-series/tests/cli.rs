//! End-to-end tests of the `llseries` binary: document flow between
//! subcommands, exit-code conventions, stdin input and pretty printing.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_llseries")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn run_with_stdin(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    // the child may exit before reading (flag errors precede input); a
    // broken pipe here is fine, the exit code tells the story
    let _ = child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

const DESK_SERIES: &str = concat!(
    r#"{"V":[{"cols":2,"entries":[[0,1]],"field":{"Fp":2},"rows":1},"#,
    r#"{"cols":2,"entries":[[0,1]],"field":{"Fp":2},"rows":1},"#,
    r#"{"cols":2,"entries":[[0,1]],"field":{"Fp":2},"rows":1}],"#,
    r#""d":1,"delta":2,"field":{"Fp":2},"r":0}"#
);

/// The non-exact level-1 series spanned by (y, 0) and (0, z).
const FLAT_SERIES: &str = concat!(
    r#"{"V":[{"cols":2,"entries":[[1,0]],"field":{"Fp":2},"rows":1},"#,
    r#"{"cols":2,"entries":[[0,1]],"field":{"Fp":2},"rows":1}],"#,
    r#""d":1,"delta":1,"field":{"Fp":2},"r":0}"#
);

#[test]
fn numerical_function_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let nf_a = write_file(&dir, "nfA.json", r#"{"hi":1,"lo":0,"n":2,"pqm":[[0,2,0]]}"#);

    let (code, out) = run(&["nf-check", &nf_a]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"admissible\":true,\"exact\":false}\n");

    let (code, refined) = run(&["nf-refine", "--c", "2", "--ell", "1", &nf_a]);
    assert_eq!(code, 0);
    let fprime = write_file(&dir, "fprime.json", refined.trim());

    let (code, out) = run(&["nf-check", &fprime]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"admissible\":true,\"exact\":true}\n");

    let (code, out) = run(&["nf-refinements", "--c", "2", &nf_a]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let count = doc["count"].as_u64().unwrap();
    assert!(count >= 2, "expected several refinements, got {}", count);
    assert_eq!(doc["refinements"].as_array().unwrap().len() as u64, count);

    let (code, out) = run(&["nf-fiberdim", "--c", "2", &fprime]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"dimension\":4}\n");

    // a tiny enumeration cap is a domain error, naming the bound
    let (code, out) = run(&["nf-refinements", "--c", "2", "--bound", "1", &nf_a]);
    assert_eq!(code, 1);
    assert!(out.contains("bound of 1"), "{}", out);

    // a function violating admissibility is still a report, not an error
    let bad = write_file(&dir, "bad.json", r#"{"hi":2,"lo":0,"n":2,"pqm":[[0,0,2],[0,0,2]]}"#);
    let (code, out) = run(&["nf-check", &bad]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["admissible"], serde_json::Value::Bool(false));
    assert!(doc["first_failure"].as_str().unwrap().contains("index 0"));

    // but refining it is a domain error: exit 1
    let (code, out) = run(&["nf-refine", "--c", "2", "--ell", "1", &bad]);
    assert_eq!(code, 1);
    assert!(out.starts_with("{\"error\":"));
}

#[test]
fn linked_sequence_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    // the pure jump for n = 1: one zero-zero edge
    let zero = r#"{"cols":1,"entries":[[0]],"field":{"Fp":2},"rows":1}"#;
    let seq = write_file(
        &dir,
        "seq.json",
        &format!(
            r#"{{"dn":[{z}],"field":{{"Fp":2}},"hi":1,"lo":0,"n":1,"up":[{z}]}}"#,
            z = zero
        ),
    );

    let (code, out) = run(&["ls-validate", &seq]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"valid\":true,\"violations\":[]}\n");

    let (code, out) = run(&["ls-profile", &seq]);
    assert_eq!(code, 0);
    // trims to an empty inclusive window
    assert_eq!(out, "{\"hi\":0,\"lo\":1,\"n\":1,\"pqm\":[]}\n");

    let (code, out) = run(&["ls-expand", &seq]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schedule"], serde_json::json!([0]));
    assert_eq!(doc["expanded"]["n"], serde_json::json!(1));

    // an axiom violation is reported with exit 0 by ls-validate
    let one = r#"{"cols":1,"entries":[[1]],"field":{"Fp":2},"rows":1}"#;
    let invalid = write_file(
        &dir,
        "invalid.json",
        &format!(
            r#"{{"dn":[{o}],"field":{{"Fp":2}},"hi":1,"lo":0,"n":1,"up":[{o}]}}"#,
            o = one
        ),
    );
    let (code, out) = run(&["ls-validate", &invalid]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["valid"], serde_json::Value::Bool(false));
    // ... but asking for its profile is a domain error
    let (code, _) = run(&["ls-profile", &invalid]);
    assert_eq!(code, 1);
}

#[test]
fn series_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let series = write_file(&dir, "series.json", DESK_SERIES);
    let flat = write_file(&dir, "flat.json", FLAT_SERIES);

    let (code, out) = run(&["series-validate", &series]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"valid\":true,\"violations\":[]}\n");

    let (code, out) = run(&["series-profile", &series]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"hi\":1,\"lo\":0,\"n\":1,\"pqm\":[[0,0,1]]}\n");

    let (code, out) = run(&["series-forget", "--delta", "1", &series]);
    assert_eq!(code, 0);
    let forgotten = write_file(&dir, "forgotten.json", out.trim());
    let (code, out) = run(&["series-profile", &forgotten]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"hi\":1,\"lo\":0,\"n\":1,\"pqm\":[[0,0,1]]}\n");

    // lift the flat series along its exact refinement and compare loci
    let (code, out) = run(&["series-profile", &flat]);
    assert_eq!(code, 0);
    let flat_profile = write_file(&dir, "flat_profile.json", out.trim());
    let (code, out) = run(&["nf-refine", "--c", "2", "--ell", "1", &flat_profile]);
    assert_eq!(code, 0);
    let refined = write_file(&dir, "refined.json", out.trim());
    let (code, out) = run(&[
        "series-lift",
        "--c",
        "2",
        "--fprime",
        &refined,
        "--seed",
        "5",
        &flat,
    ]);
    assert_eq!(code, 0);
    let lifted = write_file(&dir, "lifted.json", out.trim());

    let (code, out) = run(&["series-compare", &flat, &lifted]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["coarse_exact"], serde_json::Value::Bool(false));
    assert_eq!(doc["refined_exact"], serde_json::Value::Bool(true));
    assert_eq!(doc["inclusion_holds"], serde_json::Value::Bool(true));
    assert_eq!(doc["dichotomy_holds"], serde_json::Value::Bool(true));
    assert_eq!(doc["extra_components"], serde_json::json!([1]));

    // comparing unrelated series is a domain error
    let (code, _) = run(&["series-compare", &series, &flat]);
    assert_eq!(code, 1);
}

#[test]
fn stdin_pretty_and_exit_codes() {
    // "-" reads the document from standard input
    let (code, out) = run_with_stdin(
        &["nf-check", "-"],
        r#"{"hi":1,"lo":0,"n":2,"pqm":[[0,1,1]]}"#,
    );
    assert_eq!(code, 0);
    assert_eq!(out, "{\"admissible\":true,\"exact\":false}\n");

    // pretty printing keeps the key order
    let (code, out) = run_with_stdin(
        &["nf-check", "--pretty", "-"],
        r#"{"hi":1,"lo":0,"n":2,"pqm":[[0,1,1]]}"#,
    );
    assert_eq!(code, 0);
    assert!(out.contains("\n  \"admissible\": true"));

    // malformed JSON: exit 2
    let (code, out) = run_with_stdin(&["nf-check", "-"], "{broken");
    assert_eq!(code, 2);
    assert!(out.starts_with("{\"error\":"));

    // schema violation: exit 2
    let (code, _) = run_with_stdin(&["nf-check", "-"], r#"{"lo":0,"hi":1,"pqm":[[0,1,1]]}"#);
    assert_eq!(code, 2);

    // missing file: exit 2
    let (code, _) = run(&["nf-check", "/nonexistent/path.json"]);
    assert_eq!(code, 2);

    // unknown subcommand: exit 2 (usage error)
    let (code, _) = run(&["definitely-not-a-command"]);
    assert_eq!(code, 2);

    // a bad --field flag is rejected even when unused by the command
    let (code, _) = run_with_stdin(
        &["nf-check", "--field", "Fp:6", "-"],
        r#"{"hi":1,"lo":0,"n":2,"pqm":[[0,1,1]]}"#,
    );
    assert_eq!(code, 2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let series = write_file(&dir, "series.json", DESK_SERIES);
    let first = run(&["series-divisors", &series]);
    let second = run(&["series-divisors", &series]);
    assert_eq!(first, second);
    let (code, out) = first;
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"S\":[0],\"exact\":true,\"points\":[{\"kP\":0,\"kQY\":1,\"kQZ\":0,\"uY\":[1],\"uZ\":[1]}]}\n"
    );
}
