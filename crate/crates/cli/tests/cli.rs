use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const PFAFFIAN_PAIR: &str = r#"{"dims":[2,2],"arrows":[{"tail":[1,1],"head":[1,2],"label":1},{"tail":[2,1],"head":[2,2],"label":2}]}"#;
const MISSING_ARROW: &str = r#"{"dims":[2,2],"arrows":[{"tail":[1,1],"head":[1,2],"label":1}]}"#;

fn pfaff(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pfaff"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

#[test]
fn verify_order_two_pfaffian_pair() {
    let out = pfaff(&["verify", "--q1", "1", "--q2", "2"], PFAFFIAN_PAIR);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["equal"], true);
    assert_eq!(r["quadruple_count"], 2);
    let words: Vec<&str> = r["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["closed_words"][0]["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, vec!["1·2^t", "1·2"]);
    let signs: Vec<i64> = r["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["sign"].as_i64().unwrap())
        .collect();
    assert_eq!(signs, vec![1, -1]);
}

#[test]
fn validate_reports_uncovered_cells() {
    let out = pfaff(&["validate"], MISSING_ARROW);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(2,1)") && err.contains("(2,2)"), "{err}");
}

#[test]
fn malformed_json_is_a_usage_error() {
    assert_eq!(pfaff(&["bpf"], "{not json").status.code(), Some(2));
    assert_eq!(
        pfaff(&["bpf"], r#"{"dims":[2],"arrows":[],"extra":1}"#)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn missing_glued_columns_is_a_usage_error() {
    assert_eq!(pfaff(&["verify"], PFAFFIAN_PAIR).status.code(), Some(2));
}

#[test]
fn guard_needs_opt_in() {
    let big = r#"{"dims":[10],"arrows":[
        {"tail":[1,1],"head":[1,2],"label":1},{"tail":[1,3],"head":[1,4],"label":1},
        {"tail":[1,5],"head":[1,6],"label":1},{"tail":[1,7],"head":[1,8],"label":1},
        {"tail":[1,9],"head":[1,10],"label":1}]}"#;
    let out = pfaff(&["bpf"], big);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("--unsafe-large"));
}

#[test]
fn corpus_pipes_into_verify_all() {
    let corpus = pfaff(
        &["corpus", "--seed", "7", "--max-cells", "8", "--count", "50"],
        "",
    );
    assert_eq!(corpus.status.code(), Some(0));
    let text = String::from_utf8(corpus.stdout).unwrap();
    assert_eq!(text.lines().count(), 50);
    let again = pfaff(
        &["corpus", "--seed", "7", "--max-cells", "8", "--count", "50"],
        "",
    );
    assert_eq!(again.stdout, text.as_bytes());
    let out = pfaff(&["verify-all"], &text);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(report(&out)["checked"], 50);
}

#[test]
fn corpus_lines_validate() {
    let corpus = pfaff(&["corpus", "--seed", "11", "--count", "20"], "");
    for line in String::from_utf8(corpus.stdout).unwrap().lines() {
        assert_eq!(pfaff(&["validate"], line).status.code(), Some(0), "{line}");
    }
}

#[test]
fn text_mode_prints_polynomials() {
    let out = pfaff(&["--text", "bpf"], PFAFFIAN_PAIR);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "bpf: x[1,2](1)*x[1,2](2) - x[1,2](1)*x[2,1](2) - x[2,1](1)*x[1,2](2) + x[2,1](1)*x[2,1](2)");
}

#[test]
fn identity_checks_succeed() {
    for args in [
        vec!["lemma2", "--q1", "1", "--q2", "2"],
        vec!["classes", "--q1", "1", "--q2", "2"],
        vec!["newton", "--q1", "1", "--q2", "2"],
        vec!["decompose", "--q1", "1", "--q2", "2"],
    ] {
        let out = pfaff(&args, PFAFFIAN_PAIR);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
    for args in [
        vec!["amitsur", "--n", "3", "--ks", "2,1"],
        vec!["pfprod", "--n", "4"],
        vec!["sigma", "--n", "3", "--k", "3"],
        vec!["pf", "--generic", "4"],
    ] {
        let out = pfaff(&args, "");
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn pfprod_order_four_has_six_terms() {
    let r = report(&pfaff(&["pfprod", "--n", "4"], ""));
    assert_eq!(r["equal"], true);
    assert_eq!(r["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn pf_of_integer_matrix() {
    let out = pfaff(
        &["--text", "pf", "-"],
        r#"{"rows":2,"cols":2,"entries":[[0,3],[1,0]]}"#,
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "pf: 2");
}

#[test]
fn reports_are_deterministic() {
    let a = pfaff(&["decompose", "--q1", "1", "--q2", "2"], PFAFFIAN_PAIR).stdout;
    let b = pfaff(&["decompose", "--q1", "1", "--q2", "2"], PFAFFIAN_PAIR).stdout;
    assert_eq!(a, b);
}
