use std::process::{Command, Output};

use tempfile::TempDir;

fn taxo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taxo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const DIAMOND: &str =
    "name: diamond\nelements: bot a b top\ncovers:\nbot < a\nbot < b\na < top\nb < top\n";

#[test]
fn lambda_of_the_diamond_has_three_classes() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "diamond.poset", DIAMOND);
    let out = taxo(&["lambda", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("λ(P): 3 classes"), "{text}");
    assert!(text.contains("{a, b}"));
    assert!(text.contains("covers: bot < a, a < top"));
}

#[test]
fn two_has_two_adjunctions() {
    let out = taxo(&["adjunctions", "two", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn disjoint_union_fails_the_restriction_clause() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "u.poset",
        "elements: a b c d\ncovers:\na < b\nc < d\n",
    );
    let out = taxo(&[
        "verify",
        "vankampen-lambda",
        &file,
        "--p1",
        "a,b",
        "--p2",
        "c,d",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("restriction property"), "{text}");
    assert!(text.contains("FAILS: pushout ≅ λ(P)"));
}

#[test]
fn diamond_dot_has_four_nodes_and_four_edges() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("d.dot");
    let out = taxo(&["catalog", "diamond", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("[label=").count(), 4);
    assert_eq!(text.matches(" -> ").count(), 4);
}

#[test]
fn lambda_dot_uses_class_labels() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("l.dot");
    taxo(&["chains", "two", "--dot", dot.to_str().unwrap()]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("label=\"0<1\""), "{text}");
}

fn without_timing(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["fundamental", "--source", "two", "diamond", "--json"];
    let (a, b) = (taxo(&args), taxo(&args));
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (stdout(&a), stdout(&b));
    assert_eq!(without_timing(&a), without_timing(&b));
    let v = without_timing(&a);
    assert_eq!(v["schema"], "taxotopy-report/1");
    assert_eq!(v["inputs"][1]["covers"].as_array().unwrap().len(), 4);
    assert!(v["results"][0]["classes"].is_array());
}

#[test]
fn catalog_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = taxo(&["catalog", "X"]);
    let file = write(&dir, "x.poset", &stdout(&out));
    let again = taxo(&["reduce", &file, "--json"]);
    let v = without_timing(&stdout(&again));
    assert_eq!(v["inputs"][0]["name"], "X");
    assert_eq!(v["inputs"][0]["covers"].as_array().unwrap().len(), 4);
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.poset", "elements: a b\ncovers:\na < z\n");
    let out = taxo(&["lambda", &file]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 1"), "{err}");
    assert_eq!(taxo(&["lambda", "no-such-poset"]).status.code(), Some(2));
}

#[test]
fn size_limits_exit_four_and_can_be_raised() {
    assert_eq!(taxo(&["lambda", "n(11)"]).status.code(), Some(4));
    assert_eq!(
        taxo(&["adjunctions", "n(8)", "--count"]).status.code(),
        Some(4)
    );
    let out = taxo(&["adjunctions", "n(8)", "--count", "--max-heavy", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn star_counterexample_exits_three() {
    let dir = TempDir::new().unwrap();
    // {0,1} < 2 < {3,4,5}
    let file = write(
        &dir,
        "fan.poset",
        "elements: 0 1 2 3 4 5\ncovers:\n0 < 2\n1 < 2\n2 < 3\n2 < 4\n2 < 5\n",
    );
    let out = taxo(&[
        "verify",
        "vankampen-star",
        &file,
        "--block",
        "0,1,2",
        "--block",
        "2,3,4,5",
        "--block",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAILS: limit ≅ Λ*(S,P_⊥)"));
}

#[test]
fn verify_verbs_on_small_cases() {
    for args in [
        &["verify", "cone", "V"][..],
        &["verify", "tunnel", "n(5)"],
        &["verify", "paris", "diamond"],
        &["verify", "paris-star", "bowtie", "--n", "1"],
        &["verify", "disjoint", "two"],
        &["verify", "rigid", "X"],
        &["verify", "null", "diamond"],
        &["check", "subw", "diamond", "--subset", "bot,a,b,top"],
        &["check", "cover", "n(3)", "--block", "0,1,2"],
    ] {
        let out = taxo(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
    assert_eq!(taxo(&["verify", "null", "V"]).status.code(), Some(1));
    assert_eq!(
        taxo(&["verify", "paris-star", "X", "--n", "1", "--m", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        taxo(&["check", "subw", "diamond", "--subset", "a"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn search_reports_instances() {
    let out = taxo(&[
        "search",
        "--max-size",
        "4",
        "--hypothesis",
        "vk-lambda",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = without_timing(&stdout(&out));
    assert!(!v["tables"][0]["rows"].as_array().unwrap().is_empty());
}
