use std::process::{Command, Output};

use redei_berge::qsym::{QSymElement, SymElement};

fn redei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EDGE: &str = r#"{"n":2,"edges":[[1,2]]}"#;
const TRIANGLE: &str = r#"{"n":3,"edges":[[1,2],[2,3],[3,1]]}"#;

#[test]
fn compute_examples() {
    let o = redei(&["compute", "--input", EDGE, "--basis", "p"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "p[1,1]: 1");

    let l3 = r#"{"n":3,"relations":[[1,2],[2,3]],"relations_kind":"cover"}"#;
    let o = redei(&["compute", "--kind", "poset", "--input", l3, "--basis", "p"]);
    assert_eq!(stdout(&o).trim(), "p[1,1,1]: 1");

    let o = redei(&["compute", "--kind", "permutation", "--input", r#"{"one_line":[2,1]}"#]);
    assert_eq!(stdout(&o).trim(), "p[1,1]: 1, p[2]: 1");

    let o = redei(&["compute", "--input", EDGE, "--basis", "F", "--check-symmetric"]);
    assert_eq!(stdout(&o), "F[1,1]: 1, F[2]: 1\nsymmetric: true\n");
}

#[test]
fn json_output_round_trips() {
    let o = redei(&["--format", "json", "compute", "--input", TRIANGLE, "--basis", "p"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let u = SymElement::from_json(&v["u"]).unwrap();
    assert_eq!(u.to_string(), "p[1,1,1]: 1, p[3]: 2");

    let o = redei(&["--format", "json", "compute", "--input", TRIANGLE, "--basis", "M"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = QSymElement::from_json(&v["u"]).unwrap();
    assert_eq!(m.to_fundamental().mass(), 6.into());
}

#[test]
fn text_digraph_input_from_file() {
    let dir = std::env::temp_dir().join(format!("redei-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("edge.txt");
    std::fs::write(&path, "2; 1 2").unwrap();
    let o = redei(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "p[1,1]: 1");
}

#[test]
fn poly_examples() {
    assert_eq!(stdout(&redei(&["poly", "--input", EDGE, "--m", "2"])).trim(), "4");
    let d2 = r#"{"n":2,"edges":[]}"#;
    assert_eq!(stdout(&redei(&["poly", "--input", d2, "--m", "2"])).trim(), "6");
    assert_eq!(stdout(&redei(&["poly", "--input", TRIANGLE, "--m", "0"])).trim(), "0");
}

#[test]
fn invariants_examples() {
    let o = redei(&["--format", "json", "invariants", "--input", EDGE]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nonloop_edges"], 1);
    assert_eq!(v["path_counts"]["1"], 2);
    assert_eq!(v["path_counts"]["2"], 1);

    let o = redei(&["--format", "json", "invariants", "--input", TRIANGLE]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["odd_cycles"]["3"], 1);

    let anti = r#"{"n":2,"relations":[],"relations_kind":"cover"}"#;
    let o = redei(&["--format", "json", "invariants", "--kind", "poset", "--input", anti]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["incomparable_pairs"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(redei(&["verify", "no-such-suite"]).status.code(), Some(2));
    let bad = r#"{"n":2,"edges":[[1,3]]}"#;
    assert_eq!(redei(&["compute", "--input", bad]).status.code(), Some(2));
    assert_eq!(redei(&["compute", "--input", "{not json"]).status.code(), Some(2));
    let big = r#"{"n":11,"edges":[]}"#;
    assert_eq!(redei(&["compute", "--input", big]).status.code(), Some(3));
    assert_eq!(redei(&["search", "digraphs", "--n", "5"]).status.code(), Some(3));
    assert_eq!(redei(&["bases", "xnk", "--max-n", "9"]).status.code(), Some(3));
    let cyclic = r#"{"n":3,"relations":[[1,2],[2,1]],"relations_kind":"full"}"#;
    assert_eq!(redei(&["compute", "--kind", "poset", "--input", cyclic]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [("redei", "5"), ("oracle", "4"), ("dual", "4"), ("berge", "3"), ("morphisms", "3")] {
        let o = redei(&["verify", suite, "--n", n]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!("PASS {suite}")));
    }
    let o = redei(&["--format", "json", "--seed", "11", "verify", "oracle", "--n", "5", "--samples", "20"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["checked"], 20);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let a = redei(&["--threads", "1", "search", "posets", "--n", "5"]);
    let b = redei(&["--threads", "3", "search", "posets", "--n", "5"]);
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.contains("\"threads\""))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    let a = redei(&["--threads", "1", "compute", "--input", TRIANGLE, "--basis", "F"]);
    let b = redei(&["--threads", "4", "compute", "--input", TRIANGLE, "--basis", "F"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_reports() {
    let o = redei(&["search", "chain-unions", "--n", "6"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["seed"], 0);
    let groups: Vec<_> = lines.iter().filter(|l| l.get("members").is_some()).collect();
    assert_eq!(groups.len(), 11);
    assert!(groups.iter().all(|g| g["members"].as_array().unwrap().len() == 1));

    let o = redei(&["search", "posets", "--max-n", "3"]);
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["verdict"], "no counterexample found for n ≤ 3");
    for l in stdout(&o).lines().filter(|l| l.contains("\"members\"")) {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        for key in ["class", "n", "u_key", "members", "m_plus_M", "conjecture_ok"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn search_appends_to_results_file() {
    let dir = std::env::temp_dir().join(format!("redei-search-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.jsonl");
    let _ = std::fs::remove_file(&path);
    for _ in 0..2 {
        redei(&["search", "path-unions", "--n", "3", "--output", path.to_str().unwrap()]);
    }
    let text = std::fs::read_to_string(&path).unwrap();
    // header, 3 groups, summary; twice
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn bases_report() {
    let o = redei(&["bases", "xnk", "--k", "1", "--max-n", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("conditions hold").count(), 5);
    assert!(!text.contains("dominance-triangular: false"));
    let o = redei(&["--format", "json", "bases", "discrete", "--max-n", "2"]);
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[2]["matrix"]["entries"], serde_json::json!([["1", "1"], ["0", "1"]]));
}
