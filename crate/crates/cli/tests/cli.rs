use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn esparql(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esparql"))
        .args(args)
        .env_remove("ESPARQL_VOCAB_NS")
        .output()
        .expect("binary runs")
}

fn query(q: &str, extra: &[&str]) -> Output {
    let graph = fixture("table1.f4s");
    let query = fixture(q);
    let mut args = vec!["query", "--graph", graph.to_str().unwrap(), "--query", query.to_str().unwrap()];
    args.extend_from_slice(extra);
    esparql(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn u1_prints_a_table() {
    let o = query("u1.esq", &["--show-default"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "deity | state\n------+--------\nJesus | true\n*     | unknown\n");
}

#[test]
fn use_case_answers() {
    let o = query("u2.esq", &["--format", "csv"]);
    assert_eq!(stdout(&o), "deity,state\nJesus,conflicted\n");
    let o = query("u3.esq", &["--format", "csv", "--show-default"]);
    assert_eq!(stdout(&o), "x,state\nArius,true\nChristianity,true\n*,false\n");
    let o = query("u4.esq", &["--format", "json-lines"]);
    assert_eq!(stdout(&o), "{\"x\":\"PopeDI\",\"state\":\"false\"}\n");
    let o = query("u4-mapped.esq", &["--format", "json-lines"]);
    assert_eq!(stdout(&o), "{\"x\":\"PopeDI\",\"state\":\"true\"}\n");
}

#[test]
fn inline_queries_and_base_iri() {
    let graph = fixture("table1.f4s");
    let o = esparql(&[
        "query",
        "--graph",
        graph.to_str().unwrap(),
        "--eval",
        "SELECT ?x WHERE { ?x a <Christian> }",
        "--base-iri",
        "urn:elsewhere:",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x | state\n--+------\n");
}

#[test]
fn exit_codes() {
    let o = query("bad.esq", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 1"), "{}", stderr(&o));

    let o = query("unused-projection.esq", &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("?z"));

    let o = query("meet-disjoint.esq", &["--mode", "open"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(query("meet-disjoint.esq", &[]).status.code(), Some(0));

    let o = query("meet-disjoint.esq", &["--cap", "3"]);
    assert_eq!(o.status.code(), Some(5));

    let dup = fixture("duplicate.f4s");
    let o = esparql(&["query", "--graph", dup.to_str().unwrap(), "--eval", "SELECT * WHERE { ?s ?p ?o }"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate triple"));

    let o = esparql(&["query", "--graph", "/nonexistent.f4s", "--eval", "SELECT * WHERE { ?s ?p ?o }"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn vocabulary_namespace_changes_belief_predicates() {
    let graph = fixture("table1.f4s");
    let o = Command::new(env!("CARGO_BIN_EXE_esparql"))
        .args(["query", "--graph", graph.to_str().unwrap(), "--query", fixture("u1.esq").to_str().unwrap()])
        .env("ESPARQL_VOCAB_NS", "urn:other#")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "deity | state\n------+------\n");
}

#[test]
fn check_reports_graph_and_query() {
    let graph = fixture("table1.f4s");
    let o = esparql(&["check", "--graph", graph.to_str().unwrap(), "--query", fixture("u2.esq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 stated triple(s)"));
    assert!(stdout(&o).contains("?deity"));
    let o = esparql(&["check", "--query", fixture("unused-projection.esq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn diff_agrees_and_catches_an_injected_fault() {
    let o = esparql(&["diff", "--seed", "7", "--cases", "60"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("60 case(s) agreed"));
    let o = esparql(&["diff", "--seed", "7", "--cases", "300", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn repl_reads_queries_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_esparql"))
        .args(["repl", "--graph", fixture("table1.f4s").to_str().unwrap(), "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"SELECT INFO ?deity FROM BELIEF <PopeDI>\nWHERE { ?deity a <FullDeity> }\n\n:mode open\n:quit\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "deity,state\nJesus,true\n");
}
