use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pathgraph::certificate::{verify_certificate, ForbiddenWitness};
use pathgraph::chordal::is_chordal;
use pathgraph::selftest::{WORKED_EXAMPLE, TRIPLE_FAN};
use pathgraph::separation::{build_profile, quotient_profile};
use pathgraph::{parse_edge_list, VertexId};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathgraph"))
        .args(args)
        .env_remove("PATHGRAPH_MAX_CLIQUES")
        .env_remove("PATHGRAPH_TREE_CLIQUES")
        .env_remove("PATHGRAPH_SAMPLES")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn recognize_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "example.txt", WORKED_EXAMPLE);
    let fan = write(dir.path(), "fan.txt", TRIPLE_FAN);
    let c4 = write(dir.path(), "c4.txt", "a b\nb c\nc d\nd a\n");

    let o = run(&["recognize", &fig]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("path graph (2 clique separators)"));
    assert!(stdout(&o).contains("clique path tree:"));

    let o = run(&["recognize", &fan]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not a path graph"));

    let o = run(&["recognize", &c4]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("chordless cycle"));
}

#[test]
fn certificate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let fan = write(dir.path(), "fan.txt", TRIPLE_FAN);
    let o = run(&["recognize", "--certificate", &fan]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let json: serde_json::Value = serde_json::from_str(&out[out.find("\n{\n").unwrap() + 1..]).unwrap();
    assert_eq!(json["verdict"], "not_path_graph");
    assert_eq!(json["certificate"]["kind"], "full_antipodal_triple");
    assert_eq!(json["certificate"]["witness_vertex"], "x");

    let separator: Vec<VertexId> = serde_json::from_value(json["separator"].clone()).unwrap();
    let w = ForbiddenWitness::from_json(separator.clone(), &json["certificate"]).unwrap();
    let (g, _) = parse_edge_list(TRIPLE_FAN).unwrap();
    let labels: Vec<&str> = separator.iter().map(VertexId::as_str).collect();
    let profile = quotient_profile(&build_profile(&g, &g.set_of(&labels).unwrap()).unwrap());
    assert!(verify_certificate(&profile, &w));
}

#[test]
fn dot_dir_gets_one_file_per_separator() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "example.txt", WORKED_EXAMPLE);
    let out = dir.path().join("dots");
    let o = run(&["recognize", &fig, "--dot-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["separator-0.dot", "separator-1.dot"]);
    let dot = fs::read_to_string(out.join("separator-0.dot")).unwrap();
    assert!(dot.starts_with("digraph attachedness {"));
    assert!(dot.contains("dir=none"));
}

#[test]
fn input_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "a b c\n");
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&run(&["recognize", &bad])), 4);
    assert_eq!(code(&run(&["recognize", missing.to_str().unwrap()])), 4);
    assert_eq!(code(&run(&["recognize"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "example.txt", WORKED_EXAMPLE);
    let fan = write(dir.path(), "fan.txt", TRIPLE_FAN);
    let o = run(&["oracle", &fig]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("a: abc\n"));
    assert_eq!(code(&run(&["oracle", &fan])), 1);
    assert_eq!(code(&run(&["oracle", &fan, "--max-cliques", "3"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_pathgraph"))
        .args(["oracle", &fan])
        .env("PATHGRAPH_MAX_CLIQUES", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn attachedness_export() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "example.txt", WORKED_EXAMPLE);
    let o = run(&["attachedness", &fig, "--separator", "1", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 3);
    let o = run(&["attachedness", &fig, "--separator", "0", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["separator"], serde_json::json!(["b", "c", "e"]));
    assert_eq!(code(&run(&["attachedness", &fig, "--separator", "2"])), 3);
}

#[test]
fn gen_is_deterministic_and_chordal() {
    let a = run(&["gen", "--model", "subtree", "--n", "10", "--seed", "7"]);
    let b = run(&["gen", "--model", "subtree", "--n", "10", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let (g, _) = parse_edge_list(&stdout(&a)).unwrap();
    assert_eq!(g.vertex_count(), 10);
    assert!(is_chordal(&g).is_chordal());
    let one = run(&["gen", "--n", "1", "--seed", "3"]);
    assert_eq!(stdout(&one), "v v0\n");
    assert_eq!(code(&run(&["gen", "--n", "0", "--seed", "3"])), 3);
    assert_eq!(code(&run(&["gen", "--model", "interval", "--n", "4", "--seed", "3"])), 3);
    assert_eq!(code(&run(&["gen", "--n", "4"])), 3);
}

#[test]
fn selftest_command() {
    let o = run(&["selftest", "--max-n", "4", "--samples", "100"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS suite")).count(), 8);

    let o = run(&["selftest", "--max-n", "3", "--samples", "50", "--mutate"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL suite 8"));

    let o = run(&["selftest", "--max-n", "0", "--samples", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[vacuous]"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checked nothing"));
}
