use std::path::PathBuf;
use std::process::{Command, Output};

use hyperdoc::format::{parse_documents, Document};

fn example() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces/walking_arrow")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdoc")).args(args).output().expect("binary runs")
}

fn eval(args: &[&str]) -> Output {
    let w = example();
    let mut all = vec!["eval", "-w", w.to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("hyperdoc-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_reports_each_document() {
    let w = example();
    let files: Vec<String> = ["categories", "functors", "presheaves", "distributors"]
        .iter()
        .map(|f| w.join(format!("{f}.json")).to_string_lossy().into_owned())
        .collect();
    let mut args = vec!["validate"];
    args.extend(files.iter().map(String::as_str));
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("ok distributor M"));
}

#[test]
fn validate_rejects_a_missing_composite() {
    let p = scratch("bad.json", r#"[{"kind":"category","name":"E","objects":["0"],"arrows":{"f":["0","0"]},"compose":{}}]"#);
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("composite (f,f) missing"));
}

#[test]
fn unreadable_files_exit_4() {
    assert_eq!(code(&run(&["validate", "/nonexistent/file.json"])), 4);
    assert_eq!(code(&run(&["eval", "-w", "/nonexistent", "R"])), 4);
}

#[test]
fn input_errors_exit_2() {
    let syntax = eval(&["exists(M R)"]);
    assert_eq!(code(&syntax), 2);
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("1:"));
    assert_eq!(code(&eval(&["Q"])), 2);
    assert_eq!(code(&eval(&["exists(M, U)"])), 2);
    assert_eq!(code(&eval(&["tensor(R, X)"])), 2);
    assert_eq!(code(&run(&["diagram", "parse", "x"])), 2);
    assert_eq!(code(&run(&["laws", "--suite", "nope"])), 2);
}

#[test]
fn cap_exceeded_exits_3() {
    let w = example();
    let o = run(&["--cap", "1", "eval", "-w", w.to_str().unwrap(), "exists(M, R)"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn eval_prints_base_and_tables() {
    let o = eval(&["tensor(R, S)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("base product(A,A)\n"));
    let json = eval(&["--json", "exists(M, R)"]);
    assert_eq!(code(&json), 0);
    let docs = parse_documents(&stdout(&json)).unwrap();
    assert!(matches!(&docs[..], [Document::Presheaf(p)] if p.name == "value"));
}

#[test]
fn check_iso_exit_codes() {
    let w = example();
    let w = w.to_str().unwrap();
    let yes = run(&["check-iso", "-w", w, "exists(M, R)", "exists(M, R)"]);
    assert_eq!(code(&yes), 0);
    assert!(stdout(&yes).starts_with("iso [searched (diagnostic)]"));
    assert_eq!(code(&run(&["check-iso", "-w", w, "R", "S"])), 1);
    let canon = run(&["check-iso", "-w", w, "--canonical", "co_yoneda", "exists(id(A), R)", "R"]);
    assert_eq!(code(&canon), 0, "{}{}", stdout(&canon), String::from_utf8_lossy(&canon.stderr));
    assert!(stdout(&canon).starts_with("iso [canonical]"));
}

#[test]
fn laws_emit_json_lines() {
    let o = run(&["laws", "--suite", "matll", "--chain", "2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|r| r["suite"] == "matll" && r["status"] == "pass"));
    let timed = run(&["laws", "--suite", "diagrams", "--timings"]);
    assert_eq!(code(&timed), 0);
    assert!(stdout(&timed).lines().all(|l| l.contains("\"micros\":")));
}

#[test]
fn counterexample_writes_a_loadable_workspace() {
    let o = run(&["counterexample", "--law", "e", "--corpus", "small"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let p = scratch("cx.json", &text[text.find('[').unwrap()..]);
    assert_eq!(code(&run(&["validate", p.to_str().unwrap()])), 0);
}

fn matrices() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../workspaces/matrices/chain3.json")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn mat_quantifiers_and_laws() {
    let f = matrices();
    let ex = run(&["mat", "-f", &f, "exists", "M", "R"]);
    assert_eq!(code(&ex), 0);
    assert_eq!(stdout(&ex), "b0\t1/2\nb1\t1/2\n");
    let strict = run(&["mat", "-f", &f, "law", "f", "M", "N", "R", "U"]);
    assert_eq!(code(&strict), 0);
    assert!(stdout(&strict).ends_with("holds lhs <= rhs, strict\n"));
    assert_eq!(code(&run(&["mat", "-f", &f, "law", "a", "M"])), 2);
    assert_eq!(code(&run(&["mat", "-f", &f, "law", "z", "M", "S"])), 2);
    assert_eq!(code(&run(&["mat", "-f", &f, "exists", "M", "Q"])), 2);
    // 1/2 is not on the 2-chain
    assert_eq!(code(&run(&["mat", "-f", &f, "--chain", "2", "exists", "M", "R"])), 1);
    assert_eq!(code(&run(&["mat", "-f", "/nonexistent.json", "exists", "M", "R"])), 4);
}
