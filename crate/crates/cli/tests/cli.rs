use std::path::PathBuf;
use std::process::{Command, Output};

use prioritree::io::{render_document, NHS_DOCUMENT};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prioritree"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prioritree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn solve_ranks_saas_first_and_is_deterministic() {
    let path = write_temp("solve.json", NHS_DOCUMENT);
    let a = run(&["solve", path.to_str().unwrap()]);
    let b = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("Best alternative: SAAS"));
    let saas = text.lines().find(|l| l.starts_with("SAAS")).unwrap();
    assert!(saas.trim_end().ends_with(" 1"), "{saas}");
}

#[test]
fn strict_solve_fails_on_inconsistent_matrices() {
    let path = write_temp("strict.json", NHS_DOCUMENT);
    let o = run(&["solve", "--strict", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Warning: CR above threshold"));
    let o = run(&["check", "--strict", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_names_the_broken_cell() {
    let doc = NHS_DOCUMENT.replacen(
        "\"pairs\": [",
        "\"pairs\": [\n      {\"a\": \"Usa\", \"b\": \"Fun\", \"value\": \"3\"},",
        1,
    );
    let path = write_temp("broken.json", &doc);
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error: "), "{err}");
    assert!(
        err.contains("(Fun, Usa)") || err.contains("(Usa, Fun)"),
        "{err}"
    );
}

#[test]
fn check_reports_each_matrix() {
    let path = write_temp("check.json", NHS_DOCUMENT);
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("criteria         n=11 CR=0.1670 inconsistent"));
}

#[test]
fn csv_report_has_three_rows_summing_to_one() {
    let path = write_temp("csv.json", NHS_DOCUMENT);
    let o = run(&["report", "--format", "csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.split("\r\n").filter(|l| !l.is_empty());
    assert_eq!(lines.next(), Some("rank,alternative,score,tied"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][1], "SAAS");
    let total: f64 = rows.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-6);
}

#[test]
fn sensitivity_reports_the_crossover() {
    let path = write_temp("sens.json", NHS_DOCUMENT);
    let o = run(&["sensitivity", path.to_str().unwrap(), "--criterion", "Arc"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("above: IAAS takes over at 0.49727498"),
        "{text}"
    );
    assert!(text.contains("below: no crossover"));

    let o = run(&["sensitivity", path.to_str().unwrap(), "--criterion", "Nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn init_emits_loadable_documents() {
    let o = run(&["init", "--nhs"]);
    assert_eq!(stdout(&o), NHS_DOCUMENT);
    let o = run(&["init"]);
    let doc = prioritree::io::parse_document(&o.stdout).unwrap();
    assert_eq!(render_document(&doc), stdout(&o));
    let path = write_temp("skeleton.json", &stdout(&o));
    assert_eq!(
        run(&["solve", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn missing_file_is_an_error() {
    let o = run(&["solve", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
}
