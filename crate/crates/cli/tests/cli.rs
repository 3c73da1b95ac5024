use std::io::Write;
use std::process::{Command, Output};

use indexbound_cli::report::{from_json, to_json};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indexbound"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_corpus(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("indexbound-{}-{name}.txt", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path
}

#[test]
fn json_report_round_trips() {
    let o = run(&[
        "bound",
        "--p",
        "3",
        "--m",
        "3",
        "--poly",
        "x^25 + a*x^4",
        "--sweep",
        "a",
        "--oracle",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = from_json(&text).unwrap();
    assert_eq!(to_json(&report).unwrap(), text);
    assert_eq!(report.summary.unwrap().shifted_centers, 2);
}

#[test]
fn improved_radius_renders_as_integer() {
    let o = run(&[
        "bound",
        "--p",
        "2",
        "--m",
        "6",
        "--poly",
        "x^41 + g^5*x^5",
        "--format",
        "json",
    ]);
    let report = from_json(&stdout(&o)).unwrap();
    let improved = report.bounds.iter().find(|b| b.name == "improved").unwrap();
    assert_eq!(improved.radius, "24");
}

#[test]
fn csv_has_one_row_per_bound() {
    let o = run(&[
        "bound",
        "--p",
        "5",
        "--m",
        "2",
        "--poly",
        "x^8 + a*x",
        "--sweep",
        "a",
        "--oracle",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("a,bound,center"));
    // four bounds plus the binomial one, for each of 24 values
    assert_eq!(lines.count(), 24 * 5);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(
        run(&["bound", "--p", "3", "--m", "3", "--poly", "x^^2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["bound", "--p", "4", "--m", "1", "--poly", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = run(&[
        "sum", "--p", "3", "--m", "3", "--poly", "x^2 + a", "--sweep", "a", "--a", "g",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn caps_exit_2() {
    let o = run(&["sum", "--p", "2", "--m", "10", "--poly", "x^3", "--cap", "512"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn builtin_corpus_verifies() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn widened_bound_is_a_warning_only() {
    let path = temp_corpus(
        "widen",
        "# deliberately loose\nbound --p 3 --m 3 --poly \"x^25 + a*x^4\" --sweep a --widen 100\n",
    );
    let o = run(&["verify", "--corpus", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    let report = from_json(&stdout(&o)).unwrap();
    let checks = report.checks.unwrap();
    let dom = checks.iter().find(|c| c.check == "dominance").unwrap();
    assert!(!dom.passed && dom.soft);
    assert!(checks.iter().filter(|c| !c.soft).all(|c| c.passed));
}

#[test]
fn corrupted_cap_fails_verification() {
    let path = temp_corpus("cap", "bound --p 3 --m 3 --poly \"x^25 + a*x^4\" --a g --cap 4\n");
    let o = run(&["verify", "--corpus", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn unreadable_or_malformed_corpus() {
    assert_eq!(
        run(&["verify", "--corpus", "/nonexistent/corpus.txt"]).status.code(),
        Some(1)
    );
    let path = temp_corpus("bad", "bound --p 3\n");
    let o = run(&["verify", "--corpus", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_notes_list_mismatched_cells() {
    let o = run(&["table", "--preset", "table3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = from_json(&stdout(&o)).unwrap();
    assert_eq!(report.table.unwrap().len(), 6);
    assert!(report.summary.unwrap().notes.is_empty());

    let o = run(&["table", "--preset", "table2", "--format", "json"]);
    let notes = from_json(&stdout(&o)).unwrap().summary.unwrap().notes;
    assert_eq!(notes.len(), 3, "{notes:?}");
}
