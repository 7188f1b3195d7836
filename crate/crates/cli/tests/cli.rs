use std::process::{Command, Output};

use semiprime::report::{Report, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiprime")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn dvr_all_passes() {
    let o = run(&["verify", "--ring", "dvr", "--max", "8", "--suite", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn small_cusp_window_is_a_usage_error() {
    let o = run(&["verify", "--ring", "cusp", "--p", "2", "--max", "3", "--suite", "tables"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("max degree >= 4"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(code(&run(&["verify", "--ring", "torus"])), 64);
    assert_eq!(code(&run(&["verify", "--ring", "dvr", "--suite", "everything"])), 64);
    assert_eq!(code(&run(&["verify", "--ring", "cusp", "--p", "4"])), 64);
    assert_eq!(code(&run(&["diagram", "--ring", "dvr", "--op", "dvr:h(2)"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn cusp_tables_report_every_row() {
    let o = run(&["verify", "--ring", "cusp", "--p", "2", "--max", "6", "--suite", "tables", "--format", "structured"]);
    // Some table rows do not hold; the report says so and the exit code follows.
    assert_eq!(code(&o), 2);
    let r = Report::parse_structured(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let rows: Vec<_> = r.records.iter().filter(|x| x.check.contains(".row")).collect();
    assert_eq!(rows.len(), 112);
    assert!(rows.iter().all(|x| x.status != Status::Pass || !x.params.ends_with("=0")));
    let failing = rows.iter().filter(|x| x.status == Status::Fail).count();
    assert!(failing > 0 && rows.iter().filter(|x| x.status == Status::Fail).all(|x| x.witness.is_some()));
}

#[test]
fn structured_output_is_stable_across_thread_counts() {
    let args = ["verify", "--ring", "cusp", "--p", "2", "--max", "5", "--format", "structured"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_semiprime")).args(args).env("SEMIPRIME_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), code(&b));
}

#[test]
fn report_goes_to_file() {
    let dir = std::env::temp_dir().join(format!("semiprime-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ded.txt");
    let o = run(&[
        "verify", "--ring", "ded", "--lambda", "2", "--max", "4", "--suite", "act,prime-scan", "--format", "structured",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r = Report::parse_structured(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.config.contains(&("suite".into(), "act,prime-scan".into())));
    assert!(r.records.iter().any(|x| x.suite == "prime-scan" && x.check == "survivors" && x.status == Status::Pass));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagram_with_arrows() {
    let o = run(&["diagram", "--ring", "cusp", "--p", "2", "--max", "5", "--op", "cusp:fpoint(m=3,a=0,zero=closed)"]);
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph lattice {"));
    assert!(dot.contains("[label=\"P(3,0)\"]"));
    assert!(dot.contains("color=red"));
    assert!(dot.contains("style=dotted"));
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn check_reports_axioms() {
    let o = run(&["check", "--ring", "cusp", "--p", "2", "--max", "6", "--op", "cusp:intsingle(i=2)"]);
    assert_eq!(code(&o), 2);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("(d) Fail"));
    assert!(text.contains("inputs=(P(2,0),P(2,0)) values=(M(4),P(4,0))"));
}
