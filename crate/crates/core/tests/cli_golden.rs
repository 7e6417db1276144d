use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubik-shapes")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn subcommand_names_are_stable() {
    let help = stdout(&cli(&["--help"]));
    for name in [
        "validate",
        "apply",
        "verify-macros",
        "group-order",
        "completeness",
        "bfs",
        "solve",
        "theorem1-audit",
        "parity",
    ] {
        assert!(help.lines().any(|l| l.trim_start().starts_with(name)), "{name} missing");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let sq = data("square2x2.shape");
    let cases: Vec<Vec<&str>> = vec![
        vec!["validate", &sq],
        vec!["group-order", &sq],
        vec!["bfs", &sq],
        vec!["verify-macros", &sq],
        vec!["theorem1-audit", "4", "3"],
    ];
    for args in cases {
        let a = cli(&args);
        let b = cli(&args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn group_order_of_square() {
    let o = cli(&["group-order", &data("square2x2.shape")]);
    assert!(stdout(&o).contains("479001600"));
}

#[test]
fn apply_full_turn_keeps_state() {
    let sq = data("square2x2.shape");
    let o = cli(&["apply", &sq, "M1 M1 M1 M1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rrbrwbwbgwgg"));
}

#[test]
fn exit_codes_and_single_line_errors() {
    let bad_shape = cli(&["validate", &data("invalid_shared.shape")]);
    assert_eq!(bad_shape.status.code(), Some(1));
    assert!(stderr(&bad_shape).contains("line 4"));

    let missing = cli(&["validate", "/nonexistent/none.shape"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = cli(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let convention = cli(&["--convention", "sideways", "group-order", &data("triangles.shape")]);
    assert_eq!(convention.status.code(), Some(2));

    let metric = cli(&["--metric", "half-turn", "bfs", &data("triangles.shape")]);
    assert_eq!(metric.status.code(), Some(2));

    for o in [&bad_shape, &missing, &unknown, &convention, &metric] {
        let err = stderr(o);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error: "), "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn out_flag_redirects_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let sq = data("square2x2.shape");
    let o = cli(&["--out", path.to_str().unwrap(), "group-order", &sq]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let direct = cli(&["group-order", &sq]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn ledger_flag_appends() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ledger.txt");
    let p = path.to_str().unwrap();
    let tri = data("triangles.shape");
    assert!(cli(&["--ledger", p, "parity", &tri]).status.success());
    assert!(cli(&["--ledger", p, "parity", &tri]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("[odd-pair-degree]").count(), 2);
}

#[test]
fn parity_verdicts() {
    let tri = stdout(&cli(&["parity", &data("triangles.shape")]));
    assert!(tri.contains("all generators even"));
    let sq = cli(&["parity", &data("square_triangle.shape")]);
    assert!(sq.status.success());
    assert_ne!(stdout(&sq), tri);
}
