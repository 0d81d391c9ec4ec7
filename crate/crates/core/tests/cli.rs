use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matgraph")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table1_prints_eight_rows() {
    let o = run(&["bounds", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 9);
    assert!(s.starts_with("N,n,d,q,bound12,bound8,known_exact,lower_bounds,note\n"));
}

#[test]
fn distance_coloring_reports_four_colors() {
    let o = run(&["color", "dist", "--q", "2", "--m", "1", "--N", "2", "--n", "2", "--d", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("colors: 4\n"));
    assert!(s.contains("verdict: proper\n"));
}

#[test]
fn builtin_c3_is_equidistant() {
    let o = run(&["code", "builtin", "C3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: equidistant d = 3"));
}

#[test]
fn usage_and_budget_errors_have_distinct_codes() {
    assert_eq!(run(&["color", "dist", "--q", "6", "--N", "2", "--n", "2", "--d", "1"]).status.code(), Some(1));
    assert_eq!(run(&["color", "dist", "--q", "4", "--m", "1", "--N", "2", "--n", "2", "--d", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "row", "--N", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--unknown", "bounds", "table1"]).status.code(), Some(1));
    let o = run(&["--budget", "100", "color", "dist", "--q", "2", "--N", "3", "--n", "3", "--d", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn violations_exit_two_and_print_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let o = run(&["color", "dist", "--q", "2", "--N", "2", "--n", "2", "--d", "1", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    // Claim the same coloring is proper at distance 2: it has only 4 colors.
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["d"] = serde_json::json!(2);
    std::fs::write(&path, v.to_string()).unwrap();
    for extra in [&[][..], &["--pairwise"][..]] {
        let mut args = vec!["color", "verify", p];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2));
        let s = stdout(&o);
        assert!(s.contains("verdict: violation"));
        assert!(s.contains("\"distance\":2"));
    }
}

#[test]
fn coloring_files_support_assign() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let o = run(&["--seed", "5", "color", "exact", "--q", "2", "--N", "3", "--n", "2", "--d", "2", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["color", "verify", p]).status.code(), Some(0));
    let o = run(&["color", "assign", p, "--vertex", "000000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("color: 0\n"));
    assert_eq!(run(&["color", "assign", p, "--vertex", "0000002"]).status.code(), Some(1));
}

#[test]
fn code_files_round_trip_through_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let o = run(&["code", "gabidulin", "--q", "2", "--N", "3", "--n", "3", "--k", "2", "--s", "2", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--format", "json", "code", "spectrum", p]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["min_rank_distance"], 2);
    assert_eq!(v["mrd"], true);
    assert_eq!(v["spectrum"]["0"], 1);
}

#[test]
fn graph_export_writes_edge_lists() {
    let o = run(&["graph", "export", "--q", "3", "--N", "1", "--n", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "u_label,v_label\n0,1\n0,2\n1,2\n");
    let o = run(&["graph", "export", "--q", "2", "--N", "5", "--n", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bounds_row_formats() {
    let o = run(&["bounds", "row", "--N", "6", "--n", "4", "--d", "2", "--q", "3", "--csv"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("6,4,2,3,3^7,3^12,,,"));
    let o = run(&["bounds", "row", "--N", "6", "--n", "4", "--d", "2", "--q", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi_exact_upper_thm"], "2187");
}
