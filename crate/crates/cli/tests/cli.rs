use std::process::{Command, Output};

fn cutgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutgeom")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses CSV output into (header, rows).
fn csv(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(out);
    let mut lines = text.lines().map(|l| l.split(',').map(str::to_owned).collect::<Vec<_>>());
    let header = lines.next().expect("header row");
    (header, lines.collect())
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn ball_distance_limit_row() {
    let (header, rows) = csv(&cutgeom(&["ball-distance", "--epsilon", "0.25"]));
    assert_eq!(header, ["n", "epsilon", "method", "value"]);
    assert_eq!(rows, vec![vec!["", "0.25", "limit", "0.326413547071"]]);
}

#[test]
fn ball_distance_finite_and_limit() {
    let (_, rows) = csv(&cutgeom(&["ball-distance", "--epsilon", "0.1", "--n", "3"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "3");
    assert_eq!(rows[0][2], "finite_n");
    assert_eq!(rows[0][3], "0.754842215144");
    assert_eq!(rows[1][0], "");
}

#[test]
fn simplex_corner() {
    let (header, rows) = csv(&cutgeom(&["cube-cut", "--n", "3", "--a", "1"]));
    assert_eq!(rows[0][column(&header, "value")], "0.166666666667");
    assert_eq!(rows[0][column(&header, "method")], "exact");
}

#[test]
fn cube_cut_with_normal_solves_for_epsilon() {
    let (header, rows) = csv(&cutgeom(&["cube-cut", "--normal", "1,2,0", "--epsilon", "0.1"]));
    let value: f64 = rows[0][column(&header, "value")].parse().unwrap();
    assert!((value - 0.1).abs() < 1e-11);
    // Feed the threshold back in.
    let a = rows[0][column(&header, "a")].clone();
    let (_, again) = csv(&cutgeom(&["cube-cut", "--normal", "1,2,0", "--a", &a]));
    let v2: f64 = again[0][column(&header, "value")].parse().unwrap();
    assert!((v2 - 0.1).abs() < 1e-10);
}

#[test]
fn cube_convergence_gaps_shrink_fourfold() {
    let (header, rows) = csv(&cutgeom(&["converge", "--body", "cube", "--epsilon", "0.1", "--n-list", "16,64,256"]));
    let g = column(&header, "gap");
    let gaps: Vec<f64> = rows.iter().map(|r| r[g].parse().unwrap()).collect();
    for pair in gaps.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!((3.5..4.5).contains(&ratio), "{gaps:?}");
    }
}

#[test]
fn cube_distance_reports_both_limits() {
    let (header, rows) = csv(&cutgeom(&["cube-distance", "--n", "256", "--epsilon", "0.05"]));
    let (v, g) = (column(&header, "variant"), column(&header, "gap"));
    let gap = |variant: &str| -> f64 { rows.iter().find(|r| r[v] == variant).unwrap()[g].parse().unwrap() };
    assert!(gap("corrected").abs() < 5e-3);
    assert!(gap("paper").abs() > 0.1);
}

#[test]
fn json_lines_carry_the_same_keys() {
    let out = cutgeom(&["--json", "converge", "--body", "ball", "--epsilon", "0.25", "--n-list", "10,100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let keys: Vec<&str> = line.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["body", "n", "epsilon", "method", "value", "limit", "gap"]);
    }
}

#[test]
fn bound_holds_for_small_n() {
    let (header, rows) = csv(&cutgeom(&["bound", "--n", "1,5,20"]));
    let w = column(&header, "within");
    assert!(rows.iter().all(|r| r[w] == "true"));
}

#[test]
fn monte_carlo_is_reproducible_across_workers() {
    let run = |workers: &str| {
        stdout(&cutgeom(&[
            "mc", "--body", "cube", "--n", "6", "--epsilon", "0.2", "--samples", "50000", "--seed", "11", "--workers",
            workers,
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let (header, rows) = csv(&cutgeom(&["mc", "--body", "ball", "--n", "4", "--threshold", "0.2", "--samples", "100000"]));
    let lo: f64 = rows[0][column(&header, "ci95_low")].parse().unwrap();
    let hi: f64 = rows[0][column(&header, "ci95_high")].parse().unwrap();
    let exact: f64 = rows[0][column(&header, "exact")].parse().unwrap();
    let width = hi - lo;
    assert!(lo - width <= exact && exact <= hi + width);
}

#[test]
fn conjecture_emits_a_json_report() {
    let out = cutgeom(&["conjecture", "--n", "3", "--epsilon", "0.05", "--restarts", "4"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["n"], 3);
    assert_eq!(report["equal_nonzero_coords"], true);
    assert_eq!(report["counterexample"], false);
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("cutgeom-cli-test-{}.csv", std::process::id()));
    let out = cutgeom(&["--out", path.to_str().unwrap(), "cube-cut", "--n", "3", "--a", "1"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("n,epsilon,a,method,value\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(cutgeom(&["cube-cut", "--n", "3"]).status.code(), Some(2));
    assert_eq!(cutgeom(&["ball-slab", "--n", "3", "--d", "0.1", "--bogus"]).status.code(), Some(2));
    assert_eq!(cutgeom(&["cube-cut", "--n", "2", "--normal", "1,1,1", "--a", "1"]).status.code(), Some(2));
    assert_eq!(cutgeom(&["ball-distance", "--epsilon", "1.5"]).status.code(), Some(3));
    assert_eq!(cutgeom(&["cube-cut", "--normal", "1,-1", "--a", "0.5"]).status.code(), Some(3));
    let wide = vec!["1"; 30].join(",");
    let out = cutgeom(&["cube-cut", "--normal", &wide, "--a", "3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capability"));
    assert_eq!(cutgeom(&["--help"]).status.code(), Some(0));
}
