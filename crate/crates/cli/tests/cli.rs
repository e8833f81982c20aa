use std::fs;
use std::process::{Command, Output};

use bbg_core::report::Report;

fn bbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbg")).args(args).output().expect("bbg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn report_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = bbg(&["report", "3", "4", "5", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let parsed = Report::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text);

    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema"], "bbg-report/1");
    assert_eq!(value["formulas"]["ell"], 2);
    // arbitrary-precision counts are strings
    assert_eq!(value["labelled_cell_counts"][0], "362880");
    assert_eq!(stdout(&o), parsed.to_text());
}

#[test]
fn report_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert!(bbg(&["report", "4", "4", "4", "--json", a.to_str().unwrap()]).status.success());
    assert!(bbg(&["report", "4", "4", "4", "--json", b.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn one_ended_statement() {
    let out = stdout(&bbg(&["report", "2", "3", "3"]));
    assert!(out.contains("0-connected at infinity, not 1-connected at infinity"), "{out}");
}

#[test]
fn exceptional_case_is_flagged() {
    let out = stdout(&bbg(&["report", "4", "4", "4"]));
    assert!(out.contains("exceptional case: yes"));
    assert!(out.contains("minimum link bound: 0 at type (2,2,2,2)"));
    assert!(out.contains("Δ_{2,2} ⋆ Δ_{2,2}  nu 1 + 1  bound 0  hconn 0  [H̃_1 = Z]"));
}

#[test]
fn usage_and_resource_errors_exit_two() {
    let trivial = bbg(&["report", "1", "2", "2"]);
    assert_eq!(trivial.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&trivial.stderr).contains("free group"));

    assert!(bbg(&["report", "1", "2", "2", "--allow-trivial"]).status.success());
    assert_eq!(bbg(&["report", "3", "4"]).status.code(), Some(2));
    assert_eq!(bbg(&["report", "9", "4", "4"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cells = dir.path().join("c.txt");
    let capped = bbg(&["report", "3", "4", "5", "--max-zero-cells", "10", "--export-cells", cells.to_str().unwrap()]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("84"));
}

#[test]
fn cell_export_format() {
    let dir = tempfile::tempdir().unwrap();
    let cells = dir.path().join("c.txt");
    assert!(bbg(&["report", "2", "3", "3", "--export-cells", cells.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(cells).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# Conf_2(3,3)"));
    let body: Vec<&str> = lines.collect();
    // f-vector (15, 36, 18)
    assert_eq!(body.len(), 15 + 36 + 18);
    assert!(body.contains(&"0; L1,L2; "));
    assert!(body.contains(&"2; ; (L1-R1),(L2-R2)"));
}

#[test]
fn facet_export_format() {
    let dir = tempfile::tempdir().unwrap();
    let facets = dir.path().join("f.txt");
    assert!(bbg(&["chessboard", "2", "3", "--export-facets", facets.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(facets).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# "));
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines.contains(&"r1c1,r2c2"));

    let links = dir.path().join("l.txt");
    assert!(bbg(&["report", "2", "3", "3", "--export-facets", links.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(links).unwrap();
    // one link per solution type: hexagon, square, hexagon
    assert_eq!(text.lines().filter(|l| l.starts_with("# ")).count(), 3);
    assert_eq!(text.lines().filter(|l| !l.starts_with("# ")).count(), 6 + 4 + 6);
}

#[test]
fn boundary_export_multiplies_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = bbg(&["chessboard", "3", "4", "--export-boundaries", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("H̃_1 = Z^2, H̃_2 = Z"));
    let read = |k: usize| -> (usize, usize, Vec<(usize, usize, i64)>) {
        let text = fs::read_to_string(dir.path().join(format!("d{k}.txt"))).unwrap();
        let mut lines = text.lines();
        let head: Vec<usize> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
        let entries: Vec<(usize, usize, i64)> = lines
            .map(|l| {
                let v: Vec<&str> = l.split(' ').collect();
                (v[0].parse().unwrap(), v[1].parse().unwrap(), v[2].parse().unwrap())
            })
            .collect();
        assert_eq!(entries.len(), head[2]);
        (head[0], head[1], entries)
    };
    for k in 1..=2 {
        let (r0, c0, a) = read(k - 1);
        let (r1, c1, b) = read(k);
        assert_eq!(c0, r1);
        let mut product = vec![vec![0i64; c1]; r0];
        for &(i, j, x) in &a {
            for &(j2, l, y) in &b {
                if j == j2 {
                    product[i][l] += x * y;
                }
            }
        }
        assert!(product.iter().flatten().all(|&v| v == 0));
    }
}

#[test]
fn table_lists_boards() {
    let out = stdout(&bbg(&["table", "--max-sum", "5"]));
    assert!(out.contains("2 3 2 0 H̃_1 = Z"));
    assert_eq!(out.lines().count(), 1 + 6);
}

#[test]
fn verify_exit_status_reflects_failures() {
    let out = bbg(&["verify", "--level", "quick"]);
    let text = stdout(&out);
    // the single-square board is a genuine counterexample at criteria 3 and 5
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("failed criteria: 3, 5"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn verify_names_the_mutated_criteria() {
    let out = bbg(&["verify", "--mutate", "nu"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL criterion  2"), "{text}");
    assert!(text.contains("PASS criterion  1"));
}
