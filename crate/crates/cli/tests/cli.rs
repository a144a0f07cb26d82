use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn pathdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathdp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const P4: &str = "graph 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const K3: &str = "graph 3 3\ne 1 2\ne 2 3\ne 1 3\n";
const STAR4: &str = "graph 5 4\ne 1 2\ne 1 3\ne 1 4\ne 1 5\n";

#[test]
fn path_cover_of_a_path() {
    let f = Files::new();
    let g = f.write("p4.g", P4);
    let out = pathdp(&["solve", "path-cover", "--graph", g.to_str().unwrap(), "--reconstruct"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("objective 1\ncertificate\nedge 1 2\nedge 2 3\nedge 3 4\nend\n"), "{text}");
    assert!(text.contains("width 1\n"));
}

#[test]
fn infeasible_exits_two() {
    let f = Files::new();
    let g = f.write("k3.g", K3);
    let out = pathdp(&["solve", "coloring", "-C", "2", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("infeasible\n"));
    let out = pathdp(&["solve", "coloring", "-C", "3", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("feasible\n"));
}

#[test]
fn oracle_matches_solver() {
    let f = Files::new();
    let g = f.write("star.g", STAR4);
    let g = g.to_str().unwrap();
    let first_line = |args: &[&str]| stdout(&pathdp(args)).lines().next().unwrap().to_string();
    assert_eq!(first_line(&["oracle", "path-cover", "--graph", g]), "objective 3");
    assert_eq!(first_line(&["solve", "path-cover", "--graph", g]), "objective 3");
    assert_eq!(first_line(&["oracle", "max-leaf-tree", "--graph", g]), "objective 4");
    assert_eq!(first_line(&["solve", "max-leaf-tree", "--graph", g]), "objective 4");
}

#[test]
fn missing_parameter_is_an_error() {
    let f = Files::new();
    let g = f.write("p4.g", P4);
    let out = pathdp(&["solve", "k-replica", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires -k"));
}

#[test]
fn malformed_input_is_an_error() {
    let f = Files::new();
    let g = f.write("bad.g", "graph 2 1\n1 2\n");
    let out = pathdp(&["solve", "mwis", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: parsing"));
}

#[test]
fn canonical_state_count() {
    let out = pathdp(&["states", "coloring-canonical", "-C", "7", "--nv", "9", "--from", "9"]);
    assert_eq!(stdout(&out), "nv 9 states 21110\n");
}

#[test]
fn validate_decomposition_files() {
    let f = Files::new();
    let g = f.write("p4.g", P4);
    let good = f.write("good.pd", "pd 3\nbag 1 2\nbag 2 3\nbag 3 4\n");
    let bad = f.write("bad.pd", "pd 2\nbag 1 2\nbag 3 4\n");
    let g = g.to_str().unwrap();
    let out = pathdp(&["validate-decomp", "--graph", g, "--decomp", good.to_str().unwrap()]);
    assert_eq!(stdout(&out), "valid width 1\n");
    let out = pathdp(&["validate-decomp", "--graph", g, "--decomp", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("invalid "));
}

#[test]
fn nicify_lists_events() {
    let f = Files::new();
    let g = f.write("p4.g", P4);
    let pd = f.write("p4.pd", "pd 3\nbag 1 2\nbag 2 3\nbag 3 4\n");
    let out = pathdp(&["nicify", "--graph", g.to_str().unwrap(), "--decomp", pd.to_str().unwrap()]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nice 8 width 1"));
    let events: Vec<&str> = lines.collect();
    assert_eq!(events.len(), 8);
    assert_eq!(events.iter().filter(|l| l.starts_with("introduce ")).count(), 4);
    assert_eq!(events.iter().filter(|l| l.starts_with("forget ")).count(), 4);
}

#[test]
fn grid_rect_cover() {
    let f = Files::new();
    let grid = f.write("g.grid", "grid 2 3\n...\n...\n");
    let out = pathdp(&["solve", "rect-cover", "--grid", grid.to_str().unwrap(), "--piece", "1x3", "--reconstruct"]);
    let text = stdout(&out);
    assert!(text.starts_with("objective 2\ncertificate\nplace 1 1 3\nplace 1 2 3\nend\n"), "{text}");
}

#[test]
fn threads_give_identical_output() {
    let f = Files::new();
    let grid = f.write("g.grid", "grid 4 4\n....\n.X..\n....\n..X.\n");
    let grid = grid.to_str().unwrap();
    let run = |threads: &str| {
        stdout(&pathdp(&["solve", "path-cover", "--grid", grid, "--reconstruct", "--threads", threads]))
    };
    let one = run("1");
    assert!(one.starts_with("objective "));
    assert_eq!(one, run("4"));
}
