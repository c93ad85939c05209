use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = toric(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn gh_reports() {
    let cube = json(&["gh", "cube3"]);
    assert_eq!(ints(&cube["h"]), [1, 5, 5, 1]);
    assert_eq!(ints(&cube["g"]), [1, 4]);
    assert_eq!(cube["flags"]["{0,1}"], 24);
    assert_eq!(cube["checks"]["dehn_sommerville"], "pass");
    assert_eq!(ints(&json(&["gh", "prism(simplex2)"])["h"]), [1, 3, 3, 1]);
    assert_eq!(ints(&json(&["gh", "empty"])["h"]), [1]);
    let text = toric(&["gh", "square"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("h = [1,2,1]"));
}

#[test]
fn flags_command() {
    let flags = json(&["flags", "simplex3"]);
    assert_eq!(flags["flags"]["{0}"], 4);
    assert_eq!(flags["flags"]["{0,1,2}"], 24);
}

#[test]
fn file_inputs() {
    let poly = file(r#"{"schema":"polytope/v1","vertices":[["0","0"],["2","0"],["0","1/2"],["1/2","1/8"]]}"#);
    let rep = json(&["gh", poly.path().to_str().unwrap()]);
    assert_eq!(ints(&rep["f_vector"]), [3, 3]);
    let lat = file(r#"{"schema":"lattice/v1","dim":2,"n_vertices":4,"facets":[[0,1],[1,2],[2,3],[0,3]]}"#);
    let path = lat.path().to_str().unwrap();
    assert_eq!(ints(&json(&["gh", path])["h"]), [1, 2, 1]);
    assert!(toric(&["verify", "verma", path]).status.success());
    for cmd in ["shell", "rigidity", "localize"] {
        let out = toric(&[cmd, path]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(stderr(&out).contains("coordinates required"), "{cmd}");
    }
}

#[test]
fn input_errors_exit_two() {
    let broken = file(r#"{"schema":"polytope/v1","vertices":[["0","#);
    let out = toric(&["gh", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"));
    let open = file(r#"{"schema":"lattice/v1","dim":2,"n_vertices":4,"facets":[[0,1],[1,2],[2,3]]}"#);
    let out = toric(&["gh", open.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not Eulerian"));
    assert_eq!(toric(&["gh", "cube("]).status.code(), Some(2));
    assert_eq!(toric(&["gh", "dodecahedron"]).status.code(), Some(2));
    assert_eq!(toric(&["verify", "bogus", "cube3"]).status.code(), Some(2));
    assert_eq!(toric(&["verify", "ds"]).status.code(), Some(2));
    assert_eq!(toric(&["verify", "monotonicity", "cube3", "--faces", "some"]).status.code(), Some(2));
    assert_eq!(toric(&["shell", "square", "--direction", "1,x"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = toric(&["verify", "verma", "cube3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("(1,2,0) vs (1,2,0)"));
    for faces in ["all", "dim=1"] {
        assert!(toric(&["verify", "monotonicity", "cube4", "--faces", faces]).status.success());
    }
    for suite in ["reciprocity", "ubt", "kalai-identity", "cascade", "cone-bipyramid", "truncated"] {
        assert!(toric(&["verify", suite, "bipyramid(cube3)"]).status.success(), "{suite}");
    }
    let ds = json(&["verify", "ds", "--all"]);
    assert_eq!(ds["pass"], true);
    assert!(ds["results"].as_array().unwrap().len() > 100);
}

#[test]
fn shell_command() {
    let rep = json(&["shell", "prism(simplex2)", "--seed", "7"]);
    assert_eq!(rep["steps"].as_array().unwrap().len(), 5);
    assert_eq!(ints(&rep["steps"][4]["running_sum"]), [1, 3, 3, 1]);
    assert_eq!(rep["nonnegative"], true);
    let rep = json(&["shell", "prism(simplex2)", "--direction", "3,-1,4"]);
    let local: Vec<Vec<i64>> = rep["steps"].as_array().unwrap().iter().map(|s| ints(&s["local_h"])).collect();
    assert_eq!(local, [vec![0, 0, 0, 1], vec![0, 0, 2], vec![0, 1, 1], vec![0, 1], vec![1, 1]]);
    // deterministic for a fixed seed
    assert_eq!(toric(&["shell", "cube3", "--seed", "3"]).stdout, toric(&["shell", "cube3", "--seed", "3"]).stdout);
}

#[test]
fn rigidity_command() {
    let rep = json(&["rigidity", "cube4"]);
    assert_eq!(rep["stress_dimension"], 2);
    assert_eq!(rep["g2_recursion"], "2");
    assert_eq!(rep["consistent"], true);
    let rep = json(&["rigidity", "cube3"]);
    assert_eq!(rep["stress_dimension"], 0);
    assert_eq!(rep["kernel"], 6);
    assert_eq!(toric(&["rigidity", "square"]).status.code(), Some(2));
}

#[test]
fn localize_command() {
    for input in ["cone(square)", "square"] {
        let rep = json(&["localize", input, "--v", "0,1,0"]);
        assert_eq!(rep["lhs"], "2");
        assert_eq!(rep["rhs"], "2");
        assert_eq!(rep["ok"], true);
        assert_eq!(rep["min_fixed"].as_array().unwrap().len(), 2);
    }
    let sampled = json(&["localize", "cube3", "--samples", "6"]);
    assert!(sampled.as_array().unwrap().iter().all(|r| r["ok"] == true));
    assert_eq!(toric(&["localize", "square", "--v", "0,0,0"]).status.code(), Some(2));
}

#[test]
fn verma_command() {
    let rep = json(&["verma", "square"]);
    assert_eq!(rep["top"], serde_json::json!(["1", "1"]));
    assert_eq!(rep["agrees"], true);
    assert_eq!(toric(&["verma", "empty"]).status.code(), Some(2));
}
