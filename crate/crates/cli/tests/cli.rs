use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pmcut(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pmcut"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn generated(args: &[&str]) -> String {
    let o = pmcut(&[&["generate"], args].concat(), None);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn cube_has_a_cut_with_branch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.graph");
    fs::write(&path, generated(&["cube"])).unwrap();
    let v = json_out(&pmcut(&["solve", "--algo", "branch", "--json", path.to_str().unwrap()], None));
    assert_eq!(v["has_pmc"], true);
    assert_eq!(v["algorithm"], "branch");
    let x = v["certificate"]["x"].as_array().unwrap();
    assert_eq!(x.len(), 4);
    assert!(x.iter().all(|id| (1..=8).contains(&id.as_u64().unwrap())));
}

#[test]
fn c6_from_stdin_with_oracle() {
    let c6 = generated(&["cycle", "6"]);
    let v = json_out(&pmcut(&["solve", "--algo", "oracle", "--json"], Some(&c6)));
    assert_eq!(v["has_pmc"], false);
    assert_eq!(v["certificate"], Value::Null);
}

#[test]
fn check_accepts_returned_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.graph");
    let cut = dir.path().join("cut.json");
    fs::write(&g, generated(&["cycle", "8"])).unwrap();
    let o = pmcut(&["solve", "--json", g.to_str().unwrap()], None);
    fs::write(&cut, &o.stdout).unwrap();
    let o = pmcut(&["check", g.to_str().unwrap(), cut.to_str().unwrap()], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "PASS perfect_matching_cut");

    fs::write(&cut, r#"{"x": [1, 2, 3, 4]}"#).unwrap();
    let o = pmcut(&["check", "--json", g.to_str().unwrap(), cut.to_str().unwrap()], None);
    assert!(!o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "matching_cut");
}

#[test]
fn tfree_on_claw_reports_witness() {
    let o = pmcut(&["solve", "--algo", "tfree"], Some(&generated(&["claw"])));
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "not_t_free");
    assert_eq!(v["witness"]["center"], 3);
    assert_eq!(v["witness"]["leaf"], 6);
}

#[test]
fn parse_errors_are_json() {
    let o = pmcut(&["solve"], Some("2 1\n1 3\n"));
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");
    let o = pmcut(&["solve", "/nonexistent/graph"], None);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "io");
}

#[test]
fn deterministic_output_is_identical_across_threads() {
    let g = generated(&["planted", "8", "0.3", "--seed", "4"]);
    let runs: Vec<Vec<u8>> = ["1", "1", "4"]
        .iter()
        .map(|t| pmcut(&["solve", "--algo", "branch", "--json", "--deterministic", "--threads", t], Some(&g)).stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    let v: Value = serde_json::from_slice(&runs[0]).unwrap();
    assert!(v.get("millis").is_none());
    assert_eq!(v["has_pmc"], true);
}

#[test]
fn cross_check_agrees() {
    for g in [generated(&["petersen"]), generated(&["caterpillar", "1,0,0,1"]), generated(&["decorated-cycle", "4"])] {
        let v = json_out(&pmcut(&["solve", "--cross-check", "--json"], Some(&g)));
        assert!(!v["cross_check"].as_array().unwrap().is_empty());
    }
}

#[test]
fn auto_dispatch() {
    let algo = |g: String| json_out(&pmcut(&["solve", "--json"], Some(&g)))["algorithm"].as_str().unwrap().to_string();
    assert_eq!(algo(generated(&["cycle", "8"])), "deg2");
    assert_eq!(algo(generated(&["tree", "9"])), "pseudochordal");
    assert_eq!(algo(generated(&["cube"])), "tfree");
    assert_eq!(algo(generated(&["petersen"])), "branch");
}

#[test]
fn reduction_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fano.cnf");
    let map = dir.path().join("map.json");
    fs::write(&f, generated(&["formula", "0", "0", "--fano"])).unwrap();
    let g = generated(&["reduction", f.to_str().unwrap(), "--map", map.to_str().unwrap()]);
    assert!(g.starts_with("70 "));
    let v = json_out(&pmcut(&["solve", "--algo", "branch", "--json"], Some(&g)));
    assert_eq!(v["has_pmc"], false);
    let m: Value = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(m["variant"], "basic");
    assert_eq!(m["clause_gadgets"][0]["clause_vertices"], serde_json::json!([2, 3, 4]));
    assert_eq!(m["variable_gadgets"][0]["dummy"], 58);
}

#[test]
fn verify_reduction_girth() {
    let f = "p cnf 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n";
    let v = json_out(&pmcut(&["verify-reduction", "--variant", "girth", "--girth", "16", "--json"], Some(f)));
    assert_eq!(v["num_vertices"], 384);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn negative_literals_are_rejected() {
    let o = pmcut(&["verify-reduction"], Some("p cnf 3 1\n1 -2 3 0\n"));
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");
}

#[test]
fn bench_csv() {
    let args = ["bench", "--sizes", "8,12", "--count", "2", "--algos", "branch,oracle", "--deterministic", "--threads", "2"];
    let a = stdout(&pmcut(&args, None));
    let b = stdout(&pmcut(&args, None));
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "instance,n,m,algorithm,has_pmc,nodes,millis");
    assert_eq!(lines.len(), 1 + 2 * 2 * 2);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 7 && l.ends_with(',')));
}
