use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_matroid-chern"));
    cmd.env_remove("MATROID_ENUM_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matroid-chern-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table_is_stable() {
    let a = run(&["table"]);
    let b = run(&["table"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 14);
    assert!(text.lines().any(|l| l == "PG(2,8),1323,441,3,3"));
    assert!(text.lines().any(|l| l == "U(3,7),16,10,8/5,1.6"));
    let rows = json(&run(&["table", "--format", "json"]));
    assert_eq!(rows.as_array().unwrap().len(), 13);
}

#[test]
fn chern_of_uniform() {
    let v = json(&run(&["chern", "--uniform", "3", "9"]));
    let values: Vec<i64> = v.as_array().unwrap().iter().map(|r| r["value"].as_i64().unwrap()).collect();
    assert_eq!(values, [36, 21]);
    let v = json(&run(&["chern", "--uniform", "3", "9", "--exponents", "0,1", "--engine"]));
    assert_eq!(v["value"], 21);
    assert_eq!(v["method"], "intersection");
}

#[test]
fn braid_file_through_engine() {
    let braid = r#"{"n": 6, "rank": 3, "kind": "rank2flats", "data": [[0,1,3],[0,2,4],[1,2,5],[3,4,5]], "name": "Braid"}"#;
    let path = scratch("braid.json", braid);
    let engine = json(&run(&["chern", "--file", path.to_str().unwrap(), "--engine"]));
    let closed = json(&run(&["chern", "--file", path.to_str().unwrap()]));
    let pairs = |v: &Value| -> Vec<i64> { v.as_array().unwrap().iter().map(|r| r["value"].as_i64().unwrap()).collect() };
    assert_eq!(pairs(&engine), [5, 2]);
    assert_eq!(pairs(&closed), [5, 2]);
}

#[test]
fn construct_round_trips() {
    for name in ["fano", "nonfano", "pappus", "nonpappus", "braid", "u-4-6"] {
        let out = run(&["construct", "--builtin", name]);
        let path = scratch(&format!("{name}.json"), &stdout(&out));
        let again = run(&["construct", "--file", path.to_str().unwrap()]);
        assert_eq!(out.stdout, again.stdout, "{name}");
    }
    let target = std::env::temp_dir().join(format!("matroid-chern-out-{}.json", std::process::id()));
    let o = run(&["construct", "--pg2", "3", "--out", target.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["n"], 13);
}

#[test]
fn parse_errors_exit_with_one() {
    let path = scratch("broken.json", "{\"n\": 4,\n  \"rank\": 3,\n  \"kind\": \"rank2flats\",\n  \"data\": [[0, 1, 9]]\n}");
    let o = run(&["invariants", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("data[0][2]"), "{err}");
    let path = scratch("syntax.json", "{\"n\": 4,\n  \"rank\" 3}");
    let o = run(&["invariants", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(run(&["chern", "--builtin", "nosuch"]).status.code(), Some(1));
}

#[test]
fn invariants_and_csm() {
    let v = json(&run(&["invariants", "--builtin", "fano"]));
    assert_eq!(v["beta"], 3);
    assert_eq!(v["char_poly"], "x^3 - 7x^2 + 14x - 8");
    let v = json(&run(&["csm", "--uniform", "3", "4", "--k", "2"]));
    assert_eq!(v["k"], 2);
    assert_eq!(v["weights"].as_array().unwrap().len(), 12);
    let v = json(&run(&["csm", "--builtin", "fano", "--k", "0"]));
    assert_eq!(v["weights"][0]["w"], 3);
    assert_eq!(v["weights"][0]["chain"], serde_json::json!([]));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--builtin", "fano"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ratio = reports.iter().find(|r| r["theorem"] == "ratio").unwrap();
    assert_eq!(ratio["equality_case"], "right");
    assert!(reports.iter().all(|r| r["holds"] == true));
    assert_eq!(run(&["verify", "--n", "6"]).status.code(), Some(0));
}

#[test]
fn geography_and_the_size_gate() {
    let o = run(&["geography", "--n", "7", "--coloop-free"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,c1sq,c2,classes,witness"));
    for pair in ["7,9,3,", "7,10,4,", "7,16,10,"] {
        assert!(text.lines().any(|l| l.starts_with(pair)), "{pair}");
    }
    assert_eq!(run(&["geography", "--n", "9"]).status.code(), Some(1));
    assert_eq!(run(&["geography", "--n", "10", "--allow-n9"]).status.code(), Some(1));
    let allowed = run(&["geography", "--n", "9", "--allow-n9"]);
    assert!(allowed.status.success());
    let via_env = bin().args(["geography", "--n", "9"]).env("MATROID_ENUM_CAP", "9").output().unwrap();
    assert_eq!(via_env.stdout, allowed.stdout);
}
