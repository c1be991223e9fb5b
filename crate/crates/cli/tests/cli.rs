use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramkloost")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn spectrum_of_b5() {
    let o = run(&["spectrum", "--kind", "Bq", "--param", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let pairs: Vec<(i64, u64)> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_i64().unwrap(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(-5, 1), (0, 1), (5, 3)]);
    assert_eq!(v["method"], "rank-trace");
}

#[test]
fn sums() {
    assert_eq!(stdout(&run(&["sum", "ramanujan", "--q", "5", "--n", "0"])), "4\n");
    assert_eq!(stdout(&run(&["sum", "ramanujan", "--q", "12", "--n", "-4"])), "-2\n");
    assert_eq!(stdout(&run(&["sum", "kloosterman", "--q", "5", "--m", "1", "--n", "1"])), "0.381966011250\n");
    let v = json(&run(&["sum", "kloosterman", "--q", "5", "--m", "1", "--n", "2", "--exact"]));
    assert_eq!(v["order"], 5);
    assert!((v["approx"].as_f64().unwrap() + 1.0 + 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn phitilde() {
    assert_eq!(stdout(&run(&["phitilde", "--q", "65"])), "4\n");
    let t = stdout(&run(&["phitilde", "--table", "--upto", "4"]));
    assert_eq!(t, "q,phi,phi_tilde,tau\n1,1,1,1\n2,1,1,2\n3,2,0,2\n4,2,0,3\n");
}

#[test]
fn matrix_export_to_stdout_and_file() {
    assert_eq!(stdout(&run(&["matrix", "--kind", "Aq", "--param", "2", "--format", "csv"])), "1,-1\n-1,1\n");
    let path = std::env::temp_dir().join(format!("ramkloost-cli-{}.json", std::process::id()));
    let o = run(&["matrix", "--kind", "Bq", "--param", "3", "--format", "json", "--exact", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["entries"][0][1].as_f64(), Some(2.0));
    assert_eq!(v["exact"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_single_claims() {
    let o = run(&["verify", "--claim", "example1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pass"], true);
    let o = run(&["verify", "--claim", "theorem3", "--param", "13"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["claim"], "Theorem3");
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["matrix", "--kind", "Aq", "--param", "300", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit 256"));
    assert_eq!(run(&["spectrum", "--kind", "X", "--param", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--claim", "lemma3", "--param", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--claim", "theorem1"]).status.code(), Some(2));
    assert_eq!(run(&["sum", "ramanujan", "--q", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["verify", "--all", "--max-q", "12", "--max-Q", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let (mut va, mut vb) = (json(&a), json(&b));
    strip_timing(&mut va);
    strip_timing(&mut vb);
    assert_eq!(va, vb);
    let claims: Vec<String> = va
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["claim"].as_str().unwrap().to_ascii_lowercase())
        .collect();
    let mut sorted = claims.clone();
    sorted.sort();
    assert_eq!(claims, sorted);
    assert!(claims.iter().any(|c| c == "lemma4"));
}

#[test]
fn large_sieve_demo() {
    let o = run(&["demo", "large-sieve", "--Q", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["details"]["x"], 6);
    assert_eq!(run(&["demo", "large-sieve", "--Q", "9"]).status.code(), Some(2));
}
