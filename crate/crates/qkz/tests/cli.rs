use std::path::Path;
use std::process::{Command, Output};

use qkz::json::SolutionFile;
use serde_json::{json, Value};

fn qkz(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qkz"));
    cmd.args(args)
        .env_remove("QKZ_CACHE_DIR")
        .env_remove("QKZ_THREADS");
    if let Some(dir) = cache {
        cmd.env("QKZ_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn solve_prints_sum_rules() {
    assert_eq!(
        json_out(&qkz(&["solve", "--size", "6", "--form", "tau"], None)),
        json!([1, 3, 7, 6, 6, 2, 1])
    );
    assert_eq!(json_out(&qkz(&["solve", "-L", "1"], None)), json!([1]));
    assert_eq!(
        json_out(&qkz(&["solve", "--size", "7", "--form", "tau"], None)),
        json!([1, 6, 19, 32, 41, 35, 21, 11, 3, 1])
    );
}

#[test]
fn solve_writes_solution_files() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    let o = qkz(
        &[
            "solve",
            "--size",
            "5",
            "--form",
            "full",
            "--out",
            full.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(json_out(&o), json!([1, 3, 4, 2, 1]));
    let f = SolutionFile::read(std::fs::File::open(&full).unwrap()).unwrap();
    let s = f.to_full().unwrap();
    assert_eq!(s.size, 5);
    assert_eq!(s.patterns.len(), 5);

    let tau = dir.path().join("tau.json");
    qkz(
        &["solve", "--size", "5", "--out", tau.to_str().unwrap()],
        None,
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&tau).unwrap()).unwrap();
    assert_eq!(v["L"], json!(5));
    assert_eq!(v["form"], json!("tau"));
    let polys: Vec<&Value> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| &c["poly"])
        .collect();
    assert!(polys.contains(&&json!([1, 0, 2])));
    assert_eq!(v["components"][0]["pattern"]["size"], json!(5));
}

#[test]
fn enumerate_examples() {
    let v = json_out(&qkz(
        &["enumerate", "--family", "cstcpp", "--n", "4", "--tau", "1"],
        None,
    ));
    assert_eq!(
        v,
        json!({"n": 4, "family": "cstcpp", "tau": "1", "refined": false, "values": [170]})
    );
    let v = json_out(&qkz(
        &["enumerate", "--family", "vsasm", "--n", "5", "--tau", "-1"],
        None,
    ));
    assert_eq!(v["values"], json!([1089]));
    let v = json_out(&qkz(
        &["enumerate", "--family", "tsscpp", "--n", "3", "--refined"],
        None,
    ));
    let polys: Vec<Value> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].clone())
        .collect();
    assert_eq!(
        polys,
        [
            json!([0, 0, 0, 1]),
            json!([0, 0, 2]),
            json!([0, 1]),
            json!([0, 2]),
            json!([1])
        ]
    );
    let v = json_out(&qkz(
        &[
            "enumerate",
            "--family",
            "cstcpp",
            "--n",
            "3",
            "--tau",
            "3/2",
        ],
        None,
    ));
    assert_eq!(v["values"], json!(["421/16"]));
}

#[test]
fn enumerate_csv_table() {
    let o = qkz(
        &[
            "enumerate",
            "--family",
            "tsscpp",
            "--n",
            "2",
            "--refined",
            "--csv",
        ],
        None,
    );
    assert_eq!(stdout(&o), "endpoints,tau^0,tau^1\n1,0,1\n2,1,0\n");
    let o = qkz(
        &[
            "enumerate",
            "--family",
            "tsscpp",
            "--n",
            "2",
            "--csv",
            "--tau",
            "2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_examples() {
    let o = qkz(&["oracle", "--family", "tsscpp", "--n", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("14 of 14 tuples match"));
    let o = qkz(&["oracle", "--family", "vsasm", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("sum match"), "{last}");
    assert!(
        last.ends_with("1 + 3τ + 7τ^2 + 6τ^3 + 6τ^4 + 2τ^5 + τ^6"),
        "{last}"
    );
    let o = qkz(&["oracle", "--family", "tsscpp", "--n", "1"], None);
    assert!(stdout(&o).contains("[] | 1 | 1 | match"));
}

#[test]
fn check_examples() {
    let v = json_out(&qkz(&["check", "--suite", "system", "--size", "6"], None));
    assert_eq!(v[0]["status"], json!("pass"));
    let v = json_out(&qkz(&["check", "--suite", "identities", "--n", "5"], None));
    let kinds: Vec<&Value> = v.as_array().unwrap().iter().map(|r| &r["kind"]).collect();
    assert!(kinds.contains(&&json!("proved-identity")) && kinds.contains(&&json!("conjecture")));
    let v = json_out(&qkz(
        &["check", "--suite", "conjectures", "--p", "1..3"],
        None,
    ));
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn conjectures_at_size_eight() {
    let v = json_out(&qkz(
        &["check", "--suite", "conjectures", "--size", "8"],
        None,
    ));
    let c2 = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "conjecture2")
        .unwrap();
    assert_eq!(c2["status"], json!("pass"));
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn falsification_is_reported_with_witness() {
    let o = qkz(&["check", "--suite", "conjectures", "--size", "7"], None);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c3 = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "conjecture3")
        .unwrap();
    assert_eq!(c3["status"], json!("fail"));
    assert_eq!(
        c3["reproduce"],
        json!("qkz check --suite conjectures --size 7")
    );
    let w = c3["witness"].as_str().unwrap();
    assert!(w.contains("{(2,3),(4,5),(6,7),u=1}"), "{w}");
    assert!(w.contains("found 1 + 8τ^2 + 12τ^4 + 5τ^6"), "{w}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["check", "--suite", "system"][..],
        &["enumerate", "--family", "vsasm", "--n", "3", "--tau", "0.5"],
        &["enumerate", "--family", "vsasm"],
        &["oracle", "--family", "tsscpp", "--n", "9"],
        &["solve", "--size", "0"],
        &["check", "--suite", "all", "--size", "4..2"],
    ] {
        assert_eq!(qkz(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cached_runs_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "check", "--suite", "all", "--size", "2..6", "--n", "3", "--p", "2",
    ];
    let cold = qkz(&args, None);
    let first = qkz(&args, Some(dir.path()));
    assert!(dir.path().join("tau-L5.json").exists());
    assert!(dir.path().join("full-L6.json").exists());
    let warm = qkz(&args, Some(dir.path()));
    let threaded = qkz(&[&args[..], &["--threads", "3"]].concat(), Some(dir.path()));
    assert_eq!(cold.status.code(), Some(0));
    for o in [&first, &warm, &threaded] {
        assert_eq!(o.stdout, cold.stdout);
    }
    let v: Value = serde_json::from_slice(&cold.stdout).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["status"] == "skipped"));
}
