//! Runs the `permcount` binary end to end and checks its output contract.

use std::process::{Command, Output};

use serde_json::Value;

fn permcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcount"))
        .args(args)
        .env_remove("PERMCOUNT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = permcount(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn all_checks_pass(v: &Value) -> bool {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == Value::Bool(true))
}

#[test]
fn count_f4_all_routes() {
    let v = json(&["count", "--field", "2^2", "--route", "all"]);
    assert_eq!(
        (v["q"].as_u64(), v["p"].as_u64(), v["r"].as_u64()),
        (Some(4), Some(2), Some(2))
    );
    assert_eq!(v["command"], "count");
    let results = v["results"].as_array().unwrap();
    let routes: Vec<&str> = results.iter().map(|r| r["route"].as_str().unwrap()).collect();
    assert_eq!(routes, ["cyclotomic", "groupring", "partition"]);
    for r in results {
        assert_eq!(r["N"].to_string(), "3");
    }
    let gr = &results[1];
    assert_eq!(gr["c_minus1"].to_string(), "3");
    assert_eq!(results[0]["per_V"].to_string(), "2");
    assert_eq!(results[2]["per_V"].to_string(), "2");
    assert!(all_checks_pass(&v));
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"route-agreement") && names.contains(&"trace-relation"));
}

#[test]
fn count_f8_group_ring() {
    let v = json(&["count", "--field", "2^3", "--route", "groupring"]);
    let r = &v["results"][0];
    assert_eq!(r["N"].to_string(), "4368");
    assert_eq!(r["c_minus1"].to_string(), "672");
    assert!(r["c"].as_array().unwrap().iter().all(|c| c.as_u64() == Some(624)));
    assert_eq!(r["bound"]["lo"], "3898");
    assert_eq!(r["bound"]["hi"], "4922");
}

#[test]
fn count_f5_cyclotomic() {
    let v = json(&["count", "--field", "5", "--route", "cyclotomic"]);
    assert_eq!(v["results"][0]["N"].to_string(), "20");
    assert_eq!(v["results"][0]["per_V"].to_string(), "-1");
}

#[test]
fn count_lower_degree() {
    let v = json(&["count", "--field", "7", "--d", "4"]);
    assert_eq!(v["results"][0]["d"].to_string(), "4");
    assert_eq!(v["results"][0]["N_fixed0"].to_string(), "84");
    assert_eq!(v["results"][0]["N_lidl_mullen"].to_string(), "588");
}

#[test]
fn table_csv_f4_and_f5() {
    let out = permcount(&["table", "--field", "2^2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "d,N_fixed0,N_lidl_mullen\n1,3,12\n2,3,12\ntotal,6,24\n");
    let out = permcount(&["table", "--field", "5", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "d,N_fixed0,N_lidl_mullen\n1,4,20\n2,0,0\n3,20,100\ntotal,24,120\n"
    );
}

#[test]
fn table_f7_divisor_zeros() {
    let v = json(&["table", "--field", "7", "--route", "all"]);
    assert_eq!(v["total"].to_string(), "720");
    let rows = v["results"].as_array().unwrap();
    let n = |d: u64| rows.iter().find(|r| r["d"].as_u64() == Some(d)).unwrap()["N_fixed0"].to_string();
    assert_eq!((n(2), n(3)), ("0".to_string(), "0".to_string()));
    assert!(all_checks_pass(&v));
}

#[test]
fn verify_f8_and_f9() {
    for field in ["2^3", "3^2"] {
        let v = json(&["verify", "--field", field, "--threads", "2"]);
        assert!(all_checks_pass(&v), "{field}: {}", v["checks"]);
        for row in v["results"].as_array().unwrap() {
            assert_eq!(row["N_fixed0"], row["N_oracle"]);
        }
    }
    let v = json(&["verify", "--field", "2^3"]);
    let routes = v["routes"].as_array().unwrap();
    assert!(routes.iter().all(|r| r["N"].as_u64() == Some(4368)));
}

#[test]
fn verify_csv_lists_checks() {
    let out = permcount(&["verify", "--field", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check,ok\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn modulus_flag_gives_identical_tables() {
    let with = json(&["verify", "--field", "2^2", "--modulus", "1,1,1"]);
    let without = json(&["verify", "--field", "2^2"]);
    assert_eq!(with["results"], without["results"]);
    let a = json(&["table", "--field", "3^2", "--modulus", "1,0,1"]);
    let b = json(&["table", "--field", "3^2", "--modulus", "1,1,2"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["count", "--field", "2^3", "--route", "all"][..],
        &["table", "--field", "7"],
        &["verify", "--field", "5"],
        &["bench", "--field", "5", "--field", "2^2"],
    ] {
        let text = stdout(&permcount(args));
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn bench_csv_and_guard_refusal() {
    let out = permcount(&["bench", "--field", "2^3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("field,route,n,millis"));
    let routes: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(
        routes,
        ["cyclotomic", "groupring-naive", "groupring-ryser", "partition"]
    );

    let out = permcount(&["bench", "--field", "13", "--route", "groupring", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-naive"));
    assert!(stdout(&out).contains("13,groupring-ryser,12,"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| permcount(args).status.code();
    assert_eq!(code(&["count", "--field", "6"]), Some(4));
    assert_eq!(code(&["count", "--field", "2^3:1,0,0,1"]), Some(4));
    assert_eq!(code(&["count", "--field", "2^x"]), Some(4));
    assert_eq!(code(&["count", "--field", "2^3", "--route", "fft"]), Some(4));
    assert_eq!(code(&["count"]), Some(4));
    assert_eq!(code(&["frobnicate"]), Some(4));
    assert_eq!(code(&["count", "--field", "2^2", "--field", "5"]), Some(4));
    assert_eq!(code(&["count", "--field", "5", "--d", "9"]), Some(4));
    assert_eq!(code(&["verify", "--field", "13"]), Some(3));
    assert_eq!(code(&["count", "--field", "2^3", "--max-ryser", "5"]), Some(3));
    assert_eq!(
        code(&["count", "--field", "11", "--route", "partition", "--max-bell", "9"]),
        Some(3)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn out_flag_and_thread_env() {
    let dir = std::env::temp_dir().join(format!("permcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_permcount"))
        .args(["table", "--field", "2^2", "--format", "csv", "--out"])
        .arg(&path)
        .env("PERMCOUNT_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "d,N_fixed0,N_lidl_mullen\n1,3,12\n2,3,12\ntotal,6,24\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_is_readable() {
    let out = permcount(&["count", "--field", "2^2", "--format", "text"]);
    let text = stdout(&out);
    assert!(text.contains("per(A) = 3 + 1·X^{w^1} + 1·X^{w^2} + 1·X^{w^3}"));
    assert!(text.contains("route-agreement") || text.contains("constant-balance"));
}
