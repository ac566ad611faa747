use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn witfam(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witfam"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check(cert: &Value, name: &str) -> Value {
    cert["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .cloned()
        .unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn two_star_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = witfam(
        dir.path(),
        &["construct", "--kind", "two_star", "--n", "8", "--d", "3", "--s", "2", "--m", "4", "--out", "fam.json", "--witness-out", "wit.json"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = stdout_json(&out);
    assert_eq!(cert["payload"]["size"], 35);
    assert_eq!(check(&cert, "not a star")["pass"], true);

    let fam: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("fam.json")).unwrap()).unwrap();
    assert_eq!((fam["n"].as_u64(), fam["d"].as_u64(), fam["s"].as_u64()), (Some(8), Some(3), Some(2)));
    assert_eq!(fam["sets"].as_array().unwrap().len(), 35);

    let out = witfam(dir.path(), &["verify", "--family", "fam.json", "--witness", "wit.json", "--s", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_reports_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"n":5,"sets":[[3,4,5],[1,2,3],[1,4,5],[2,4,5]]}"#).unwrap();
    let out = witfam(dir.path(), &["verify", "--family", "bad.json", "--s", "1"]);
    assert_eq!(code(&out), 1);
    let c = check(&stdout_json(&out), "s-witness family");
    assert_eq!(c["pass"], false);
    assert_eq!(c["counterexample"], serde_json::json!([[1, 2, 3]]));
}

#[test]
fn verify_rejects_bad_assignment() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.json"), r#"{"n":4,"d":2,"s":1,"sets":[[1,2,3],[1,2,4]]}"#).unwrap();
    // {5} is not a subset of {1,2,4}.
    fs::write(
        dir.path().join("w.json"),
        r#"{"witnesses":[{"set":[1,2,3],"witness":[3]},{"set":[1,2,4],"witness":[5]}]}"#,
    )
    .unwrap();
    let out = witfam(dir.path(), &["verify", "--family", "f.json", "--witness", "w.json"]);
    assert_eq!(code(&out), 1);
    let cert = stdout_json(&out);
    assert_eq!(cert["checks"][0]["counterexample"], serde_json::json!([[1, 2, 4]]));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("junk.json"), "{not json").unwrap();
    assert_eq!(code(&witfam(dir.path(), &["verify", "--family", "junk.json", "--s", "1"])), 2);
    fs::write(dir.path().join("range.json"), r#"{"n":3,"sets":[[1,2,9]]}"#).unwrap();
    assert_eq!(code(&witfam(dir.path(), &["verify", "--family", "range.json", "--s", "1"])), 2);
    assert_eq!(code(&witfam(dir.path(), &["verify", "--family", "missing.json", "--s", "1"])), 2);
    assert_eq!(code(&witfam(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&witfam(dir.path(), &["search", "--n", "6", "--d", "2", "--s", "1", "--node-limit", "2.5"])), 2);
    let dup = r#"{"witnesses":[{"set":[1,2,3],"witness":[3]},{"set":[1,2,3],"witness":[2]}]}"#;
    fs::write(dir.path().join("dup.json"), dup).unwrap();
    fs::write(dir.path().join("f.json"), r#"{"n":4,"d":2,"s":1,"sets":[[1,2,3]]}"#).unwrap();
    assert_eq!(code(&witfam(dir.path(), &["verify", "--family", "f.json", "--witness", "dup.json"])), 2);
}

#[test]
fn vc_on_pairs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("pairs.json"), r#"{"n":4,"sets":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#).unwrap();
    let out = witfam(dir.path(), &["vc", "--family", "pairs.json", "--d", "1"]);
    assert_eq!(code(&out), 1);
    let cert = stdout_json(&out);
    assert_eq!(check(&cert, "VC <= d")["counterexample"], serde_json::json!([[1, 2]]));
    assert_eq!(check(&cert, "agrees with exact VC")["pass"], true);
    assert_eq!(cert["payload"]["exact_vc"], serde_json::json!({"kind": "exact", "value": 2}));
    // Members of size 2 are not (d+1)-sets for d = 2.
    assert_eq!(code(&witfam(dir.path(), &["vc", "--family", "pairs.json", "--d", "2"])), 2);
}

#[test]
fn structure_commands_on_two_star() {
    let dir = tempfile::tempdir().unwrap();
    let out = witfam(
        dir.path(),
        &["construct", "--kind", "two_star", "--n", "8", "--d", "3", "--s", "2", "--m", "4", "--out", "fam.json", "--witness-out", "wit.json"],
    );
    assert_eq!(code(&out), 0);
    for cmd in ["model", "inject", "stability"] {
        let out = witfam(dir.path(), &[cmd, "--family", "fam.json", "--witness", "wit.json"]);
        assert_eq!(code(&out), 0, "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let cert = stdout_json(&out);
        assert!(cert["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true), "{cmd}");
    }
    let out = witfam(
        dir.path(),
        &["model", "--family", "fam.json", "--witness", "wit.json", "--base", "3,4", "--trace", "trace.json"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let trace: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("trace.json")).unwrap()).unwrap();
    assert_eq!(trace[0]["base"], serde_json::json!([3, 4]));
    // A base nobody uses is an input error.
    let out = witfam(dir.path(), &["model", "--family", "fam.json", "--witness", "wit.json", "--base", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn search_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = witfam(dir.path(), &["search", "--n", "6", "--d", "2", "--s", "0", "--mode", "bnb", "--node-limit", "1e8"]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["payload"]["best_size"], 10);
    assert_eq!(cert["payload"]["complete"], true);
    let out = witfam(dir.path(), &["search", "--n", "6", "--d", "2", "--s", "1", "--node-limit", "5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["payload"]["complete"], false);
}

#[test]
fn certificates_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--n", "5", "--d", "2", "--s", "1", "--threads", "1"];
    let a = witfam(dir.path(), &args);
    let b = witfam(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    let c = witfam(dir.path(), &["search", "--n", "5", "--d", "2", "--s", "1", "--threads", "3"]);
    let (ja, jc) = (stdout_json(&a), stdout_json(&c));
    assert_eq!(ja["payload"]["family"], jc["payload"]["family"]);
    assert_eq!(ja["payload"]["witnesses"], jc["payload"]["witnesses"]);
}

/// Key layout of the certificate is part of the interface.
#[test]
fn certificate_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = witfam(dir.path(), &["search", "--n", "4", "--d", "2", "--s", "1", "--mode", "exhaustive"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let golden = r#"{
  "tool_version": "0.1.0",
  "command": {
    "name": "search",
    "args": {
      "d": 2,
      "mode": "exhaustive",
      "n": 4,
      "node_limit": 1000000000,
      "out": null,
      "s": 1,
      "target": null,
      "threads": 1,
      "three_star": false
    }
  },
  "params": {
    "n": 4,
    "d": 2,
    "s": 1
  },
  "payload": {
    "best_size": 4,
    "bound_nm1_d": 3,
    "complete": true,
    "family": [
      [
        1,
        2,
        3
      ],
      [
        1,
        2,
        4
      ],
      [
        1,
        3,
        4
      ],
      [
        2,
        3,
        4
      ]
    ],
    "found": null,
    "node_limited": false,
    "nodes_explored": 1,
    "witnesses": {
      "witnesses": [
        {
          "set": [
            1,
            2,
            3
          ],
          "witness": [
            1
          ]
        },
        {
          "set": [
            1,
            2,
            4
          ],
          "witness": [
            1
          ]
        },
        {
          "set": [
            1,
            3,
            4
          ],
          "witness": [
            1
          ]
        },
        {
          "set": [
            2,
            3,
            4
          ],
          "witness": [
            2
          ]
        }
      ]
    }
  },
  "checks": [
    {
      "name": "certificate verifies",
      "pass": true,
      "counterexample": null
    }
  ]
}
"#;
    assert_eq!(text, golden);
}

#[test]
fn sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("grid.json"),
        r#"[{"n":4,"d":2,"s":1},{"n":5,"d":2,"s":1},{"n":6,"d":2,"s":1},{"n":3,"d":5,"s":1}]"#,
    )
    .unwrap();
    let out = witfam(dir.path(), &["sweep", "--grid", "grid.json", "--mode", "exhaustive", "--out", "sweep.csv"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_path(dir.path().join("sweep.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header, ["n", "d", "s", "mode", "best_size", "bound_nm1_d", "complete", "nodes", "seconds", "error"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][4], "4");
    assert_eq!((&rows[2][4], &rows[2][5]), ("10", "10"));
    assert!(!rows[3][9].is_empty());

    fs::write(dir.path().join("empty.json"), "[]").unwrap();
    let out = witfam(dir.path(), &["sweep", "--grid", "empty.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,d,s,mode,best_size,bound_nm1_d,complete,nodes,seconds,error\n");
}

/// construct -> file -> verify for every generator over the acceptance grid.
#[test]
fn round_trip_over_grid() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = 0;
    for d in 2..=6usize {
        for s in d / 2 + 1..d {
            for n in (s + 3).max(d + 3)..=d + 8 {
                let mut jobs: Vec<Vec<String>> = (s + 2..n)
                    .map(|m| vec!["--kind".into(), "two_star".into(), "--m".into(), m.to_string()])
                    .collect();
                if n >= d + 1 + s {
                    jobs.push(vec!["--kind".into(), "star".into()]);
                }
                for job in jobs {
                    let (n_s, d_s, s_s) = (n.to_string(), d.to_string(), s.to_string());
                    let mut args = vec!["construct", "--n", &n_s, "--d", &d_s, "--s", &s_s, "--out", "f.json", "--witness-out", "w.json"];
                    args.extend(job.iter().map(String::as_str));
                    let out = witfam(dir.path(), &args);
                    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
                    let out = witfam(dir.path(), &["verify", "--family", "f.json", "--witness", "w.json"]);
                    assert_eq!(code(&out), 0, "verify after {args:?}");
                    runs += 1;
                }
            }
        }
    }
    assert_eq!(runs, 174 + 27);
}
