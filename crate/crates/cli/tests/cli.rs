use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_transita")).args(args).env_remove("TRANSITA_THREADS").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn validate_accepts_a_well_formed_instance() {
    let (code, v, _) = run(&["validate", "--instance", &corpus("st_edge.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn validate_checks_decompositions() {
    let sq = corpus("square.json");
    let tc = corpus("decompositions/square_treecut.json");
    let (_, v, _) = run(&["validate", "--instance", &sq, "--decomposition", &tc, "--treecut"]);
    assert_eq!(v["yes"], true);
    let (_, v, _) = run(&["validate", "--instance", &sq, "--decomposition", &tc]);
    assert_eq!(v["yes"], false);
    assert!(v["decomposition_error"].as_str().unwrap().contains("not covered"));
}

#[test]
fn compath_on_a_single_edge() {
    let (code, v, _) = run(&["compath", "--instance", &corpus("st_edge.json"), "--from", "0", "--to", "1", "--max-len", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["length"], 1);
    assert_eq!(v["answer"], 1);
    assert!(v["family_size"].as_u64().is_some());
    let (_, v, _) = run(&["compath", "--instance", &corpus("st_edge.json"), "--from", "e:0", "--to", "v:1", "--max-len", "2", "--witness"]);
    assert_eq!(v["witness"]["vertices"], serde_json::json!([0, 1]));
}

#[test]
fn solvers_agree_with_oracles_on_the_corpus() {
    let sq = corpus("square.json");
    let (_, a, _) = run(&["comvdp", "--instance", &sq, "--decomposition", &corpus("decompositions/square_treecut.json")]);
    let (_, b, _) = run(&["oracle", "vdp", "--instance", &sq]);
    assert_eq!(a["yes"], b["yes"]);
    let (_, a, _) = run(&["comvdp", "--instance", &sq, "--pairs", "0,2"]);
    assert_eq!(a["yes"], true);

    let c4 = corpus("c4_alternating.json");
    let (_, a, _) = run(&["pchc", "--instance", &c4, "--decomposition", &corpus("decompositions/c4_tree.json")]);
    let (_, b, _) = run(&["pchc", "--instance", &c4, "--engine", "naive"]);
    let (_, c, _) = run(&["oracle", "pchc", "--instance", &c4]);
    assert_eq!((a["yes"].clone(), b["yes"].clone(), c["yes"].clone()), (true.into(), true.into(), true.into()));

    let tp = corpus("two_paths.json");
    for mode in ["edge", "vertex"] {
        let (_, a, _) = run(&["dsp", "--instance", &tp, "--mode", mode]);
        let (_, b, _) = run(&["oracle", "dsp", "--instance", &tp, "--mode", mode]);
        assert_eq!(a["yes"], b["yes"]);
        assert_eq!(a["paths"][0]["vertices"], serde_json::json!([0, 1, 2, 3]));
    }

    let (_, a, _) = run(&["detour", "--instance", &sq, "--from", "1", "--to", "3", "--slack", "1"]);
    let (_, b, _) = run(&["oracle", "detour", "--instance", &sq, "--from", "1", "--to", "3", "--slack", "1"]);
    assert_eq!((a["yes"].clone(), a["nu"].clone()), (b["yes"].clone(), b["nu"].clone()));

    let (_, a, _) = run(&["oracle", "cycle", "--instance", &corpus("psi_cycle.json")]);
    let (_, b, _) = run(&["oracle", "hamiltonian", "--instance", &corpus("psi_ham.json")]);
    assert_eq!(a["yes"], true);
    assert_eq!(b["yes"], true);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["compath", "--instance", &corpus("st_edge.json"), "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bogus"));
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["validate", "--instance", &corpus("decompositions/c4_tree.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"));
    let (code, _, _) = run(&["validate", "--instance", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["compath", "--instance", &corpus("st_edge.json"), "--from", "x:0", "--to", "1", "--max-len", "1"]);
    assert_eq!(code, 2);

    let sq = corpus("square.json");
    let (code, v, _) = run(&["comvdp", "--instance", &sq]);
    assert_eq!((code, v["yes"].clone()), (0, false.into()));
    let (code, _, _) = run(&["--strict-exit", "comvdp", "--instance", &sq]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["--strict-exit", "comvdp", "--instance", &sq, "--pairs", "0,2"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["--threads", "0", "validate", "--instance", &sq]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn thread_count_does_not_change_reports() {
    let tp = corpus("two_paths.json");
    let strip = |mut v: Value| {
        v["stats"].as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let (_, a, _) = run(&["--threads", "1", "dsp", "--instance", &tp, "--mode", "edge"]);
    let out = Command::new(env!("CARGO_BIN_EXE_transita"))
        .args(["dsp", "--instance", &tp, "--mode", "edge"])
        .env("TRANSITA_THREADS", "8")
        .output()
        .unwrap();
    assert!(out.status.success());
    let b: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(strip(a), strip(b));
}

#[test]
fn generators_write_instances() {
    let dir = std::env::temp_dir().join(format!("transita-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json").display().to_string();
    let (code, v, _) = run(&["gen", "--out", &path, "random-ftg", "--n", "8", "--p", "0.4", "--q", "0.5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 3);
    let (_, w, _) = run(&["validate", "--instance", &path]);
    assert_eq!(v["digest"], w["digest"]);
    let out = Command::new(env!("CARGO_BIN_EXE_transita"))
        .args(["gen", "random-ftg", "--n", "8", "--p", "0.4", "--q", "0.5", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, std::fs::read(&path).unwrap());
    let (code, _, _) = run(&["gen", "random-ftg", "--n", "8", "--p", "2", "--q", "0.5", "--seed", "3"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn endpoint_and_pair_parsing() {
    use ftg_core::Endpoint;
    assert_eq!(transita::parse_endpoint("3").unwrap(), Endpoint::Vertex(3));
    assert_eq!(transita::parse_endpoint("e:2").unwrap(), Endpoint::Edge(2));
    assert!(transita::parse_endpoint("v:").is_err());
    assert_eq!(transita::parse_pairs("0,1;2,3").unwrap(), vec![(0, 1), (2, 3)]);
    assert!(transita::parse_pairs("0,1,2").is_err());
}
