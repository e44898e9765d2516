use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mcrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcrkit")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mcrkit-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn unopt_no_swap_has_law_count() {
    let dir = scratch("law");
    let out = dir.join("v.json");
    let o = mcrkit(&["unopt", "--qubits", "2", "--no-swap", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("t_unopt 33"));
    let p = mcrkit::PbcCircuit::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(p.t_count(), 33);
}

#[test]
fn unopt_is_deterministic() {
    let a = mcrkit(&["unopt", "--qubits", "2", "--seed", "7", "--format", "qasm"]);
    let b = mcrkit(&["unopt", "--qubits", "2", "--seed", "7", "--format", "qasm"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("OPENQASM 2.0;"));
}

#[test]
fn unopt_rejects_one_qubit() {
    let o = mcrkit(&["unopt", "--qubits", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(mcrkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mcrkit(&["bench", "--qubits", "1..3"]).status.code(), Some(1));
    assert_eq!(mcrkit(&["count-mcr", "--qubits", "3", "--enumerate"]).status.code(), Some(1));
}

#[test]
fn parse_errors_have_their_own_code() {
    let dir = scratch("parse");
    let bad = dir.join("bad.qasm");
    fs::write(&bad, "OPENQASM 2.0;\nqreg q[1];\nrz(0.1) q[0];\n").unwrap();
    let o = mcrkit(&["convert", "--in", bad.to_str().unwrap(), "--to", "pbc-json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));
}

#[test]
fn verify_unopt_pair_and_convert_round_trip() {
    let dir = scratch("verify");
    let u = dir.join("u.qasm");
    let v = dir.join("v.qasm");
    let input = mcrkit::circuit::emit_qasm(&mcrkit::pbc::pbc_to_gates(&mcrkit::PbcCircuit::default_input(3)));
    fs::write(&u, input).unwrap();
    let o = mcrkit(&["unopt", "--qubits", "3", "--seed", "3", "--format", "qasm", "--out", v.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = mcrkit(&["verify", "--a", u.to_str().unwrap(), "--b", v.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"equivalent\":true"));

    let j = dir.join("v.json");
    let back = dir.join("back.qasm");
    assert!(mcrkit(&["convert", "--in", v.to_str().unwrap(), "--to", "pbc-json", "--out", j.to_str().unwrap()]).status.success());
    assert!(mcrkit(&["convert", "--in", j.to_str().unwrap(), "--to", "qasm", "--out", back.to_str().unwrap()]).status.success());
    let o = mcrkit(&["verify", "--a", v.to_str().unwrap(), "--b", back.to_str().unwrap(), "--method", "statevector"]);
    assert_eq!(o.status.code(), Some(0));

    let t = dir.join("t.qasm");
    fs::write(&t, "OPENQASM 2.0;\nqreg q[3];\nt q[0];\n").unwrap();
    let o = mcrkit(&["verify", "--a", u.to_str().unwrap(), "--b", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn optimize_recovers_the_eight_rotation_example() {
    let dir = scratch("opt");
    let p = dir.join("fig8.json");
    let rotations: Vec<String> = ["XX", "YY", "XY", "YX", "XX", "YY", "XY", "YX"]
        .iter()
        .map(|a| format!("{{\"axis\": \"+{a}\", \"k\": 1}}"))
        .collect();
    fs::write(&p, format!("{{\"n\": 2, \"prefix\": [], \"rotations\": [{}]}}", rotations.join(","))).unwrap();
    let out = dir.join("opt.json");
    let report = dir.join("report.json");
    let o = mcrkit(&[
        "optimize", "--in", p.to_str().unwrap(), "--out", out.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("t_count 8 -> 0"));
    let o = mcrkit(&["optimize", "--in", p.to_str().unwrap(), "--passes", "merge"]);
    assert!(stderr(&o).contains("t_count 8 -> 8"));
    assert_eq!(mcrkit(&["optimize", "--in", p.to_str().unwrap(), "--passes", "zx"]).status.code(), Some(1));
}

#[test]
fn count_mcr() {
    let o = mcrkit(&["count-mcr", "--qubits", "2", "--enumerate"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "360");
    let o = mcrkit(&["count-mcr", "--qubits", "3"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "30240");
}

#[test]
fn bench_csv_is_thread_independent() {
    let dir = scratch("bench");
    let (a, b, j) = (dir.join("a.csv"), dir.join("b.csv"), dir.join("s.json"));
    let run = |csv: &PathBuf, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_mcrkit"))
            .args(["bench", "--qubits", "2..3", "--samples", "8", "--seed", "5", "--csv", csv.to_str().unwrap()])
            .args(["--json", j.to_str().unwrap()])
            .env("MCRKIT_THREADS", threads)
            .output()
            .unwrap()
    };
    assert!(run(&a, "1").status.success());
    assert!(run(&b, "3").status.success());
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert!(csv.starts_with("n,sample,seed,t_unopt,t_opt,p\n"));
    assert_eq!(csv.lines().count(), 17);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(summary["summary"].as_array().unwrap().len(), 2);
}

#[test]
fn bench_no_swap_table() {
    let o = mcrkit(&["bench", "--qubits", "2..4", "--samples", "10", "--no-swap"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    for want in ["33.00", "73.00", "129.00"] {
        assert!(text.contains(want), "{text}");
    }
}
