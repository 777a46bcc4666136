// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ftcb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftcb"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn ftcb")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn load(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/stats.schema.json")).expect("schema is JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn analyze_t_only_circuit() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.qasm"), "OPENQASM 2.0;\nqreg q[2];\nt q[0];\n").unwrap();
    let o = ftcb(&["analyze", "t.qasm", "--synth", "none", "--out", "res"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let s = load(&dir.path().join("res/stats.json"));
    assert_eq!(s["t_count"], 1);
    assert_eq!(s["pbc_t_operators"], 1);
    assert_valid(&validator(), &s);
    let pbc = fs::read_to_string(dir.path().join("res/circuit.pbc")).unwrap();
    assert!(pbc.contains("rot +ZI pi/4\n"));
    let csv = fs::read_to_string(dir.path().join("res/t_density.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("qubit,0,1,"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("rz.qasm"), "qreg q[1];\nrz(0.3) q[0];\n").unwrap();
    fs::write(p.join("bad.qasm"), "qreg q[1];\nmy_gate q[0];\n").unwrap();
    fs::write(p.join("syntax.qasm"), "qreg q[1]\nh q[0];\n").unwrap();
    fs::write(p.join("v3.qasm"), "OPENQASM 3.0;\nqreg q[1];\n").unwrap();

    let o = ftcb(&["analyze", "rz.qasm", "--synth", "none", "--out", "x"], p);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("'rz'"));
    let o = ftcb(&["analyze", "bad.qasm", "--out", "x"], p);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("my_gate"));
    let o = ftcb(&["analyze", "syntax.qasm", "--out", "x"], p);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("syntax.qasm:2:1:"), "{}", stderr(&o));
    let o = ftcb(&["analyze", "v3.qasm", "--out", "x"], p);
    assert_eq!(o.status.code(), Some(1));
    let o = ftcb(&["analyze", "missing.qasm"], p);
    assert_eq!(o.status.code(), Some(1));
    // The same Rz file is fine once synthesized.
    let o = ftcb(&["analyze", "rz.qasm", "--out", "ok"], p);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn convert_paths() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("t.qasm"), "OPENQASM 2.0;\nqreg q[1];\nt q[0];\n").unwrap();
    let o = ftcb(&["convert", "t.qasm", "--to", "pbc-text", "-o", "t.pbc"], p);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(p.join("t.pbc")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("rot ")).collect::<Vec<_>>(), ["rot +Z pi/4"]);
    ftcb::pbc_text::parse_pbc(&text).unwrap();
    let o = ftcb(&["convert", "t.pbc", "--to", "qasm"], p);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot be converted"));
    fs::write(p.join("rz.qasm"), "qreg q[1];\nrz(0.3) q[0];\n").unwrap();
    let o = ftcb(&["convert", "rz.qasm", "--to", "pbc-text"], p);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_qft_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = ftcb(&["generate", "qft", "--qubits", "3", "-o", "qft3.qasm"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let c = ftcb::qasm::parse_qasm(&fs::read_to_string(dir.path().join("qft3.qasm")).unwrap()).unwrap();
    assert_eq!(c.len(), 7);
    let o = ftcb(&["generate", "adder", "--bits", "31"], dir.path());
    let c = ftcb::qasm::parse_qasm(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(c.num_qubits(), 64);
    let o = ftcb(&["generate", "qaoa", "--qubits", "3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = ftcb(&["generate", "ising_1d"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

fn small_suite(dir: &Path) {
    fs::create_dir_all(dir).unwrap();
    for (name, args) in [
        ("qft4", vec!["generate", "qft", "--qubits", "4"]),
        ("ising6", vec!["generate", "ising_1d", "--sites", "6", "--steps", "2", "--dt", "0.3"]),
    ] {
        let mut a = args.clone();
        let out = format!("{name}.qasm");
        a.extend(["-o", out.as_str()]);
        assert!(ftcb(&a, dir).status.success());
    }
}

#[test]
fn bench_isolates_failures_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    small_suite(&suite);
    let run = |out: &str, threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_ftcb"))
            .args(["bench", "suite", "--pipelines", "sk-1,sk-2", "--out", out])
            .env("FTCB_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
        load(&dir.path().join(out).join("manifest.json"))
    };
    let m = run("r1", "1");
    let entries = m["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["status"] == "ok"));
    run("r2", "3");
    let v = validator();
    for c in ["qft4", "ising6"] {
        for p in ["sk-1", "sk-2"] {
            let rel = format!("{c}/{p}/stats.json");
            let a = fs::read(dir.path().join("r1").join(&rel)).unwrap();
            let b = fs::read(dir.path().join("r2").join(&rel)).unwrap();
            assert_eq!(a, b, "{rel} differs across runs");
            assert_valid(&v, &serde_json::from_slice(&a).unwrap());
        }
    }
    let summary = fs::read_to_string(dir.path().join("r1/summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5);

    fs::write(suite.join("broken.qasm"), "qreg q[1];\nh q[0]\n").unwrap();
    let m = run("r3", "2");
    let entries = m["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let bad: Vec<_> = entries.iter().filter(|e| e["status"] == "error").collect();
    assert_eq!(bad.len(), 2);
    assert!(bad.iter().all(|e| e["circuit"] == "broken"));

    let empty = dir.path().join("empty");
    fs::create_dir_all(&empty).unwrap();
    let o = ftcb(&["bench", "empty", "--out", "r4"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn external_pipeline_reads_supplied_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::create_dir_all(p.join("suite")).unwrap();
    fs::create_dir_all(p.join("ext")).unwrap();
    fs::write(p.join("suite/rot.qasm"), "qreg q[2];\nrz(0.3) q[0];\ncx q[0],q[1];\n").unwrap();
    fs::write(p.join("ext/rot.gs-1.qasm"), "qreg q[2];\nh q[0];\nt q[0];\nh q[0];\ncx q[0],q[1];\n").unwrap();
    let o = ftcb(
        &["bench", "suite", "--pipelines", "gs-1,gs-2", "--external-dir", "ext", "--out", "r"],
        p,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let m = load(&p.join("r/manifest.json"));
    let status: Vec<_> = m["entries"].as_array().unwrap().iter().map(|e| e["status"].clone()).collect();
    assert_eq!(status, ["ok", "skipped"]);
    let s = load(&p.join("r/rot/gs-1/stats.json"));
    assert_eq!(s["t_count"], 1);
    assert_eq!(s["synthesis"]["mode"], "external");
}

#[test]
fn memory_guard_fails_fast() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.qasm"), "qreg q[2];\nt q[0];\nt q[1];\n").unwrap();
    let o = ftcb(&["analyze", "t.qasm", "--synth", "none", "--max-ram-mb", "0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds"));
}
