// Copyright contributors to the magic-circuits project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;
use std::process::{Command, Output};

use magic_circuits::circuit::{Circuit, Gate, GateKind};
use magic_circuits::protocols;
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magic-circuits"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ccz.json"), protocols::CCZ_JSON).unwrap();
    dir
}

fn json(dir: &Path, file: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap()
}

fn compile_ccz(dir: &Path) {
    let out = run(dir, &["compile", "--in", "ccz.json", "--checks", "3", "--objective", "cnot-depth", "--seed", "1", "--out", "c.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn compile_writes_circuit_diagram_and_report() {
    let dir = setup();
    compile_ccz(dir.path());
    let report = json(dir.path(), "c.report.json");
    assert_eq!(report["report"]["t_depth"], 2);
    assert_eq!(report["config"]["seed"], 1);
    assert_eq!(report["config"]["version"], env!("CARGO_PKG_VERSION"));
    let circuit = json(dir.path(), "c.json");
    assert_eq!(circuit["circuit"]["n"], 4);
    let diagram = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    assert!(diagram.starts_with("# {"));
    assert!(diagram.contains("MX"));
}

#[test]
fn objectives_keep_t_count() {
    let dir = setup();
    let a = run(dir.path(), &["compile", "--in", "ccz.json", "--objective", "cnot-depth"]);
    let b = run(dir.path(), &["compile", "--in", "ccz.json", "--objective", "cnot-count"]);
    let a: Value = serde_json::from_slice(&a.stdout).unwrap();
    let b: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(a["report"]["t_count"], b["report"]["t_count"]);
}

#[test]
fn usage_and_io_errors_exit_1() {
    let dir = setup();
    assert_eq!(run(dir.path(), &["compile", "--in", "missing.json"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["compile", "--in", "ccz.json", "--protocol", "ccz"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["sweep", "--pl", "0.7", "--r", "1"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["nope"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn unpartitionable_program_exits_2() {
    let dir = setup();
    // two rotations on the same support can never share a block
    let program = r#"{"n": 2, "rotations": [{"support": "11", "k": 1}, {"support": "11", "k": 1}]}"#;
    std::fs::write(dir.path().join("bad.json"), program).unwrap();
    let out = run(dir.path(), &["compile", "--in", "bad.json", "--out", "bad_circuit.json"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(dir.path(), "bad_circuit.report.json")["error"].is_string());
}

#[test]
fn verify_reports_equivalence_and_mismatch() {
    let dir = setup();
    compile_ccz(dir.path());
    assert_eq!(run(dir.path(), &["verify", "c.json", "ccz.json"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["verify", "ccz.json", "ccz.json"]).status.code(), Some(0));

    let mut c = Circuit::new(3);
    c.extend([Gate::cnot(0, 1), Gate::single(GateKind::T, 1), Gate::new(GateKind::CCZ, vec![0, 1, 2])]);
    let mut z = c.clone();
    z.push(Gate::single(GateKind::Z, 2));
    std::fs::write(dir.path().join("a.json"), c.to_json()).unwrap();
    std::fs::write(dir.path().join("z.json"), z.to_json()).unwrap();
    assert_eq!(run(dir.path(), &["verify", "a.json", "a.json"]).status.code(), Some(0));
    let out = run(dir.path(), &["verify", "a.json", "z.json"]);
    assert_eq!(out.status.code(), Some(3));
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["equivalent"], false);
    assert_eq!(run(dir.path(), &["verify", "a.json", "z.json", "--oracle", "dense"]).status.code(), Some(3));
    // polynomial oracle cannot handle preparations and measurements
    assert_eq!(run(dir.path(), &["verify", "c.json", "ccz.json", "--oracle", "phase-poly"]).status.code(), Some(1));
}

#[test]
fn faults_count_harmful_pairs() {
    let dir = setup();
    compile_ccz(dir.path());
    let out = run(dir.path(), &["faults", "--circuit", "c.json", "--pairs", "--out", "f.json"]);
    assert_eq!(out.status.code(), Some(0));
    let f = json(dir.path(), "f.json");
    assert_eq!(f["single_summary"]["detected"], 8);
    assert_eq!(f["single_summary"]["harmful"], 0);
    assert_eq!(f["pair_summary"]["harmful"], 28);
}

#[test]
fn sweep_emits_one_row_per_grid_point() {
    let dir = setup();
    let out = run(dir.path(), &["sweep", "--pl", "1e-4", "--r", "1,3,10", "--shots", "1e4", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), "p_L,r,shots,accepted,infidelity,stderr");
    assert_eq!(lines.count(), 3);
}

#[test]
fn sweep_results_do_not_depend_on_thread_count() {
    let dir = setup();
    let body = |threads: &str| {
        let out = run(dir.path(), &["sweep", "--pl", "1e-3", "--r", "2", "--shots", "150000", "--threads", threads]);
        String::from_utf8(out.stdout).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(body("1"), body("4"));
}

#[test]
fn cost_table() {
    let dir = setup();
    let out = run(dir.path(), &["cost", "--distance", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("20328"));
}
