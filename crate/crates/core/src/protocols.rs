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

//! Bundled magic-state protocols.
//!
//! Each protocol is a rotation program on `|+>^n` whose check qubits end in
//! `|+>` when no fault occurred. Measuring them in the X basis and keeping
//! the `+` outcome detects faults; the remaining qubits carry the output.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind, PhaseExponent, PhaseRotation, RotationProgram};
use crate::compiler::{compile, CompileError, CompileOptions, CompileReport};
use crate::gf2::BitVec;
use crate::semantics::DenseState;

pub const CCZ_JSON: &str = include_str!("../data/ccz.json");
pub const CS_JSON: &str = include_str!("../data/cs.json");
pub const T15_JSON: &str = include_str!("../data/t15.json");

#[derive(Debug, Clone)]
pub struct Protocol {
    pub name: &'static str,
    pub program: RotationProgram,
    pub outputs: Vec<usize>,
    pub checks: Vec<usize>,
    /// Target state on `outputs`, qubit `i` of the state being `outputs[i]`.
    pub ideal: DenseState,
}

fn rot(bits: &[u8], k: u8) -> PhaseRotation {
    let b: Vec<bool> = bits.iter().map(|&x| x == 1).collect();
    PhaseRotation::new(BitVec::from_bools(&b), PhaseExponent::new(k).expect("k < 8")).expect("non-empty support")
}

fn plus_state(n: usize) -> DenseState {
    let amp = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
    DenseState::from_amplitudes(vec![amp; 1 << n]).expect("small register")
}

/// Four-qubit CCZ preparation: qubit 3 is the check, qubits 0..3 hold `CCZ|+++>`.
///
/// The eight supports are `(a, 1)` for every `a` in `F_2^3`; the exponent is
/// `7` for even weight of `a` and `1` for odd weight. The listed order gives
/// the two blocks used in the worked example.
pub fn ccz_program() -> RotationProgram {
    let rots = vec![
        rot(&[1, 0, 1, 1], 7),
        rot(&[0, 1, 1, 1], 7),
        rot(&[1, 1, 1, 1], 1),
        rot(&[1, 0, 0, 1], 1),
        rot(&[0, 0, 1, 1], 1),
        rot(&[0, 0, 0, 1], 7),
        rot(&[0, 1, 0, 1], 1),
        rot(&[1, 1, 0, 1], 7),
    ];
    RotationProgram::new(4, rots).expect("consistent lengths")
}

/// Five-qubit 15-to-1 T distillation: qubit 0 is the output, 1..5 are checks.
///
/// For each non-zero `v` in `F_2^4` the support is `(0, v)` with `k = 1` when
/// the last bit of `v` is set and `(1, v)` with `k = 7` otherwise.
pub fn t15_program() -> RotationProgram {
    let rots = (1u8..16)
        .map(|v| {
            let bits: Vec<u8> = (0..4).map(|i| v >> (3 - i) & 1).collect();
            if bits[3] == 1 {
                rot(&[0, bits[0], bits[1], bits[2], bits[3]], 1)
            } else {
                rot(&[1, bits[0], bits[1], bits[2], bits[3]], 7)
            }
        })
        .collect();
    RotationProgram::new(5, rots).expect("consistent lengths")
}

/// Four-qubit CS preparation: qubits 0, 1 hold `CS|++>`, qubits 2, 3 are checks.
///
/// Supports are `(a, b, g)` for `(a, b)` in `F_2^2` and non-zero `g` in
/// `F_2^2`; `k = 1` when `a = b` and `7` otherwise.
pub fn cs_program() -> RotationProgram {
    let mut rots = Vec::new();
    for ab in 0..4u8 {
        let (a, b) = (ab >> 1 & 1, ab & 1);
        for g in 1..4u8 {
            let k = if a == b { 1 } else { 7 };
            rots.push(rot(&[a, b, g >> 1 & 1, g & 1], k));
        }
    }
    RotationProgram::new(4, rots).expect("consistent lengths")
}

pub fn ccz() -> Protocol {
    let mut ideal = plus_state(3);
    ideal.apply_unitary(&Gate::new(GateKind::CCZ, vec![0, 1, 2])).expect("unitary");
    Protocol { name: "ccz", program: ccz_program(), outputs: vec![0, 1, 2], checks: vec![3], ideal }
}

pub fn t15() -> Protocol {
    let mut ideal = plus_state(1);
    ideal.apply_phase(0, 1);
    Protocol { name: "t15", program: t15_program(), outputs: vec![0], checks: vec![1, 2, 3, 4], ideal }
}

pub fn cs() -> Protocol {
    let mut ideal = plus_state(2);
    ideal.apply_unitary(&Gate::new(GateKind::CS, vec![0, 1])).expect("unitary");
    Protocol { name: "cs", program: cs_program(), outputs: vec![0, 1], checks: vec![2, 3], ideal }
}

pub fn by_name(name: &str) -> Option<Protocol> {
    match name {
        "ccz" => Some(ccz()),
        "t15" | "15-to-1" => Some(t15()),
        "cs" => Some(cs()),
        _ => None,
    }
}

/// Record name of the check measurement on qubit `q`.
pub fn check_record(q: usize) -> String {
    format!("check{q}")
}

/// Appends X-basis check measurements to `c`.
pub fn with_checks(c: &Circuit, checks: &[usize]) -> Circuit {
    let mut out = c.clone();
    out.extend(checks.iter().map(|&q| Gate::measure(GateKind::MeasX, q, check_record(q))));
    out
}

/// Keep-`+` postselection on every check.
pub fn check_postselection(checks: &[usize]) -> BTreeMap<String, u8> {
    checks.iter().map(|&q| (check_record(q), 0)).collect()
}

impl Protocol {
    /// Compiles the program and appends the check measurements.
    pub fn compile(&self, opts: &CompileOptions) -> Result<(CompileReport, Circuit), CompileError> {
        let report = compile(&self.program, opts)?;
        let circuit = with_checks(&report.circuit, &self.checks);
        Ok((report, circuit))
    }

    pub fn postselection(&self) -> BTreeMap<String, u8> {
        check_postselection(&self.checks)
    }
}

/// `|+>` on one qubit, for callers building ideal states by hand.
pub fn plus() -> DenseState {
    DenseState::from_amplitudes(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]).expect("one qubit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_rotation_program;
    use crate::semantics::{enumerate_branches, state_fidelity};

    #[test]
    fn bundled_json_matches_constructors() {
        assert_eq!(parse_rotation_program(CCZ_JSON).unwrap(), ccz_program());
        assert_eq!(parse_rotation_program(CS_JSON).unwrap(), cs_program());
        assert_eq!(parse_rotation_program(T15_JSON).unwrap(), t15_program());
    }

    fn noiseless_fidelity(p: &Protocol) -> (f64, f64) {
        let (_, c) = p.compile(&CompileOptions::default()).unwrap();
        let branches = enumerate_branches(&c, &p.postselection(), &[]).unwrap();
        let acc: f64 = branches.iter().map(|b| b.weight).sum();
        let fid: f64 = branches
            .iter()
            .map(|b| b.weight * state_fidelity(&b.state, &p.ideal, &p.outputs).unwrap())
            .sum::<f64>()
            / acc;
        (acc, fid)
    }

    #[test]
    fn protocols_prepare_their_targets() {
        for p in [ccz(), cs(), t15()] {
            let (acc, fid) = noiseless_fidelity(&p);
            assert!((acc - 1.0).abs() < 1e-9, "{}: acceptance {acc}", p.name);
            assert!((fid - 1.0).abs() < 1e-10, "{}: fidelity {fid}", p.name);
        }
    }
}
