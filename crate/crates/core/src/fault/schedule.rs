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

//! Round schedules for noisy execution.
//!
//! A round is a set of gates executed in one logical time step; logical
//! noise acts on the listed qubits once the round's gates are done.
//! Trailing measurements run noise-free after the last round.

use serde::{Deserialize, Serialize};

use super::FaultError;
use crate::circuit::{Circuit, Gate, GateKind};
use crate::compiler::{eliminate_tdag, CompileOptions};
use crate::protocols::{self, Protocol};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub label: String,
    pub gates: Vec<Gate>,
    /// Qubits hit by logical noise at the end of the round.
    pub noisy_qubits: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundSchedule {
    pub n: usize,
    pub rounds: Vec<Round>,
    pub tail: Vec<Gate>,
}

impl RoundSchedule {
    /// Builds a schedule whose noisy qubits are those prepared (or first
    /// used) at or before each round and not yet measured.
    pub fn with_liveness(n: usize, rounds: Vec<(String, Vec<Gate>)>, tail: Vec<Gate>) -> Self {
        let mut born = vec![usize::MAX; n];
        let mut dead = vec![usize::MAX; n];
        for (r, (_, gates)) in rounds.iter().enumerate() {
            for g in gates {
                for &q in &g.qubits {
                    born[q] = born[q].min(r);
                    if g.kind.is_measurement() {
                        dead[q] = r;
                    } else if g.kind.is_prep() && dead[q] != usize::MAX && dead[q] < r {
                        dead[q] = usize::MAX;
                    }
                }
            }
        }
        let rounds = rounds
            .into_iter()
            .enumerate()
            .map(|(r, (label, gates))| Round {
                label,
                gates,
                noisy_qubits: (0..n).filter(|&q| born[q] <= r && dead[q] > r).collect(),
            })
            .collect();
        Self { n, rounds, tail }
    }

    /// Generic fallback: every ASAP layer of `c` is a round, trailing measurements form the tail.
    pub fn asap(c: &Circuit) -> Self {
        let tail_start = c
            .gates
            .iter()
            .rposition(|g| !g.kind.is_measurement())
            .map_or(0, |i| i + 1);
        let body = Circuit { n: c.n, gates: c.gates[..tail_start].to_vec() };
        let layers = crate::circuit::gate_layers(&body);
        let depth = layers.iter().map(|l| l + 1).max().unwrap_or(0);
        let mut rounds: Vec<(String, Vec<Gate>)> = (0..depth).map(|r| (format!("layer {r}"), Vec::new())).collect();
        for (g, &l) in body.gates.iter().zip(&layers) {
            rounds[l].1.push(g.clone());
        }
        Self::with_liveness(c.n, rounds, c.gates[tail_start..].to_vec())
    }

    pub fn circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.n);
        for r in &self.rounds {
            c.extend(r.gates.iter().cloned());
        }
        c.extend(self.tail.iter().cloned());
        c
    }

    /// Gate index just after each round.
    pub fn round_ends(&self) -> Vec<usize> {
        self.rounds
            .iter()
            .scan(0, |acc, r| {
                *acc += r.gates.len();
                Some(*acc)
            })
            .collect()
    }

    /// Number of (round, qubit) noise locations.
    pub fn noise_locations(&self) -> usize {
        self.rounds.iter().map(|r| r.noisy_qubits.len()).sum()
    }
}

/// Where the adaptive S corrections go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SRound {
    /// At the end of the last decoding round; the decoding rounds are the S round.
    #[default]
    InDecode,
    /// In a round of their own after decoding.
    Separate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplOptions {
    pub t_decode: usize,
    pub s_round: SRound,
    /// Whether logical noise also acts at the end of the preparation round.
    pub noise_after_prep: bool,
}

impl Default for ImplOptions {
    fn default() -> Self {
        Self { t_decode: 1, s_round: SRound::default(), noise_after_prep: true }
    }
}

struct Builder {
    rounds: Vec<(String, Vec<Gate>)>,
    level: Vec<usize>,
    pending: Vec<Vec<Gate>>,
}

impl Builder {
    fn new_round(&mut self, label: String) -> usize {
        self.rounds.push((label, Vec::new()));
        self.rounds.len() - 1
    }

    /// Places a gate in round `r`, releasing held single-qubit Cliffords first.
    fn place(&mut self, r: usize, g: Gate) {
        for &q in &g.qubits {
            let held = std::mem::take(&mut self.pending[q]);
            self.rounds[r].1.extend(held);
            self.level[q] = self.level[q].max(r);
        }
        self.rounds[r].1.push(g);
    }
}

/// Replaces every T gate of a compiled circuit by a teleportation gadget
/// with its own `|T>` resource qubit and lays the result out in rounds.
///
/// Round 0 prepares every qubit. CNOT stretches become ASAP rounds; each T
/// layer becomes one injection round (CNOT data to resource, Z measurement
/// of the resource) followed by `t_decode` decoding rounds and the
/// classically controlled S corrections. Single-qubit Cliffords are held
/// until the next timed gate on their qubit, which is exact for
/// depolarizing noise. Trailing measurements form the tail.
pub fn implement_t_gadgets(c: &Circuit, opts: &ImplOptions) -> Result<RoundSchedule, FaultError> {
    let c = eliminate_tdag(c);
    let n_data = c.n;
    let gadgets = c.gates.iter().filter(|g| g.kind == GateKind::T).count();
    let n = n_data + gadgets;
    let tail_start = c.gates.iter().rposition(|g| !g.kind.is_measurement()).map_or(0, |i| i + 1);
    let mut b = Builder { rounds: Vec::new(), level: vec![0; n], pending: vec![Vec::new(); n] };
    b.new_round("prep".into());
    let mut idx = 0;
    while idx < tail_start {
        let g = &c.gates[idx];
        if g.kind.is_prep() {
            b.place(0, g.clone());
        } else if g.qubits.len() == 1 && !g.kind.is_t_type() && !g.kind.is_measurement() && g.kind != GateKind::CondS {
            b.pending[g.qubits[0]].push(g.clone());
        } else {
            break;
        }
        idx += 1;
    }
    for a in n_data..n {
        b.place(0, Gate::single(GateKind::PrepT, a));
    }
    let mut next_aux = n_data;
    let mut region_base = 0;
    let mut cnot_rounds = 0;
    let mut t_layers = 0;
    while idx < tail_start {
        let g = &c.gates[idx];
        match g.kind {
            k if k.is_prep() || k.is_measurement() || k == GateKind::CondS => {
                return Err(FaultError::Unsupported(format!("{k} at gate {idx} inside the circuit body")));
            }
            GateKind::CNOT | GateKind::SWAP | GateKind::CZ | GateKind::CS | GateKind::CCZ => {
                let r = g.qubits.iter().map(|&q| b.level[q]).max().unwrap_or(0).max(region_base) + 1;
                while b.rounds.len() <= r {
                    cnot_rounds += 1;
                    b.new_round(format!("cnot {cnot_rounds}"));
                }
                b.place(r, g.clone());
                idx += 1;
            }
            GateKind::T => {
                // T layer: the run of single-qubit gates starting here.
                let end = (idx..tail_start)
                    .find(|&i| c.gates[i].qubits.len() > 1 || !c.gates[i].kind.is_diagonal() && c.gates[i].kind != GateKind::X)
                    .unwrap_or(tail_start);
                t_layers += 1;
                let inj = b.new_round(format!("inject {t_layers}"));
                let decode: Vec<usize> =
                    (0..opts.t_decode).map(|i| b.new_round(format!("decode {t_layers}.{}", i + 1))).collect();
                let s_round = match (opts.s_round, decode.last()) {
                    (SRound::InDecode, Some(&last)) => last,
                    (SRound::InDecode, None) => inj,
                    (SRound::Separate, _) => b.new_round(format!("adaptive S {t_layers}")),
                };
                let mut done = vec![false; n_data];
                for g in &c.gates[idx..end] {
                    let q = g.qubits[0];
                    if g.kind == GateKind::T {
                        if done[q] {
                            return Err(FaultError::Unsupported(format!("two T gates on qubit {q} in one layer")));
                        }
                        let a = next_aux;
                        next_aux += 1;
                        let rec = format!("inj{a}");
                        b.place(inj, Gate::cnot(q, a));
                        b.place(inj, Gate::measure(GateKind::MeasZ, a, rec.clone()));
                        b.place(s_round, Gate::cond_s(q, rec));
                        done[q] = true;
                    } else if done[q] {
                        b.place(s_round, g.clone());
                    } else {
                        b.pending[q].push(g.clone());
                    }
                }
                region_base = b.rounds.len() - 1;
                for q in 0..n {
                    b.level[q] = b.level[q].max(region_base);
                }
                idx = end;
            }
            _ => {
                b.pending[g.qubits[0]].push(g.clone());
                idx += 1;
            }
        }
    }
    let mut tail: Vec<Gate> = b.pending.iter_mut().flat_map(std::mem::take).collect();
    tail.extend(c.gates[tail_start..].iter().cloned());
    let mut sched = RoundSchedule::with_liveness(n, b.rounds, tail);
    if !opts.noise_after_prep {
        sched.rounds[0].noisy_qubits.clear();
    }
    Ok(sched)
}

/// The explicit-gadget schedule of a bundled protocol compiled with default options.
pub fn bundled_impl_schedule(p: &Protocol, opts: &ImplOptions) -> Result<RoundSchedule, FaultError> {
    let (_, circuit) = p.compile(&CompileOptions::default())?;
    implement_t_gadgets(&circuit, opts)
}

#[allow(dead_code)]
pub(crate) fn ccz_schedule(t_decode: usize) -> RoundSchedule {
    bundled_impl_schedule(&protocols::ccz(), &ImplOptions { t_decode, ..Default::default() })
        .expect("bundled CCZ compiles")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::Target;
    use crate::semantics::{enumerate_branches, state_fidelity};

    #[test]
    fn ccz_schedule_shape() {
        let s = ccz_schedule(1);
        assert_eq!(s.n, 8);
        let labels: Vec<&str> = s.rounds.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["prep", "cnot 1", "cnot 2", "cnot 3", "inject 1", "decode 1.1", "cnot 4", "cnot 5"]);
        // resource qubits stop being noisy once measured
        assert_eq!(s.rounds[3].noisy_qubits.len(), 8);
        assert_eq!(s.rounds[4].noisy_qubits, vec![0, 1, 2, 3]);
        assert!(s.tail.iter().any(|g| g.kind == GateKind::MeasX));
    }

    #[test]
    fn gadget_schedule_is_noiselessly_correct() {
        for p in [protocols::ccz(), protocols::cs()] {
            for s_round in [SRound::InDecode, SRound::Separate] {
                let sched = bundled_impl_schedule(&p, &ImplOptions { t_decode: 2, s_round, noise_after_prep: true })
                    .unwrap();
                let c = sched.circuit();
                let target = Target::new(p.postselection(), p.outputs.clone(), p.ideal.clone());
                let branches = enumerate_branches(&c, &target.postselect, &[]).unwrap();
                let acc: f64 = branches.iter().map(|b| b.weight).sum();
                assert!((acc - 1.0).abs() < 1e-9, "{}", p.name);
                for br in branches {
                    let f = state_fidelity(&br.state, &p.ideal, &p.outputs).unwrap();
                    assert!((f - 1.0).abs() < 1e-10, "{}", p.name);
                }
            }
        }
    }

    #[test]
    fn t15_schedule_builds() {
        let s = bundled_impl_schedule(&protocols::t15(), &ImplOptions::default()).unwrap();
        assert_eq!(s.n, 15);
        let c = s.circuit();
        assert_eq!(c.gates.iter().filter(|g| g.kind == GateKind::PrepT).count(), 15);
        assert!(c.gates.iter().all(|g| g.kind != GateKind::T));
    }

    #[test]
    fn asap_fallback_marks_liveness() {
        let c = Circuit::with_gates(
            2,
            vec![
                Gate::single(GateKind::PrepPlus, 0),
                Gate::single(GateKind::PrepPlus, 1),
                Gate::cnot(0, 1),
                Gate::measure(GateKind::MeasX, 1, "m"),
            ],
        )
        .unwrap();
        let s = RoundSchedule::asap(&c);
        assert_eq!(s.rounds.len(), 2);
        assert_eq!(s.tail.len(), 1);
        assert_eq!(s.noise_locations(), 4);
        assert_eq!(s.circuit(), c);
    }
}
