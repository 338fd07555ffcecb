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

//! Exhaustive fault enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FaultError, FaultLocation, RoundSchedule};
use crate::circuit::{Circuit, GateKind};
use crate::semantics::{enumerate_branches, state_fidelity, DenseState, Insertion, Pauli};

/// Infidelity above which an accepted fault counts as harmful.
pub const HARMFUL_THRESHOLD: f64 = 1e-9;

const ACCEPT_EPS: f64 = 1e-12;

/// What a run is checked against: postselected records, output qubits and their ideal state.
#[derive(Debug, Clone)]
pub struct Target {
    pub postselect: BTreeMap<String, u8>,
    pub outputs: Vec<usize>,
    pub ideal: DenseState,
}

impl Target {
    pub fn new(postselect: BTreeMap<String, u8>, outputs: Vec<usize>, ideal: DenseState) -> Self {
        Self { postselect, outputs, ideal }
    }

    /// Outputs are the never-measured qubits, every X-basis measurement is
    /// postselected on `+`, and the ideal state is the noiseless output.
    pub fn infer(c: &Circuit) -> Result<Self, FaultError> {
        let outputs = c.unmeasured_qubits();
        let postselect: BTreeMap<String, u8> = c
            .gates
            .iter()
            .filter(|g| g.kind == GateKind::MeasX)
            .filter_map(|g| g.record.clone().map(|r| (r, 0)))
            .collect();
        let branches = enumerate_branches(c, &postselect, &[])?;
        let best = branches
            .iter()
            .max_by(|a, b| a.weight.total_cmp(&b.weight))
            .ok_or_else(|| FaultError::Unsupported("the noiseless run is never accepted".into()))?;
        let ideal = best.state.restricted(&outputs).ok_or_else(|| {
            FaultError::Unsupported("output qubits are entangled with measured qubits".into())
        })?;
        for b in &branches {
            if (state_fidelity(&b.state, &ideal, &outputs)? - 1.0).abs() > 1e-9 {
                return Err(FaultError::Unsupported(
                    "the noiseless output depends on unpostselected measurement outcomes".into(),
                ));
            }
        }
        Ok(Self { postselect, outputs, ideal })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultClass {
    /// Always rejected by postselection.
    Detected,
    /// Accepted with the ideal output.
    Harmless,
    /// Accepted with a corrupted output.
    Harmful,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultEntry {
    pub faults: Vec<FaultLocation>,
    pub class: FaultClass,
    pub acceptance: f64,
    /// Output infidelity given acceptance; absent when never accepted.
    pub infidelity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionTable {
    pub entries: Vec<FaultEntry>,
    pub detected: usize,
    pub harmless: usize,
    pub harmful: usize,
}

impl DetectionTable {
    fn from_entries(entries: Vec<FaultEntry>) -> Self {
        let count = |c| entries.iter().filter(|e| e.class == c).count();
        Self { detected: count(FaultClass::Detected), harmless: count(FaultClass::Harmless), harmful: count(FaultClass::Harmful), entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SiteSet {
    /// Z right after every T, T-dagger and `|T>`-type preparation.
    #[default]
    TSites,
    /// X, Y and Z after every gate on each of its qubits.
    AllSites,
}

pub fn fault_sites(c: &Circuit, sites: SiteSet) -> Vec<FaultLocation> {
    let mut out = Vec::new();
    for (i, g) in c.gates.iter().enumerate() {
        match sites {
            SiteSet::TSites if g.kind.is_t_type() => out.push(FaultLocation {
                gate_index: i + 1,
                qubit: g.qubits[0],
                pauli: Pauli::Z,
                round: None,
            }),
            SiteSet::AllSites if !g.kind.is_measurement() => {
                for &q in &g.qubits {
                    for pauli in Pauli::ALL {
                        out.push(FaultLocation { gate_index: i + 1, qubit: q, pauli, round: None });
                    }
                }
            }
            _ => {}
        }
    }
    out
}

pub(crate) fn insertions(faults: &[FaultLocation]) -> Vec<Insertion> {
    faults.iter().map(|f| Insertion { before: f.gate_index, qubit: f.qubit, pauli: f.pauli }).collect()
}

/// Acceptance probability and infidelity-given-acceptance for a fault set.
pub(crate) fn outcome(c: &Circuit, target: &Target, ins: &[Insertion]) -> Result<(f64, Option<f64>), FaultError> {
    let branches = enumerate_branches(c, &target.postselect, ins)?;
    let acc: f64 = branches.iter().map(|b| b.weight).sum();
    if acc <= ACCEPT_EPS {
        return Ok((0.0, None));
    }
    let mut fid = 0.0;
    for b in &branches {
        fid += b.weight * state_fidelity(&b.state, &target.ideal, &target.outputs)?;
    }
    Ok((acc, Some((1.0 - fid / acc).max(0.0))))
}

pub fn evaluate_faults(c: &Circuit, target: &Target, faults: &[FaultLocation]) -> Result<FaultEntry, FaultError> {
    let (acceptance, infidelity) = outcome(c, target, &insertions(faults))?;
    let class = match infidelity {
        None => FaultClass::Detected,
        Some(x) if x > HARMFUL_THRESHOLD => FaultClass::Harmful,
        Some(_) => FaultClass::Harmless,
    };
    Ok(FaultEntry { faults: faults.to_vec(), class, acceptance, infidelity })
}

/// Classifies every single fault at the chosen sites.
pub fn enumerate_single_faults(c: &Circuit, target: &Target, sites: SiteSet) -> Result<DetectionTable, FaultError> {
    let entries = fault_sites(c, sites)
        .par_iter()
        .map(|f| evaluate_faults(c, target, std::slice::from_ref(f)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DetectionTable::from_entries(entries))
}

/// Classifies every unordered pair of faults at the chosen sites.
pub fn enumerate_pair_faults(c: &Circuit, target: &Target, sites: SiteSet) -> Result<DetectionTable, FaultError> {
    let s = fault_sites(c, sites);
    let pairs: Vec<[FaultLocation; 2]> =
        (0..s.len()).flat_map(|i| (i + 1..s.len()).map(move |j| (i, j))).map(|(i, j)| [s[i], s[j]]).collect();
    let entries = pairs
        .par_iter()
        .map(|pair| evaluate_faults(c, target, pair))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DetectionTable::from_entries(entries))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderReport {
    /// `d(infidelity)/d(p_L)` at zero noise: each X, Y, Z at every noisy
    /// (round, qubit) weighted by 1/3 times acceptance times infidelity.
    pub coefficient: f64,
    /// Harmful faults times 1/3, ignoring how harmful they are.
    pub harmful_weight: f64,
    pub per_round: Vec<f64>,
    pub table: DetectionTable,
}

/// Exact first-order coefficient of the output infidelity in `p_L`.
pub fn first_order_oracle(sched: &RoundSchedule, target: &Target) -> Result<FirstOrderReport, FaultError> {
    let c = sched.circuit();
    let ends = sched.round_ends();
    let faults: Vec<FaultLocation> = sched
        .rounds
        .iter()
        .enumerate()
        .flat_map(|(r, round)| {
            let end = ends[r];
            round.noisy_qubits.iter().flat_map(move |&q| {
                Pauli::ALL.into_iter().map(move |pauli| FaultLocation { gate_index: end, qubit: q, pauli, round: Some(r) })
            })
        })
        .collect();
    let entries = faults
        .par_iter()
        .map(|f| evaluate_faults(&c, target, std::slice::from_ref(f)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut per_round = vec![0.0; sched.rounds.len()];
    for e in &entries {
        if let Some(x) = e.infidelity {
            per_round[e.faults[0].round.expect("scheduled")] += e.acceptance * x / 3.0;
        }
    }
    let table = DetectionTable::from_entries(entries);
    Ok(FirstOrderReport {
        coefficient: per_round.iter().sum(),
        harmful_weight: table.harmful as f64 / 3.0,
        per_round,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::fault::schedule::ccz_schedule;
    use crate::protocols;

    #[test]
    fn undetected_circuit_makes_every_z_pair_matter() {
        // |T> on each of two qubits, no checks: any Z fault is harmful.
        let c = Circuit::with_gates(2, vec![Gate::single(GateKind::PrepT, 0), Gate::single(GateKind::PrepT, 1)]).unwrap();
        let target = Target::infer(&c).unwrap();
        let singles = enumerate_single_faults(&c, &target, SiteSet::TSites).unwrap();
        assert_eq!((singles.len(), singles.harmful), (2, 2));
        let pairs = enumerate_pair_faults(&c, &target, SiteSet::TSites).unwrap();
        assert_eq!((pairs.len(), pairs.harmful), (1, 1));
    }

    #[test]
    fn idle_bell_half_gives_one_per_round() {
        // qubit 1 is a noiseless reference entangled with qubit 0; every Pauli on 0 is orthogonal.
        for k in 1..4 {
            let mut rounds = vec![(
                "prep".to_string(),
                vec![Gate::single(GateKind::PrepPlus, 0), Gate::single(GateKind::PrepZero, 1), Gate::cnot(0, 1)],
            )];
            rounds.extend((0..k).map(|i| (format!("idle {i}"), vec![])));
            let mut s = RoundSchedule::with_liveness(2, rounds, vec![]);
            s.rounds[0].noisy_qubits.clear();
            for r in &mut s.rounds[1..] {
                r.noisy_qubits = vec![0];
            }
            let target = Target::infer(&s.circuit()).unwrap();
            let fo = first_order_oracle(&s, &target).unwrap();
            assert!((fo.coefficient - k as f64).abs() < 1e-12);
            assert!((fo.harmful_weight - k as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn ccz_t_sites_are_all_detected() {
        let p = protocols::ccz();
        let (_, c) = p.compile(&Default::default()).unwrap();
        let target = Target::infer(&c).unwrap();
        let singles = enumerate_single_faults(&c, &target, SiteSet::TSites).unwrap();
        assert_eq!(singles.len(), 8);
        assert_eq!(singles.detected, 8);
        let pairs = enumerate_pair_faults(&c, &target, SiteSet::TSites).unwrap();
        assert_eq!(pairs.len(), 28);
        assert_eq!(pairs.harmful, 28);
    }

    #[test]
    fn output_fault_after_last_check_is_harmful() {
        let p = protocols::ccz();
        let (_, c) = p.compile(&Default::default()).unwrap();
        let target = Target::infer(&c).unwrap();
        let last = c.gates.len() - 1;
        let f = FaultLocation { gate_index: last, qubit: 0, pauli: Pauli::Z, round: None };
        assert_eq!(evaluate_faults(&c, &target, &[f]).unwrap().class, FaultClass::Harmful);
    }

    #[test]
    fn decode_rounds_add_their_own_contribution() {
        let target_for = |s: &RoundSchedule| Target::infer(&s.circuit()).unwrap();
        let s1 = ccz_schedule(1);
        let s2 = ccz_schedule(2);
        let f1 = first_order_oracle(&s1, &target_for(&s1)).unwrap();
        let f2 = first_order_oracle(&s2, &target_for(&s2)).unwrap();
        let idle = f2.per_round[5];
        assert!((f2.coefficient - f1.coefficient - idle).abs() < 1e-12);
    }
}
