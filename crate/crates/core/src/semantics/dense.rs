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

//! Dense state-vector simulation for small registers.
//!
//! Basis index bit `q` is the value of qubit `q`. Circuits may contain
//! preparations, measurements (sampled, postselected, or enumerated
//! branch by branch) and classically controlled S gates.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SemanticsError;
use crate::circuit::{Circuit, Gate, GateKind};

pub const MAX_QUBITS: usize = 12;

const PROB_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn phase_factor(k: u8) -> Complex64 {
    Complex64::from_polar(1.0, FRAC_PI_4 * (k % 8) as f64)
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self, SemanticsError> {
        if n > MAX_QUBITS {
            return Err(SemanticsError::TooLarge(n));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, SemanticsError> {
        let mut s = Self::zero(n)?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SemanticsError> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n {
            return Err(SemanticsError::Dimension(format!("{} amplitudes is not a power of two", amps.len())));
        }
        if n > MAX_QUBITS {
            return Err(SemanticsError::TooLarge(n));
        }
        Ok(Self { n, amps })
    }

    /// `|+>^n` followed by the given unitary circuit.
    pub fn prepared_plus(c: &Circuit) -> Result<Self, SemanticsError> {
        let mut s = Self::zero(c.n)?;
        for q in 0..c.n {
            s.apply_h(q);
        }
        for g in &c.gates {
            s.apply_unitary(g)?;
        }
        Ok(s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
    }

    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply_x(&mut self, q: usize) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        self.apply_phase(q, 4);
    }

    pub fn apply_y(&mut self, q: usize) {
        // Y = i X Z
        self.apply_z(q);
        self.apply_x(q);
        for a in &mut self.amps {
            *a *= Complex64::i();
        }
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) {
        match p {
            Pauli::X => self.apply_x(q),
            Pauli::Y => self.apply_y(q),
            Pauli::Z => self.apply_z(q),
        }
    }

    pub fn apply_h(&mut self, q: usize) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    /// Multiplies amplitudes with qubit `q` set by `e^{i pi k/4}`.
    pub fn apply_phase(&mut self, q: usize, k: u8) {
        let f = phase_factor(k);
        let bit = 1 << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= f;
            }
        }
    }

    /// Multiplies amplitudes where every qubit in `mask` is set by `e^{i pi k/4}`.
    fn apply_controlled_phase(&mut self, mask: usize, k: u8) {
        let f = phase_factor(k);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= f;
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1 << control, 1 << target);
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) {
        let (ab, bb) = (1 << a, 1 << b);
        for i in 0..self.amps.len() {
            if i & ab != 0 && i & bb == 0 {
                self.amps.swap(i, (i & !ab) | bb);
            }
        }
    }

    /// Applies a unitary gate; rejects preparations, measurements and CondS.
    pub fn apply_unitary(&mut self, g: &Gate) -> Result<(), SemanticsError> {
        use GateKind::*;
        let q = &g.qubits;
        match g.kind {
            X => self.apply_x(q[0]),
            Z => self.apply_phase(q[0], 4),
            S => self.apply_phase(q[0], 2),
            Sdag => self.apply_phase(q[0], 6),
            T => self.apply_phase(q[0], 1),
            Tdag => self.apply_phase(q[0], 7),
            CZ => self.apply_controlled_phase((1 << q[0]) | (1 << q[1]), 4),
            CS => self.apply_controlled_phase((1 << q[0]) | (1 << q[1]), 2),
            CCZ => self.apply_controlled_phase((1 << q[0]) | (1 << q[1]) | (1 << q[2]), 4),
            CNOT => self.apply_cnot(q[0], q[1]),
            SWAP => self.apply_swap(q[0], q[1]),
            other => return Err(SemanticsError::NotUnitary(other.to_string())),
        }
        Ok(())
    }

    /// The pure state of qubits `on` when the register is a product of it
    /// with a state of the remaining qubits; `None` otherwise.
    pub fn restricted(&self, on: &[usize]) -> Option<DenseState> {
        let rest: Vec<usize> = (0..self.n).filter(|q| !on.contains(q)).collect();
        let spread = |bits: &[usize], v: usize| {
            bits.iter().enumerate().filter(|(b, _)| v >> b & 1 == 1).fold(0usize, |acc, (_, &q)| acc | 1 << q)
        };
        let column = |j: usize| -> Vec<Complex64> {
            let base = spread(&rest, j);
            (0..1usize << on.len()).map(|o| self.amps[base | spread(on, o)]).collect()
        };
        let best = (0..1usize << rest.len())
            .max_by(|&a, &b| {
                let na: f64 = column(a).iter().map(|x| x.norm_sqr()).sum();
                let nb: f64 = column(b).iter().map(|x| x.norm_sqr()).sum();
                na.total_cmp(&nb)
            })?;
        let mut s = DenseState::from_amplitudes(column(best)).ok()?;
        s.normalize();
        if (state_fidelity(self, &s, on).ok()? - 1.0).abs() > 1e-9 {
            return None;
        }
        Some(s)
    }

    /// Probability that qubit `q` reads 1 in the Z basis.
    pub fn prob_one(&self, q: usize) -> f64 {
        let bit = 1 << q;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            / self.norm_sqr()
    }

    /// Projects qubit `q` onto Z-basis `outcome` and renormalizes; returns the outcome probability.
    pub fn project_z(&mut self, q: usize, outcome: u8) -> f64 {
        let bit = 1 << q;
        let want = if outcome == 1 { bit } else { 0 };
        let total = self.norm_sqr();
        let mut kept = 0.0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit == want {
                kept += a.norm_sqr();
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        let p = if total > 0.0 { kept / total } else { 0.0 };
        if p > 0.0 {
            self.normalize();
        }
        p
    }
}

/// Fidelity `<ideal| rho_on |ideal>` of the reduced state on qubits `on`.
///
/// `ideal` lives on `on.len()` qubits, its qubit `i` matching `on[i]`. The
/// complement is traced out, so no separability check is needed.
pub fn state_fidelity(s: &DenseState, ideal: &DenseState, on: &[usize]) -> Result<f64, SemanticsError> {
    if ideal.n != on.len() {
        return Err(SemanticsError::Dimension(format!(
            "ideal state has {} qubits, subset has {}",
            ideal.n,
            on.len()
        )));
    }
    if let Some(&q) = on.iter().find(|&&q| q >= s.n) {
        return Err(SemanticsError::Dimension(format!("qubit {q} outside a {}-qubit state", s.n)));
    }
    let rest: Vec<usize> = (0..s.n).filter(|q| !on.contains(q)).collect();
    let norm = s.norm_sqr();
    let mut fid = 0.0;
    for j in 0..(1usize << rest.len()) {
        let base = rest
            .iter()
            .enumerate()
            .filter(|(b, _)| j >> b & 1 == 1)
            .fold(0usize, |acc, (_, &q)| acc | 1 << q);
        let mut overlap = Complex64::new(0.0, 0.0);
        for (o, amp) in ideal.amps.iter().enumerate() {
            let idx = on
                .iter()
                .enumerate()
                .filter(|(b, _)| o >> b & 1 == 1)
                .fold(base, |acc, (_, &q)| acc | 1 << q);
            overlap += amp.conj() * s.amps[idx];
        }
        fid += overlap.norm_sqr();
    }
    Ok((fid / norm / ideal.norm_sqr()).clamp(0.0, 1.0))
}

/// Dense unitary of a unitary circuit, returned column by column.
pub fn unitary_columns(c: &Circuit) -> Result<Vec<DenseState>, SemanticsError> {
    if c.n > MAX_QUBITS {
        return Err(SemanticsError::TooLarge(c.n));
    }
    (0..1usize << c.n)
        .map(|idx| {
            let mut s = DenseState::basis(c.n, idx)?;
            for g in &c.gates {
                s.apply_unitary(g)?;
            }
            Ok(s)
        })
        .collect()
}

/// Largest entrywise deviation between two unitaries after aligning global phase.
pub fn unitary_distance(a: &[DenseState], b: &[DenseState]) -> Result<f64, SemanticsError> {
    if a.len() != b.len() {
        return Err(SemanticsError::Dimension(format!("{} vs {} columns", a.len(), b.len())));
    }
    let mut best = (0.0, Complex64::new(1.0, 0.0));
    for (ca, cb) in a.iter().zip(b) {
        for (x, y) in ca.amps.iter().zip(&cb.amps) {
            if x.norm() > best.0 && y.norm() > 1e-12 {
                best = (x.norm(), y / x);
            }
        }
    }
    let phase = best.1 / best.1.norm();
    let mut dev: f64 = 0.0;
    for (ca, cb) in a.iter().zip(b) {
        for (x, y) in ca.amps.iter().zip(&cb.amps) {
            dev = dev.max((x * phase - y).norm());
        }
    }
    Ok(dev)
}

/// A Pauli error applied just before gate `before` (or at the very end when `before == len`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Insertion {
    pub before: usize,
    pub qubit: usize,
    pub pauli: Pauli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wire {
    Fresh,
    Live,
    Measured { x_basis: bool, outcome: u8 },
}

#[derive(Debug, Clone)]
struct Frame {
    state: DenseState,
    wires: Vec<Wire>,
    records: BTreeMap<String, u8>,
    weight: f64,
}

impl Frame {
    fn new(n: usize) -> Result<Self, SemanticsError> {
        Ok(Self {
            state: DenseState::zero(n)?,
            wires: vec![Wire::Fresh; n],
            records: BTreeMap::new(),
            weight: 1.0,
        })
    }

    /// Applies a non-measurement gate.
    fn apply(&mut self, g: &Gate, idx: usize) -> Result<(), SemanticsError> {
        use GateKind::*;
        let q = g.qubits[0];
        match g.kind {
            PrepZero | PrepPlus | PrepT | PrepTdag => {
                match self.wires[q] {
                    Wire::Fresh => {}
                    Wire::Measured { x_basis, outcome } => {
                        if x_basis {
                            self.state.apply_h(q);
                        }
                        if outcome == 1 {
                            self.state.apply_x(q);
                        }
                    }
                    Wire::Live => {
                        return Err(SemanticsError::Simulation(format!(
                            "gate {idx}: preparation on live qubit {q}"
                        )))
                    }
                }
                if g.kind != PrepZero {
                    self.state.apply_h(q);
                }
                match g.kind {
                    PrepT => self.state.apply_phase(q, 1),
                    PrepTdag => self.state.apply_phase(q, 7),
                    _ => {}
                }
                self.wires[q] = Wire::Live;
            }
            CondS => {
                let rec = g.record.as_deref().unwrap_or_default();
                let bit = *self.records.get(rec).ok_or_else(|| {
                    SemanticsError::Simulation(format!("gate {idx}: record {rec:?} not yet measured"))
                })?;
                if bit == 1 {
                    self.state.apply_phase(q, 2);
                }
                self.touch(g);
            }
            _ => {
                self.state.apply_unitary(g)?;
                self.touch(g);
            }
        }
        Ok(())
    }

    fn touch(&mut self, g: &Gate) {
        for &q in &g.qubits {
            if self.wires[q] == Wire::Fresh {
                self.wires[q] = Wire::Live;
            }
        }
    }

    /// Probability of each outcome of a measurement gate.
    fn outcome_probs(&self, g: &Gate) -> [f64; 2] {
        let q = g.qubits[0];
        let p1 = if g.kind == GateKind::MeasX {
            let mut s = self.state.clone();
            s.apply_h(q);
            s.prob_one(q)
        } else {
            self.state.prob_one(q)
        };
        [1.0 - p1, p1]
    }

    fn collapse(&mut self, g: &Gate, outcome: u8) -> f64 {
        let q = g.qubits[0];
        let x_basis = g.kind == GateKind::MeasX;
        if x_basis {
            self.state.apply_h(q);
        }
        let p = self.state.project_z(q, outcome);
        if x_basis {
            self.state.apply_h(q);
        }
        self.wires[q] = Wire::Measured { x_basis, outcome };
        self.records.insert(g.record.clone().unwrap_or_default(), outcome);
        p
    }
}

fn apply_insertions(frame: &mut Frame, ins: &[Insertion], cursor: &mut usize, before: usize) {
    while *cursor < ins.len() && ins[*cursor].before == before {
        let i = ins[*cursor];
        frame.state.apply_pauli(i.qubit, i.pauli);
        *cursor += 1;
    }
}

fn check_postselect(c: &Circuit, postselect: &BTreeMap<String, u8>) -> Result<(), SemanticsError> {
    for (rec, &v) in postselect {
        let defined = c
            .gates
            .iter()
            .any(|g| g.kind.is_measurement() && g.record.as_deref() == Some(rec.as_str()));
        if !defined {
            return Err(SemanticsError::UnknownRecord(rec.clone()));
        }
        if v > 1 {
            return Err(SemanticsError::Simulation(format!("postselected value {v} for {rec:?} is not a bit")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub state: DenseState,
    /// Product of the postselection probabilities along the sampled path.
    pub acceptance: f64,
    pub records: BTreeMap<String, u8>,
    /// Set when a postselection had probability zero; `state` is then meaningless.
    pub undefined: bool,
}

/// Runs one trajectory: unpostselected measurements are sampled from `seed`.
pub fn simulate(
    c: &Circuit,
    postselect: &BTreeMap<String, u8>,
    seed: u64,
) -> Result<SimOutcome, SemanticsError> {
    simulate_with(c, postselect, &[], seed)
}

pub fn simulate_with(
    c: &Circuit,
    postselect: &BTreeMap<String, u8>,
    insertions: &[Insertion],
    seed: u64,
) -> Result<SimOutcome, SemanticsError> {
    check_postselect(c, postselect)?;
    let mut ins = insertions.to_vec();
    ins.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut frame = Frame::new(c.n)?;
    let mut cursor = 0;
    for (idx, g) in c.gates.iter().enumerate() {
        apply_insertions(&mut frame, &ins, &mut cursor, idx);
        if g.kind.is_measurement() {
            let rec = g.record.as_deref().unwrap_or_default();
            let probs = frame.outcome_probs(g);
            let outcome = match postselect.get(rec) {
                Some(&want) => want,
                None => (rng.random::<f64>() < probs[1]) as u8,
            };
            let p = probs[outcome as usize];
            if postselect.contains_key(rec) {
                frame.weight *= p;
                if p <= PROB_EPS {
                    return Ok(SimOutcome {
                        state: frame.state,
                        acceptance: 0.0,
                        records: frame.records,
                        undefined: true,
                    });
                }
            }
            frame.collapse(g, outcome);
        } else {
            frame.apply(g, idx)?;
        }
    }
    apply_insertions(&mut frame, &ins, &mut cursor, c.gates.len());
    Ok(SimOutcome {
        state: frame.state,
        acceptance: frame.weight,
        records: frame.records,
        undefined: false,
    })
}

/// One measurement branch: `weight` is its probability including postselection.
#[derive(Debug, Clone)]
pub struct Branch {
    pub weight: f64,
    pub state: DenseState,
    pub records: BTreeMap<String, u8>,
}

/// Exhaustively enumerates every unpostselected measurement outcome.
///
/// Branch weights sum to the overall acceptance probability.
pub fn enumerate_branches(
    c: &Circuit,
    postselect: &BTreeMap<String, u8>,
    insertions: &[Insertion],
) -> Result<Vec<Branch>, SemanticsError> {
    check_postselect(c, postselect)?;
    let mut ins = insertions.to_vec();
    ins.sort();
    let mut out = Vec::new();
    let mut stack = vec![(Frame::new(c.n)?, 0usize, 0usize)];
    while let Some((mut frame, mut idx, mut cursor)) = stack.pop() {
        let mut alive = true;
        while idx < c.gates.len() {
            apply_insertions(&mut frame, &ins, &mut cursor, idx);
            let g = &c.gates[idx];
            idx += 1;
            if !g.kind.is_measurement() {
                frame.apply(g, idx - 1)?;
                continue;
            }
            let rec = g.record.as_deref().unwrap_or_default();
            let probs = frame.outcome_probs(g);
            if let Some(&want) = postselect.get(rec) {
                let p = probs[want as usize];
                if p <= PROB_EPS {
                    alive = false;
                    break;
                }
                frame.weight *= p;
                frame.collapse(g, want);
            } else {
                if probs[1] > PROB_EPS {
                    let mut other = frame.clone();
                    other.weight *= probs[1];
                    other.collapse(g, 1);
                    if probs[0] <= PROB_EPS {
                        frame = other;
                        continue;
                    }
                    stack.push((other, idx, cursor));
                }
                frame.weight *= probs[0];
                frame.collapse(g, 0);
            }
        }
        if alive {
            apply_insertions(&mut frame, &ins, &mut cursor, c.gates.len());
            out.push(Branch {
                weight: frame.weight,
                state: frame.state,
                records: frame.records,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    fn ccz_state() -> DenseState {
        let amps = (0..8)
            .map(|i| Complex64::new(if i == 7 { -1.0 } else { 1.0 } / 8f64.sqrt(), 0.0))
            .collect();
        DenseState::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn ccz_on_plus_states() {
        let mut c = Circuit::new(3);
        for q in 0..3 {
            c.push(Gate::single(GateKind::PrepPlus, q));
        }
        c.push(Gate::new(GateKind::CCZ, vec![0, 1, 2]));
        let out = simulate(&c, &BTreeMap::new(), 0).unwrap();
        let ideal = ccz_state();
        for (a, b) in out.state.amplitudes().iter().zip(ideal.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert_eq!(out.acceptance, 1.0);
    }

    #[test]
    fn fidelity_examples() {
        let ideal = ccz_state();
        assert!((state_fidelity(&ideal, &ideal, &[0, 1, 2]).unwrap() - 1.0).abs() < 1e-12);
        // Z commutes with CCZ, so <CCZ|Z_0|CCZ> = <+|Z|+> = 0.
        let mut z = ideal.clone();
        z.apply_z(0);
        assert!(state_fidelity(&z, &ideal, &[0, 1, 2]).unwrap().abs() < 1e-12);
        // X_0 picks up CZ_12: |<+|X|+> <++|CZ|++>|^2 = 1/4.
        let mut x = ideal.clone();
        x.apply_x(0);
        assert!((state_fidelity(&x, &ideal, &[0, 1, 2]).unwrap() - 0.25).abs() < 1e-12);
        let zero = DenseState::zero(1).unwrap();
        let one = DenseState::basis(1, 1).unwrap();
        assert!(state_fidelity(&zero, &one, &[0]).unwrap().abs() < 1e-12);
        assert!(state_fidelity(&zero, &ideal, &[0]).is_err());
    }

    #[test]
    fn fidelity_traces_out_ancillas() {
        let mut s = DenseState::zero(2).unwrap();
        s.apply_h(0);
        s.apply_cnot(0, 1);
        let plus = DenseState::from_amplitudes(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]).unwrap();
        assert!((state_fidelity(&s, &plus, &[0]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn measurement_probabilities_sum_to_one() {
        let mut c = Circuit::new(3);
        c.push(Gate::single(GateKind::PrepT, 0));
        c.push(Gate::single(GateKind::PrepPlus, 1));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::single(GateKind::T, 1));
        c.push(Gate::cnot(1, 2));
        c.push(Gate::measure(GateKind::MeasX, 1, "a"));
        c.push(Gate::measure(GateKind::MeasZ, 2, "b"));
        let branches = enumerate_branches(&c, &BTreeMap::new(), &[]).unwrap();
        let total: f64 = branches.iter().map(|b| b.weight).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert_eq!(branches.len(), 4);
    }

    #[test]
    fn postselection_on_impossible_outcome() {
        let mut c = Circuit::new(1);
        c.push(Gate::single(GateKind::PrepZero, 0));
        c.push(Gate::measure(GateKind::MeasZ, 0, "m"));
        let ps = BTreeMap::from([("m".to_string(), 1u8)]);
        let out = simulate(&c, &ps, 3).unwrap();
        assert!(out.undefined);
        assert_eq!(out.acceptance, 0.0);
        assert!(enumerate_branches(&c, &ps, &[]).unwrap().is_empty());
        let missing = BTreeMap::from([("nope".to_string(), 0u8)]);
        assert!(matches!(simulate(&c, &missing, 0), Err(SemanticsError::UnknownRecord(_))));
    }

    #[test]
    fn t_gadget_injects_t() {
        // CNOT(data -> aux), measure aux, S correction on outcome 1.
        let mut c = Circuit::new(2);
        c.push(Gate::single(GateKind::PrepPlus, 0));
        c.push(Gate::single(GateKind::PrepT, 1));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::measure(GateKind::MeasZ, 1, "m"));
        c.push(Gate::cond_s(0, "m"));
        let ideal = {
            let mut s = DenseState::zero(1).unwrap();
            s.apply_h(0);
            s.apply_phase(0, 1);
            s
        };
        for b in enumerate_branches(&c, &BTreeMap::new(), &[]).unwrap() {
            assert!((b.weight - 0.5).abs() < 1e-12);
            assert!((state_fidelity(&b.state, &ideal, &[0]).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reprepare_after_measurement() {
        let mut c = Circuit::new(1);
        c.push(Gate::single(GateKind::PrepPlus, 0));
        c.push(Gate::measure(GateKind::MeasZ, 0, "m"));
        c.push(Gate::single(GateKind::PrepZero, 0));
        for seed in 0..8 {
            let out = simulate(&c, &BTreeMap::new(), seed).unwrap();
            assert!((out.state.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
        }
        let mut live = Circuit::new(1);
        live.push(Gate::single(GateKind::PrepPlus, 0));
        live.push(Gate::single(GateKind::PrepPlus, 0));
        assert!(simulate(&live, &BTreeMap::new(), 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let mut c = Circuit::new(2);
        c.push(Gate::single(GateKind::PrepPlus, 0));
        c.push(Gate::single(GateKind::PrepPlus, 1));
        c.push(Gate::measure(GateKind::MeasZ, 0, "a"));
        c.push(Gate::measure(GateKind::MeasZ, 1, "b"));
        let a = simulate(&c, &BTreeMap::new(), 42).unwrap();
        let b = simulate(&c, &BTreeMap::new(), 42).unwrap();
        assert_eq!(a.records, b.records);
    }
}
