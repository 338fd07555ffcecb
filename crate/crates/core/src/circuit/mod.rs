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

//! Circuit intermediate representation.
//!
//! Two input languages live here: [`RotationProgram`], an ordered list of
//! multi-qubit Z-phase rotations, and [`Circuit`], a flat gate list over a
//! fixed register. Both serialize to JSON.

mod metrics;
mod render;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::BitVec;

pub use metrics::{cnot_count, cnot_depth, gate_layers, t_count, t_depth};
pub use render::render_text;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid {field}: {reason}")]
    Field { field: String, reason: String },
    #[error("invalid circuit: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
}

fn field_err(field: impl Into<String>, reason: impl Into<String>) -> IrError {
    IrError::Field {
        field: field.into(),
        reason: reason.into(),
    }
}

/// Phase in units of pi/4 applied to odd-parity basis states, modulo 8.
///
/// `1` is T, `2` is S, `4` is Z, `6` is S-dagger, `7` is T-dagger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct PhaseExponent(u8);

impl PhaseExponent {
    pub const ZERO: PhaseExponent = PhaseExponent(0);
    pub const T: PhaseExponent = PhaseExponent(1);
    pub const S: PhaseExponent = PhaseExponent(2);
    pub const Z: PhaseExponent = PhaseExponent(4);
    pub const SDAG: PhaseExponent = PhaseExponent(6);
    pub const TDAG: PhaseExponent = PhaseExponent(7);

    pub fn new(k: u8) -> Result<Self, IrError> {
        if k < 8 {
            Ok(Self(k))
        } else {
            Err(IrError::Domain(format!("phase exponent {k} is not in 0..=7")))
        }
    }

    /// Reduces any integer modulo 8.
    pub fn wrapping(k: i64) -> Self {
        Self(k.rem_euclid(8) as u8)
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// True for the T-type exponents 1, 3, 5, 7.
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn neg(self) -> Self {
        Self::wrapping(-(self.0 as i64))
    }
}

impl std::ops::Add for PhaseExponent {
    type Output = PhaseExponent;
    fn add(self, rhs: Self) -> Self {
        Self((self.0 + rhs.0) % 8)
    }
}

impl<'de> Deserialize<'de> for PhaseExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let k = i64::deserialize(d)?;
        if (0..8).contains(&k) {
            Ok(Self(k as u8))
        } else {
            Err(serde::de::Error::custom(format!("k = {k} is not in 0..=7")))
        }
    }
}

/// `exp(i pi k/8 (I - Z(support)))`: phase `e^{i pi k / 4}` on odd parity of `support`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseRotation {
    pub support: BitVec,
    pub k: PhaseExponent,
}

impl PhaseRotation {
    pub fn new(support: BitVec, k: PhaseExponent) -> Result<Self, IrError> {
        if support.is_zero() && !k.is_zero() {
            return Err(IrError::Domain("a non-trivial rotation needs a non-empty support".into()));
        }
        Ok(Self { support, k })
    }

    pub fn parse(support: &str, k: u8) -> Result<Self, IrError> {
        let support = BitVec::parse(support).map_err(|e| field_err("support", e.to_string()))?;
        Self::new(support, PhaseExponent::new(k)?)
    }
}

impl Serialize for PhaseRotation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RotationJson { support: self.support.to_string(), k: self.k.value() as i64 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhaseRotation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RotationJson::deserialize(d)?;
        let k = u8::try_from(r.k).map_err(serde::de::Error::custom)?;
        PhaseRotation::parse(&r.support, k).map_err(serde::de::Error::custom)
    }
}

/// Ordered product of phase rotations; the first entry is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationProgram {
    pub n: usize,
    pub rotations: Vec<PhaseRotation>,
}

#[derive(Serialize, Deserialize)]
struct RotationJson {
    support: String,
    k: i64,
}

#[derive(Serialize, Deserialize)]
struct ProgramJson {
    n: usize,
    rotations: Vec<RotationJson>,
}

impl RotationProgram {
    pub fn new(n: usize, rotations: Vec<PhaseRotation>) -> Result<Self, IrError> {
        for (i, r) in rotations.iter().enumerate() {
            if r.support.len() != n {
                return Err(field_err(
                    format!("rotations[{i}].support"),
                    format!("length {} does not match n = {n}", r.support.len()),
                ));
            }
        }
        Ok(Self { n, rotations })
    }

    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }

    /// Number of rotations with an odd exponent, i.e. the T-count.
    pub fn t_count(&self) -> usize {
        self.rotations.iter().filter(|r| r.k.is_odd()).count()
    }

    pub fn reordered(&self, order: &[usize]) -> RotationProgram {
        RotationProgram {
            n: self.n,
            rotations: order.iter().map(|&i| self.rotations[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = ProgramJson {
            n: self.n,
            rotations: self
                .rotations
                .iter()
                .map(|r| RotationJson {
                    support: r.support.to_string(),
                    k: r.k.value() as i64,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("program serialization cannot fail")
    }
}

impl FromStr for RotationProgram {
    type Err = IrError;

    fn from_str(text: &str) -> Result<Self, IrError> {
        parse_rotation_program(text)
    }
}

/// Parses the rotation-program JSON form.
pub fn parse_rotation_program(text: &str) -> Result<RotationProgram, IrError> {
    let doc: ProgramJson = serde_json::from_str(text).map_err(|e| {
        IrError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let mut rotations = Vec::with_capacity(doc.rotations.len());
    for (i, r) in doc.rotations.iter().enumerate() {
        let support = BitVec::parse(&r.support)
            .map_err(|e| field_err(format!("rotations[{i}].support"), e.to_string()))?;
        if support.len() != doc.n {
            return Err(field_err(
                format!("rotations[{i}].support"),
                format!("length {} does not match n = {}", support.len(), doc.n),
            ));
        }
        if !(0..8).contains(&r.k) {
            return Err(field_err(format!("rotations[{i}].k"), format!("{} is not in 0..=7", r.k)));
        }
        let rot = PhaseRotation::new(support, PhaseExponent(r.k as u8))
            .map_err(|e| field_err(format!("rotations[{i}]"), e.to_string()))?;
        rotations.push(rot);
    }
    RotationProgram::new(doc.n, rotations)
}

pub fn serialize_rotation_program(p: &RotationProgram) -> String {
    p.to_json()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    PrepPlus,
    PrepZero,
    PrepT,
    PrepTdag,
    X,
    Z,
    S,
    Sdag,
    T,
    Tdag,
    CZ,
    CS,
    CCZ,
    CNOT,
    SWAP,
    MeasZ,
    MeasX,
    CondS,
}

impl GateKind {
    pub fn arity(self) -> usize {
        use GateKind::*;
        match self {
            CZ | CS | CNOT | SWAP => 2,
            CCZ => 3,
            _ => 1,
        }
    }

    pub fn is_prep(self) -> bool {
        matches!(self, GateKind::PrepPlus | GateKind::PrepZero | GateKind::PrepT | GateKind::PrepTdag)
    }

    pub fn is_measurement(self) -> bool {
        matches!(self, GateKind::MeasZ | GateKind::MeasX)
    }

    /// Gates that consume a T-type magic resource.
    pub fn is_t_type(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdag | GateKind::PrepT | GateKind::PrepTdag)
    }

    pub fn is_diagonal(self) -> bool {
        use GateKind::*;
        matches!(self, Z | S | Sdag | T | Tdag | CZ | CS | CCZ)
    }

    /// Exponent of a single-qubit diagonal gate.
    pub fn single_qubit_phase(self) -> Option<PhaseExponent> {
        use GateKind::*;
        match self {
            T => Some(PhaseExponent::T),
            S => Some(PhaseExponent::S),
            Z => Some(PhaseExponent::Z),
            Sdag => Some(PhaseExponent::SDAG),
            Tdag => Some(PhaseExponent::TDAG),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        use GateKind::*;
        match self {
            PrepPlus => "PrepPlus",
            PrepZero => "PrepZero",
            PrepT => "PrepT",
            PrepTdag => "PrepTdag",
            X => "X",
            Z => "Z",
            S => "S",
            Sdag => "Sdag",
            T => "T",
            Tdag => "Tdag",
            CZ => "CZ",
            CS => "CS",
            CCZ => "CCZ",
            CNOT => "CNOT",
            SWAP => "SWAP",
            MeasZ => "MeasZ",
            MeasX => "MeasX",
            CondS => "CondS",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<String>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self {
            kind,
            qubits,
            record: None,
        }
    }

    pub fn single(kind: GateKind, q: usize) -> Self {
        Self::new(kind, vec![q])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(GateKind::CNOT, vec![control, target])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::SWAP, vec![a, b])
    }

    pub fn measure(kind: GateKind, q: usize, record: impl Into<String>) -> Self {
        debug_assert!(kind.is_measurement());
        Self {
            kind,
            qubits: vec![q],
            record: Some(record.into()),
        }
    }

    pub fn cond_s(q: usize, record: impl Into<String>) -> Self {
        Self {
            kind: GateKind::CondS,
            qubits: vec![q],
            record: Some(record.into()),
        }
    }

    /// Gates implementing `T^k` on one qubit, T-type part first.
    pub fn phase_gates(q: usize, k: PhaseExponent) -> Vec<Gate> {
        use GateKind::*;
        let kinds: &[GateKind] = match k.value() {
            0 => &[],
            1 => &[T],
            2 => &[S],
            3 => &[T, S],
            4 => &[Z],
            5 => &[T, Z],
            6 => &[Sdag],
            _ => &[Tdag],
        };
        kinds.iter().map(|&kind| Gate::single(kind, q)).collect()
    }

    pub fn relabeled(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map[q]).collect(),
            record: self.record.clone(),
        }
    }
}

/// Flat gate list over `n` qubits; gates apply in list order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn with_gates(n: usize, gates: Vec<Gate>) -> Result<Self, IrError> {
        let c = Self { n, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn append(&mut self, other: &Circuit) {
        assert_eq!(self.n, other.n, "register size mismatch");
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Inverse of a unitary circuit: reversed order with daggered gates.
    pub fn inverse(&self) -> Result<Circuit, IrError> {
        use GateKind::*;
        let mut out = Circuit::new(self.n);
        for g in self.gates.iter().rev() {
            let kind = match g.kind {
                S => Sdag,
                Sdag => S,
                T => Tdag,
                Tdag => T,
                X | Z | CZ | CCZ | CNOT | SWAP => g.kind,
                CS => {
                    // CS^dag = CS^3
                    out.push(g.clone());
                    out.push(g.clone());
                    CS
                }
                other => {
                    return Err(IrError::Invalid(format!("{other} has no unitary inverse")));
                }
            };
            out.push(Gate::new(kind, g.qubits.clone()));
        }
        Ok(out)
    }

    /// Checks operand ranges, arities, record uniqueness and record references.
    pub fn validate(&self) -> Result<(), IrError> {
        let mut records: HashSet<&str> = HashSet::new();
        for (idx, g) in self.gates.iter().enumerate() {
            let at = |reason: String| IrError::Invalid(format!("gate {idx} ({}): {reason}", g.kind));
            if g.qubits.len() != g.kind.arity() {
                return Err(at(format!("expects {} operands, got {}", g.kind.arity(), g.qubits.len())));
            }
            for (i, &q) in g.qubits.iter().enumerate() {
                if q >= self.n {
                    return Err(at(format!("qubit {q} out of range for n = {}", self.n)));
                }
                if g.qubits[..i].contains(&q) {
                    return Err(at(format!("repeated operand {q}")));
                }
            }
            match g.kind {
                GateKind::MeasZ | GateKind::MeasX => {
                    let rec = g.record.as_deref().ok_or_else(|| at("measurement needs a record".into()))?;
                    if !records.insert(rec) {
                        return Err(at(format!("duplicate measurement record {rec:?}")));
                    }
                }
                GateKind::CondS => {
                    let rec = g.record.as_deref().ok_or_else(|| at("CondS needs a record".into()))?;
                    if !records.contains(rec) {
                        return Err(at(format!("record {rec:?} is not defined before use")));
                    }
                }
                _ => {
                    if g.record.is_some() {
                        return Err(at("only measurements and CondS carry records".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabels every operand `q` to `perm[q]`.
    pub fn apply_qubit_permutation(&self, perm: &[usize]) -> Result<Circuit, IrError> {
        if perm.len() != self.n {
            return Err(IrError::Domain(format!(
                "permutation has {} entries for {} qubits",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(IrError::Domain(format!("{perm:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(Circuit {
            n: self.n,
            gates: self.gates.iter().map(|g| g.relabeled(perm)).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Circuit, IrError> {
        let c: Circuit = serde_json::from_str(text).map_err(|e| {
            IrError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        c.validate()?;
        Ok(c)
    }

    /// Qubits that are never measured.
    pub fn unmeasured_qubits(&self) -> Vec<usize> {
        let mut measured = vec![false; self.n];
        for g in &self.gates {
            if g.kind.is_measurement() {
                measured[g.qubits[0]] = true;
            }
        }
        (0..self.n).filter(|&q| !measured[q]).collect()
    }

    /// Whether the circuit is a unitary built only from gates with an inverse.
    pub fn is_unitary(&self) -> bool {
        self.gates
            .iter()
            .all(|g| !g.kind.is_prep() && !g.kind.is_measurement() && g.kind != GateKind::CondS)
    }
}

pub fn apply_qubit_permutation(c: &Circuit, perm: &[usize]) -> Result<Circuit, IrError> {
    c.apply_qubit_permutation(perm)
}
