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

//! Phase-polynomial canonical form for {X, CNOT, SWAP, diagonal} circuits.
//!
//! A circuit in this fragment acts on a basis state as
//! `|e> -> exp(i pi g/8) exp(i pi/4 sum_u c_u (u.e mod 2)) |A e + b>`.
//! The parity coefficients `c` are not unique mod 8 (`4(a + b - (a^b)) = 8ab`),
//! so equality expands the phase into AND-monomials, where
//! `a^b^... = sum over non-empty T of (-2)^{|T|-1} prod_T` and every
//! monomial of degree four or more vanishes. That expansion is unique.
//! Everything is exact integer arithmetic.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SemanticsError;
use crate::circuit::{Circuit, GateKind, PhaseExponent, RotationProgram};
use crate::gf2::{BitVec, Gf2Matrix};

/// Diagonal gates as parity terms over their operands (operand bitmask, k).
///
/// CZ   = 4ab  = 2a + 2b - 2(a^b)
/// CS   = 2ab  = a + b - (a^b)
/// CCZ  = 4abc = a + b + c - (a^b) - (a^c) - (b^c) + (a^b^c)
pub(crate) fn diagonal_terms(kind: GateKind) -> &'static [(u8, u8)] {
    use GateKind::*;
    match kind {
        T => &[(0b1, 1)],
        S => &[(0b1, 2)],
        Z => &[(0b1, 4)],
        Sdag => &[(0b1, 6)],
        Tdag => &[(0b1, 7)],
        CZ => &[(0b01, 2), (0b10, 2), (0b11, 6)],
        CS => &[(0b01, 1), (0b10, 1), (0b11, 7)],
        CCZ => &[
            (0b001, 1),
            (0b010, 1),
            (0b100, 1),
            (0b011, 7),
            (0b101, 7),
            (0b110, 7),
            (0b111, 1),
        ],
        _ => &[],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhasePolynomial {
    pub n: usize,
    /// Output bit `q` is `row_q(A) . e + b_q`.
    #[serde(serialize_with = "ser_matrix")]
    pub linear: Gf2Matrix,
    #[serde(serialize_with = "ser_bits")]
    pub affine: BitVec,
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: BTreeMap<BitVec, PhaseExponent>,
    /// Global phase in units of pi/8, modulo 16.
    pub global: u8,
}

fn ser_matrix<S: serde::Serializer>(m: &Gf2Matrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect())
        .collect();
    rows.serialize(s)
}

fn ser_bits<S: serde::Serializer>(b: &BitVec, s: S) -> Result<S::Ok, S::Error> {
    b.to_string().serialize(s)
}

fn ser_coeffs<S: serde::Serializer>(c: &BTreeMap<BitVec, PhaseExponent>, s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<String, u8> = c.iter().map(|(k, v)| (k.to_string(), v.value())).collect();
    m.serialize(s)
}

/// Incremental builder: tracks each wire as an affine form of the inputs.
#[derive(Debug, Clone)]
struct Tracker {
    rows: Vec<BitVec>,
    affine: BitVec,
    coeffs: BTreeMap<BitVec, i64>,
    global: i64,
}

impl Tracker {
    fn new(n: usize) -> Self {
        Self {
            rows: (0..n).map(|q| BitVec::unit(n, q)).collect(),
            affine: BitVec::zeros(n),
            coeffs: BTreeMap::new(),
            global: 0,
        }
    }

    /// Applies phase `k` (pi/4 units) to the odd parity of the current wires in `wires`.
    fn phase(&mut self, wires: impl IntoIterator<Item = usize>, k: i64) {
        let n = self.affine.len();
        let mut u = BitVec::zeros(n);
        let mut flipped = false;
        for q in wires {
            u.xor_assign(&self.rows[q]);
            flipped ^= self.affine.get(q);
        }
        if flipped {
            // k (1 - u.e) = k - k (u.e)
            self.global += 2 * k;
            *self.coeffs.entry(u).or_insert(0) -= k;
        } else {
            *self.coeffs.entry(u).or_insert(0) += k;
        }
    }

    fn apply(&mut self, kind: GateKind, qubits: &[usize]) -> Result<(), SemanticsError> {
        use GateKind::*;
        match kind {
            X => self.affine.flip(qubits[0]),
            CNOT => {
                let (c, t) = (qubits[0], qubits[1]);
                let src = self.rows[c].clone();
                self.rows[t].xor_assign(&src);
                if self.affine.get(c) {
                    self.affine.flip(t);
                }
            }
            SWAP => {
                let (a, b) = (qubits[0], qubits[1]);
                self.rows.swap(a, b);
                let (va, vb) = (self.affine.get(a), self.affine.get(b));
                self.affine.set(a, vb);
                self.affine.set(b, va);
            }
            k if k.is_diagonal() => {
                for &(mask, e) in diagonal_terms(k) {
                    let wires = (0..qubits.len()).filter(|i| mask >> i & 1 == 1).map(|i| qubits[i]);
                    self.phase(wires, e as i64);
                }
            }
            other => return Err(SemanticsError::NotDiagonalizable(other.to_string())),
        }
        Ok(())
    }

    fn finish(self) -> PhasePolynomial {
        let n = self.affine.len();
        let mut linear = Gf2Matrix::zeros(n, n);
        for (q, row) in self.rows.iter().enumerate() {
            for i in row.ones() {
                linear.set(q, i, true);
            }
        }
        let coeffs = self
            .coeffs
            .into_iter()
            .filter_map(|(u, k)| {
                let k = PhaseExponent::wrapping(k);
                (!k.is_zero() && !u.is_zero()).then_some((u, k))
            })
            .collect();
        PhasePolynomial {
            n,
            linear,
            affine: self.affine,
            coeffs,
            global: self.global.rem_euclid(16) as u8,
        }
    }
}

impl PhasePolynomial {
    pub fn identity(n: usize) -> Self {
        Tracker::new(n).finish()
    }

    /// Canonical form of `first` followed by `second`.
    pub fn then(&self, second: &PhasePolynomial) -> Result<PhasePolynomial, SemanticsError> {
        if self.n != second.n {
            return Err(SemanticsError::Dimension(format!("{} vs {} qubits", self.n, second.n)));
        }
        let n = self.n;
        let mut t = Tracker {
            rows: (0..n).map(|q| self.linear.row(q)).collect(),
            affine: self.affine.clone(),
            coeffs: self.coeffs.iter().map(|(u, k)| (u.clone(), k.value() as i64)).collect(),
            global: self.global as i64,
        };
        for (u, k) in &second.coeffs {
            t.phase(u.ones().collect::<Vec<_>>(), k.value() as i64);
        }
        t.global += second.global as i64;
        // Output: A2 (A1 e + b1) + b2.
        let rows: Vec<BitVec> = (0..n)
            .map(|q| {
                let mut r = BitVec::zeros(n);
                for i in second.linear.row(q).ones() {
                    r.xor_assign(&t.rows[i]);
                }
                r
            })
            .collect();
        let mut affine = second.affine.clone();
        for q in 0..n {
            if second.linear.row(q).dot(&t.affine) {
                affine.flip(q);
            }
        }
        t.rows = rows;
        t.affine = affine;
        Ok(t.finish())
    }

    /// The phase function `sum_u c_u (u.e mod 2)` (pi/4 units) as
    /// `sum_T a_T prod_{i in T} e_i` over monomials of degree at most 3.
    /// Unlike `coeffs`, this is unique for a given operator.
    pub fn monomials(&self) -> BTreeMap<Vec<usize>, u8> {
        let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (u, k) in &self.coeffs {
            let k = k.value() as i64;
            let ones: Vec<usize> = u.ones().collect();
            for (a, &i) in ones.iter().enumerate() {
                *acc.entry(vec![i]).or_default() += k;
                for (b, &j) in ones.iter().enumerate().skip(a + 1) {
                    *acc.entry(vec![i, j]).or_default() -= 2 * k;
                    for &l in &ones[b + 1..] {
                        *acc.entry(vec![i, j, l]).or_default() += 4 * k;
                    }
                }
            }
        }
        acc.into_iter()
            .map(|(m, a)| (m, a.rem_euclid(8) as u8))
            .filter(|&(_, a)| a != 0)
            .collect()
    }

    /// Evaluates the action on basis state `e`: returns (phase in pi/8 units mod 16, output bits).
    pub fn evaluate(&self, e: &BitVec) -> (u8, BitVec) {
        let mut phase = self.global as i64;
        for (u, k) in &self.coeffs {
            if u.dot(e) {
                phase += 2 * k.value() as i64;
            }
        }
        let mut out = self.linear.mul_vec(e).expect("dimension checked at construction");
        out.xor_assign(&self.affine);
        (phase.rem_euclid(16) as u8, out)
    }
}

/// Canonical form of a circuit in the {X, CNOT, SWAP, diagonal} fragment.
pub fn phase_polynomial_of(c: &Circuit) -> Result<PhasePolynomial, SemanticsError> {
    let mut t = Tracker::new(c.n);
    for g in &c.gates {
        t.apply(g.kind, &g.qubits)?;
    }
    Ok(t.finish())
}

/// Canonical form of a rotation program (a purely diagonal operator).
pub fn phase_polynomial_of_program(p: &RotationProgram) -> PhasePolynomial {
    let mut t = Tracker::new(p.n);
    for r in &p.rotations {
        t.phase(r.support.ones().collect::<Vec<_>>(), r.k.value() as i64);
    }
    t.finish()
}

/// Operator equality, optionally ignoring global phase.
pub fn poly_equal(a: &PhasePolynomial, b: &PhasePolynomial, up_to_global: bool) -> bool {
    a.n == b.n
        && a.linear == b.linear
        && a.affine == b.affine
        && a.monomials() == b.monomials()
        && (up_to_global || a.global == b.global)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn single_cnot_is_linear() {
        let c = Circuit::with_gates(2, vec![Gate::cnot(0, 1)]).unwrap();
        let p = phase_polynomial_of(&c).unwrap();
        assert_eq!(p.linear, Gf2Matrix::from_rows(&[[1, 0], [1, 1]]).unwrap());
        assert!(p.affine.is_zero());
        assert!(p.coeffs.is_empty());
        assert_eq!(p.global, 0);
    }

    #[test]
    fn t_gate_has_unit_coefficient() {
        let c = Circuit::with_gates(1, vec![Gate::single(GateKind::T, 0)]).unwrap();
        let p = phase_polynomial_of(&c).unwrap();
        assert_eq!(p.coeffs.len(), 1);
        assert_eq!(p.coeffs[&BitVec::unit(1, 0)], PhaseExponent::T);
        assert_eq!(p.global, 0);
    }

    #[test]
    fn t_squared_equals_s() {
        let tt = Circuit::with_gates(1, vec![Gate::single(GateKind::T, 0), Gate::single(GateKind::T, 0)]).unwrap();
        let s = Circuit::with_gates(1, vec![Gate::single(GateKind::S, 0)]).unwrap();
        let a = phase_polynomial_of(&tt).unwrap();
        let b = phase_polynomial_of(&s).unwrap();
        assert!(poly_equal(&a, &b, false));
        assert!(poly_equal(&a, &a, false));
    }

    #[test]
    fn x_conjugation_of_t_adds_global_phase() {
        // X T X = e^{i pi/4} T^dag
        let xtx = Circuit::with_gates(
            1,
            vec![Gate::single(GateKind::X, 0), Gate::single(GateKind::T, 0), Gate::single(GateKind::X, 0)],
        )
        .unwrap();
        let tdag = Circuit::with_gates(1, vec![Gate::single(GateKind::Tdag, 0)]).unwrap();
        let a = phase_polynomial_of(&xtx).unwrap();
        let b = phase_polynomial_of(&tdag).unwrap();
        assert!(poly_equal(&a, &b, true));
        assert!(!poly_equal(&a, &b, false));
        assert_eq!(a.global, 2);
    }

    #[test]
    fn measurement_is_rejected() {
        let c = Circuit::with_gates(1, vec![Gate::measure(GateKind::MeasZ, 0, "m")]).unwrap();
        assert!(matches!(phase_polynomial_of(&c), Err(SemanticsError::NotDiagonalizable(_))));
    }

    #[test]
    fn composition_matches_concatenation() {
        let a = Circuit::with_gates(
            3,
            vec![Gate::single(GateKind::X, 1), Gate::cnot(1, 2), Gate::single(GateKind::T, 2), Gate::new(GateKind::CCZ, vec![0, 1, 2])],
        )
        .unwrap();
        let b = Circuit::with_gates(
            3,
            vec![Gate::swap(0, 2), Gate::new(GateKind::CS, vec![2, 1]), Gate::single(GateKind::X, 0), Gate::cnot(0, 1)],
        )
        .unwrap();
        let mut ab = a.clone();
        ab.append(&b);
        let whole = phase_polynomial_of(&ab).unwrap();
        let composed = phase_polynomial_of(&a).unwrap().then(&phase_polynomial_of(&b).unwrap()).unwrap();
        assert_eq!(whole, composed);
    }

    #[test]
    fn parity_coefficients_are_compared_as_functions() {
        // X before CCZ equals CCZ, CZ, X; the parity coefficients differ by 8ab-type terms
        let lhs = Circuit::with_gates(
            3,
            vec![Gate::single(GateKind::X, 0), Gate::new(GateKind::CCZ, vec![0, 1, 2])],
        )
        .unwrap();
        let rhs = Circuit::with_gates(
            3,
            vec![
                Gate::new(GateKind::CCZ, vec![0, 1, 2]),
                Gate::new(GateKind::CZ, vec![1, 2]),
                Gate::single(GateKind::X, 0),
            ],
        )
        .unwrap();
        let (a, b) = (phase_polynomial_of(&lhs).unwrap(), phase_polynomial_of(&rhs).unwrap());
        assert_ne!(a.coeffs, b.coeffs);
        assert!(poly_equal(&a, &b, false));
        let cz = Circuit::with_gates(2, vec![Gate::new(GateKind::CZ, vec![0, 1])]).unwrap();
        let id = Circuit::new(2);
        assert!(!poly_equal(&phase_polynomial_of(&cz).unwrap(), &phase_polynomial_of(&id).unwrap(), true));
    }
}
