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

use std::f64::consts::FRAC_PI_4;

use magic_circuits::circuit::{Circuit, Gate, GateKind, PhaseExponent, PhaseRotation, RotationProgram};
use magic_circuits::compiler::{compile, CompileOptions, Objective};
use magic_circuits::gf2::Gf2Matrix;
use magic_circuits::semantics::{
    implements_program, phase_polynomial_of, poly_equal, unitary_columns, unitary_distance, DenseState,
};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A program whose rotations can be grouped into independent sets: the
/// columns of random invertible matrices, truncated and shuffled.
fn partitionable_program(rng: &mut ChaCha8Rng, n: usize, m: usize) -> RotationProgram {
    let mut rots = Vec::new();
    while rots.len() < m {
        let u = Gf2Matrix::random_invertible(n, rng.random()).unwrap();
        for c in 0..n {
            let k = PhaseExponent::new(rng.random_range(1..8)).unwrap();
            rots.push(PhaseRotation::new(u.column(c), k).unwrap());
        }
    }
    rots.truncate(m);
    rots.shuffle(rng);
    RotationProgram::new(n, rots).unwrap()
}

fn diagonal_of(p: &RotationProgram) -> Vec<Complex64> {
    (0..1usize << p.n)
        .map(|e| {
            let k: u32 = p
                .rotations
                .iter()
                .filter(|r| r.support.ones().filter(|&q| e >> q & 1 == 1).count() % 2 == 1)
                .map(|r| r.k.value() as u32)
                .sum();
            Complex64::from_polar(1.0, FRAC_PI_4 * (k % 8) as f64)
        })
        .collect()
}

fn diagonal_circuit_columns(d: &[Complex64]) -> Vec<DenseState> {
    (0..d.len())
        .map(|e| {
            let mut amps = vec![Complex64::new(0.0, 0.0); d.len()];
            amps[e] = d[e];
            DenseState::from_amplitudes(amps).unwrap()
        })
        .collect()
}

#[test]
fn compiled_programs_implement_their_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..40 {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..=20);
        let p = partitionable_program(&mut rng, n, m);
        let opts = CompileOptions { seed: case, budget: 500, ..Default::default() };
        let report = compile(&p, &opts).unwrap_or_else(|e| panic!("case {case} (n={n}, m={m}): {e}"));
        assert!(implements_program(&report.unitary, &p).unwrap(), "case {case}");
        let dense = unitary_distance(&unitary_columns(&report.unitary).unwrap(), &diagonal_circuit_columns(&diagonal_of(&p)))
            .unwrap();
        assert!(dense < 1e-9, "case {case}: dense deviation {dense}");
        assert_eq!(report.t_count, p.t_count(), "case {case}");
        assert!(report.t_depth <= m.div_ceil(n), "case {case}");
    }
}

#[test]
fn objectives_agree_on_t_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let p = partitionable_program(&mut rng, 4, 8);
        let depth = compile(&p, &CompileOptions::default()).unwrap();
        let count = compile(&p, &CompileOptions { objective: Objective::CnotCount, ..Default::default() }).unwrap();
        assert_eq!(depth.t_count, count.t_count);
        assert!(count.cnot_count <= depth.cnot_count);
        assert!(implements_program(&count.unitary, &p).unwrap());
    }
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
    use GateKind::*;
    let mut qs: Vec<usize> = (0..n).collect();
    qs.shuffle(rng);
    let singles = [X, Z, S, Sdag, T, Tdag];
    match rng.random_range(0..10) {
        0..=4 => Gate::single(singles[rng.random_range(0..singles.len())], qs[0]),
        5 | 6 if n >= 2 => Gate::cnot(qs[0], qs[1]),
        7 if n >= 2 => Gate::swap(qs[0], qs[1]),
        8 if n >= 2 => Gate::new([CZ, CS][rng.random_range(0..2)], vec![qs[0], qs[1]]),
        9 if n >= 3 => Gate::new(CCZ, vec![qs[0], qs[1], qs[2]]),
        _ => Gate::single(X, qs[0]),
    }
}

/// A circuit equal to `c`: X-conjugated diagonals and cancelling pairs inserted at random.
fn scrambled_copy(rng: &mut ChaCha8Rng, c: &Circuit) -> Circuit {
    use GateKind::*;
    let mut out = Circuit::new(c.n);
    for g in &c.gates {
        if rng.random_bool(0.3) {
            let q = rng.random_range(0..c.n);
            out.push(Gate::single(X, q));
            out.push(Gate::single(X, q));
        }
        match g.kind {
            T | Tdag if rng.random_bool(0.5) => {
                // T = e^{i pi/4} X T^dag X
                let flipped = if g.kind == T { Tdag } else { T };
                out.push(Gate::single(X, g.qubits[0]));
                out.push(Gate::single(flipped, g.qubits[0]));
                out.push(Gate::single(X, g.qubits[0]));
            }
            CZ if rng.random_bool(0.5) => {
                out.push(Gate::new(CS, g.qubits.clone()));
                out.push(Gate::new(CS, g.qubits.clone()));
            }
            _ => out.push(g.clone()),
        }
    }
    out
}

#[test]
fn phase_polynomials_agree_with_dense_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut equal_cases, mut different_cases) = (0, 0);
    for case in 0..500 {
        let n = rng.random_range(1..=5);
        let len = rng.random_range(0..25);
        let a = Circuit::with_gates(n, (0..len).map(|_| random_gate(&mut rng, n)).collect()).unwrap();
        let b = if rng.random_bool(0.5) {
            scrambled_copy(&mut rng, &a)
        } else {
            let mut b = a.clone();
            let at = rng.random_range(0..=b.gates.len());
            b.gates.insert(at, random_gate(&mut rng, n));
            b
        };
        let poly = poly_equal(&phase_polynomial_of(&a).unwrap(), &phase_polynomial_of(&b).unwrap(), true);
        let dist = unitary_distance(&unitary_columns(&a).unwrap(), &unitary_columns(&b).unwrap()).unwrap();
        assert_eq!(poly, dist < 1e-9, "case {case}: polynomial says {poly}, dense distance {dist}");
        if poly {
            equal_cases += 1;
        } else {
            different_cases += 1;
        }
    }
    assert!(equal_cases > 100 && different_cases > 100, "{equal_cases} equal, {different_cases} different");
}

#[test]
fn composition_matches_concatenation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.random_range(1..=5);
        let a = Circuit::with_gates(n, (0..10).map(|_| random_gate(&mut rng, n)).collect()).unwrap();
        let b = Circuit::with_gates(n, (0..10).map(|_| random_gate(&mut rng, n)).collect()).unwrap();
        let mut ab = a.clone();
        ab.append(&b);
        let composed = phase_polynomial_of(&a).unwrap().then(&phase_polynomial_of(&b).unwrap()).unwrap();
        assert!(poly_equal(&composed, &phase_polynomial_of(&ab).unwrap(), false));
    }
}

/// Four T-type rotations on one block plus three Clifford phases give
/// CC(iZ) on qubits 0, 1, 2 with qubit 3 as a |0> helper.
#[test]
fn t_depth_one_cc_iz() {
    let rot = |s: &str, k: u8| PhaseRotation::parse(s, k).unwrap();
    let p = RotationProgram::new(4, vec![rot("0010", 1), rot("1010", 7), rot("0110", 7), rot("1111", 1)]).unwrap();
    let report = compile(&p, &CompileOptions::default()).unwrap();
    assert_eq!(report.t_depth, 1);
    let mut c = report.unitary.clone();
    c.extend([
        Gate::single(GateKind::S, 0),
        Gate::single(GateKind::S, 1),
        Gate::cnot(0, 1),
        Gate::single(GateKind::Sdag, 1),
        Gate::cnot(0, 1),
    ]);
    let cols = unitary_columns(&c).unwrap();
    let mut reference: Option<Complex64> = None;
    for e in 0..8usize {
        let (x, y, z) = (e & 1, e >> 1 & 1, e >> 2 & 1);
        // i^{xy} (-1)^{xyz}
        let want = Complex64::i().powu((x * y) as u32) * if x * y * z == 1 { -1.0 } else { 1.0 };
        let amp = cols[e].amplitudes()[e];
        assert!((amp.norm() - 1.0).abs() < 1e-12, "input {e} leaves the helper in |0>");
        let ratio = amp / want;
        let g = *reference.get_or_insert(ratio);
        assert!((ratio - g).norm() < 1e-12, "input {e}");
    }
}
