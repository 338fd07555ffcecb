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

//! CNOT synthesis for parity matrices.
//!
//! Convention: `CX(U)` maps a basis row vector `e` to `e U`, so qubit `j`
//! ends up holding the parity `column_j(U) . e`. A synthesized block runs
//! its permutation first and then its CNOTs in `ops` order.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{CompileError, Objective};
use crate::circuit::{cnot_count, cnot_depth, Circuit, Gate, GateKind};
use crate::gf2::Gf2Matrix;

/// Permutation plus CNOT list; see the module docs for the time order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisResult {
    /// Rows of `perm` replayed through `ops` as row additions give `transpose(U)`.
    #[serde(serialize_with = "ser_matrix", deserialize_with = "de_matrix")]
    pub perm: Gf2Matrix,
    /// `(control, target)` pairs; as row operations, row `target` += row `control`.
    pub ops: Vec<(usize, usize)>,
}

fn ser_matrix<S: serde::Serializer>(m: &Gf2Matrix, s: S) -> Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

fn de_matrix<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Gf2Matrix, D::Error> {
    let rows = Vec::<Vec<u8>>::deserialize(d)?;
    Gf2Matrix::from_rows(&rows).map_err(serde::de::Error::custom)
}

impl SynthesisResult {
    /// Replays `ops` onto `perm`, giving back `transpose(U)`.
    pub fn replay(&self) -> Gf2Matrix {
        let mut b = self.perm.clone();
        for &(i, j) in &self.ops {
            b.row_add_in_place(i, j).expect("ops reference distinct in-range rows");
        }
        b
    }

    /// `src[a]`: the input qubit whose value the permutation moves to qubit `a`.
    pub fn permutation_sources(&self) -> Vec<usize> {
        let n = self.perm.rows();
        (0..n).map(|a| (0..n).find(|&s| self.perm.get(a, s)).unwrap_or(a)).collect()
    }

    /// Gates implementing `CX(U)`: SWAPs realizing the permutation, then the CNOTs.
    pub fn to_gates(&self) -> Vec<Gate> {
        let mut gates = permutation_swaps(&self.permutation_sources());
        gates.extend(self.ops.iter().map(|&(c, t)| Gate::cnot(c, t)));
        gates
    }

    pub fn cnot_depth(&self) -> usize {
        let n = self.perm.rows();
        cnot_depth(&Circuit { n, gates: self.ops.iter().map(|&(c, t)| Gate::cnot(c, t)).collect() })
    }
}

/// SWAP sequence after which qubit `a` holds what qubit `src[a]` held before.
pub fn permutation_swaps(src: &[usize]) -> Vec<Gate> {
    let mut cur: Vec<usize> = (0..src.len()).collect();
    let mut gates = Vec::new();
    for a in 0..src.len() {
        if cur[a] != src[a] {
            let b = (a + 1..src.len()).find(|&b| cur[b] == src[a]).expect("src is a permutation");
            gates.push(Gate::swap(a, b));
            cur.swap(a, b);
        }
    }
    gates
}

/// Linear map `e -> e M` of a circuit built from CNOT and SWAP gates.
pub fn parity_matrix_of(n: usize, gates: &[Gate]) -> Result<Gf2Matrix, CompileError> {
    let mut m = Gf2Matrix::identity(n);
    for g in gates {
        match g.kind {
            GateKind::CNOT => m.col_add_in_place(g.qubits[0], g.qubits[1])?,
            GateKind::SWAP => m.swap_columns(g.qubits[0], g.qubits[1]),
            other => return Err(CompileError::Precondition(format!("{other} in a CNOT region"))),
        }
    }
    Ok(m)
}

fn score(b: &Gf2Matrix) -> Vec<u32> {
    let mut w: Vec<u32> = b.col_sums().iter().zip(b.row_sums()).map(|(c, r)| c + r).collect();
    w.sort_unstable();
    w
}

/// Greedy row-operation synthesis.
///
/// Starting from `B = transpose(U)`, every ordered pair `(i, j)` is scored by
/// the sorted vector of column-plus-row sums after `B[j] += B[i]`; the
/// lexicographically smallest `(score, i, j)` is applied until `B` has weight
/// `n`. Guarded by a `4 n^2` iteration cap.
pub fn cnot_synthesize(u: &Gf2Matrix) -> Result<SynthesisResult, CompileError> {
    if !u.is_invertible()? {
        return Err(CompileError::Singular);
    }
    let n = u.rows();
    let mut b = u.transpose();
    let mut ops = Vec::new();
    let cap = 4 * n * n;
    while b.weight() != n {
        if ops.len() >= cap {
            return Err(CompileError::NoProgress { n, iterations: cap });
        }
        let mut best: Option<(Vec<u32>, usize, usize)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut trial = b.clone();
                trial.row_add_in_place(i, j)?;
                let cand = (score(&trial), i, j);
                if best.as_ref().is_none_or(|bst| cand < *bst) {
                    best = Some(cand);
                }
            }
        }
        let (_, i, j) = best.expect("n >= 2 whenever weight exceeds n");
        b.row_add_in_place(i, j)?;
        ops.push((i, j));
    }
    ops.reverse();
    Ok(SynthesisResult { perm: b, ops })
}

/// Largest size served by the exhaustive depth search.
pub const DEPTH_SEARCH_MAX_N: usize = 5;

struct DepthTable {
    layers: Vec<Vec<(usize, usize)>>,
    /// Canonical class -> (parent class, layer index); the identity class maps to itself.
    parent: HashMap<u32, (u32, u16)>,
}

fn pack_rows(n: usize, rows: &[u32]) -> u32 {
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().fold(0, |acc, (i, &r)| acc | r << (n * i))
}

fn apply_layer(rows: &mut [u32], layer: &[(usize, usize)]) {
    for r in rows.iter_mut() {
        for &(c, t) in layer {
            *r ^= (*r >> c & 1) << t;
        }
    }
}

/// Every non-empty set of disjoint ordered CNOT pairs.
fn all_layers(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(n: usize, used: u32, start: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        for a in start..n {
            if used >> a & 1 == 1 {
                continue;
            }
            for b in a + 1..n {
                if used >> b & 1 == 1 {
                    continue;
                }
                for pair in [(a, b), (b, a)] {
                    cur.push(pair);
                    out.push(cur.clone());
                    extend(n, used | 1 << a | 1 << b, a + 1, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(n, 0, 0, &mut Vec::new(), &mut out);
    out
}

fn depth_table(n: usize) -> &'static DepthTable {
    static TABLES: [OnceLock<DepthTable>; DEPTH_SEARCH_MAX_N + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[n].get_or_init(|| {
        let layers = all_layers(n);
        let identity: Vec<u32> = (0..n).map(|r| 1 << r).collect();
        let root = pack_rows(n, &identity);
        let mut parent = HashMap::from([(root, (root, u16::MAX))]);
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for rows in &frontier {
                let key = pack_rows(n, rows);
                for (li, layer) in layers.iter().enumerate() {
                    let mut child = rows.clone();
                    apply_layer(&mut child, layer);
                    let ck = pack_rows(n, &child);
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(ck) {
                        e.insert((key, li as u16));
                        next.push(child);
                    }
                }
            }
            frontier = next;
        }
        DepthTable { layers, parent }
    })
}

/// Minimum-CNOT-depth synthesis by breadth-first search over row-permutation
/// classes. Only available for `2 <= n <= 5`; the first call per size builds
/// a table (about 83k classes at `n = 5`).
pub fn depth_optimal_synthesize(u: &Gf2Matrix) -> Result<Option<SynthesisResult>, CompileError> {
    if !u.is_invertible()? {
        return Err(CompileError::Singular);
    }
    let n = u.rows();
    if !(2..=DEPTH_SEARCH_MAX_N).contains(&n) {
        return Ok(None);
    }
    let table = depth_table(n);
    let mut cur: Vec<u32> = (0..n)
        .map(|r| (0..n).filter(|&c| u.get(r, c)).fold(0, |acc, c| acc | 1 << c))
        .collect();
    let mut taken = Vec::new();
    loop {
        let key = pack_rows(n, &cur);
        let &(par, li) = table.parent.get(&key).expect("every invertible class is reachable");
        if par == key {
            break;
        }
        let layer = &table.layers[li as usize];
        apply_layer(&mut cur, layer);
        debug_assert_eq!(pack_rows(n, &cur), par);
        taken.push(layer.clone());
    }
    // cur is now the permutation Q with U = Q L_1 ... L_d; taken holds L_d first.
    let mut q = Gf2Matrix::zeros(n, n);
    for (r, &bits) in cur.iter().enumerate() {
        for c in 0..n {
            if bits >> c & 1 == 1 {
                q.set(r, c, true);
            }
        }
    }
    let ops = taken.iter().rev().flatten().copied().collect();
    Ok(Some(SynthesisResult { perm: q.transpose(), ops }))
}

/// Best available synthesis under `objective`.
///
/// Under `CnotDepth` the greedy result competes with the exhaustive depth
/// search (when `n` allows it), ranked by depth and then count. Under
/// `CnotCount` the ranking is count first.
pub fn synthesize(u: &Gf2Matrix, objective: Objective) -> Result<SynthesisResult, CompileError> {
    let greedy = cnot_synthesize(u)?;
    let Some(exact) = depth_optimal_synthesize(u)? else {
        return Ok(greedy);
    };
    let rank = |s: &SynthesisResult| {
        let (d, c) = (s.cnot_depth(), s.ops.len());
        match objective {
            Objective::CnotDepth => (d, c),
            Objective::CnotCount => (c, d),
        }
    };
    Ok(if rank(&exact) < rank(&greedy) { exact } else { greedy })
}

/// Ranking key of a finished circuit under `objective`.
pub(crate) fn circuit_cost(c: &Circuit, objective: Objective) -> (usize, usize) {
    let (d, k) = (cnot_depth(c), cnot_count(c));
    match objective {
        Objective::CnotDepth => (d, k),
        Objective::CnotCount => (k, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::DenseState;

    fn gaussian_elimination_ops(u: &Gf2Matrix) -> usize {
        let n = u.rows();
        let mut b = u.transpose();
        let mut ops = 0;
        for col in 0..n {
            let pivot = (col..n).find(|&r| b.get(r, col)).unwrap();
            if pivot != col {
                // permutation, free
                let (pr, cr) = (b.row(pivot), b.row(col));
                for c in 0..n {
                    b.set(col, c, pr.get(c));
                    b.set(pivot, c, cr.get(c));
                }
            }
            for r in 0..n {
                if r != col && b.get(r, col) {
                    b.row_add_in_place(col, r).unwrap();
                    ops += 1;
                }
            }
        }
        ops
    }

    /// Checks by simulation that the gates send each basis state `e` to `e U`.
    fn assert_implements(u: &Gf2Matrix, gates: &[Gate]) {
        let n = u.rows();
        for idx in 0..1usize << n {
            let mut s = DenseState::basis(n, idx).unwrap();
            for g in gates {
                s.apply_unitary(g).unwrap();
            }
            let want = (0..n).fold(0usize, |acc, j| {
                let bit = (0..n).filter(|&i| idx >> i & 1 == 1 && u.get(i, j)).count() % 2;
                acc | bit << j
            });
            assert!((s.amplitudes()[want].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_needs_nothing() {
        let r = cnot_synthesize(&Gf2Matrix::identity(4)).unwrap();
        assert_eq!(r.perm, Gf2Matrix::identity(4));
        assert!(r.ops.is_empty());
    }

    #[test]
    fn permutation_is_returned_transposed() {
        let u = Gf2Matrix::from_permutation(&[2, 0, 3, 1]).unwrap();
        let r = cnot_synthesize(&u).unwrap();
        assert_eq!(r.perm, u.transpose());
        assert!(r.ops.is_empty());
        assert_implements(&u, &r.to_gates());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let u = Gf2Matrix::from_rows(&[[1, 1], [1, 1]]).unwrap();
        assert!(matches!(cnot_synthesize(&u), Err(CompileError::Singular)));
    }

    #[test]
    fn random_matrices_reconstruct_and_beat_elimination() {
        let mut no_worse = 0;
        for seed in 0..100 {
            let u = Gf2Matrix::random_invertible(6, seed).unwrap();
            let r = cnot_synthesize(&u).unwrap();
            assert_eq!(r.replay(), u.transpose());
            assert!(r.perm.is_permutation().unwrap());
            assert_implements(&u, &r.to_gates());
            if r.ops.len() <= gaussian_elimination_ops(&u) {
                no_worse += 1;
            }
        }
        assert!(no_worse >= 90, "{no_worse}/100");
    }

    #[test]
    fn parity_matrix_round_trip() {
        for seed in 0..20 {
            let u = Gf2Matrix::random_invertible(5, seed).unwrap();
            let r = cnot_synthesize(&u).unwrap();
            assert_eq!(parity_matrix_of(5, &r.to_gates()).unwrap(), u);
        }
    }

    #[test]
    fn layer_counts() {
        assert_eq!(all_layers(4).len(), 24);
        assert_eq!(all_layers(5).len(), 80);
    }

    #[test]
    fn depth_search_is_exact_and_no_deeper_than_greedy() {
        for n in 2..=4 {
            for seed in 0..30 {
                let u = Gf2Matrix::random_invertible(n, 100 + seed).unwrap();
                let exact = depth_optimal_synthesize(&u).unwrap().unwrap();
                assert_eq!(exact.replay(), u.transpose());
                assert_implements(&u, &exact.to_gates());
                let greedy = cnot_synthesize(&u).unwrap();
                assert!(exact.cnot_depth() <= greedy.cnot_depth());
            }
        }
    }

    #[test]
    fn single_cnot_has_depth_one() {
        let mut u = Gf2Matrix::identity(3);
        u.col_add_in_place(0, 2).unwrap();
        let r = depth_optimal_synthesize(&u).unwrap().unwrap();
        assert_eq!(r.ops, vec![(0, 2)]);
        assert!(depth_optimal_synthesize(&Gf2Matrix::identity(1)).unwrap().is_none());
    }
}
