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

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partition::{candidate_ordering, ordering_plan, padded_residual, partition_for_ordering};
use super::synthesis::{circuit_cost, parity_matrix_of, permutation_swaps, synthesize, SynthesisResult};
use super::{CompileError, Objective, Partition, PartitionFailure, Prep};
use crate::circuit::{cnot_count, cnot_depth, t_count, t_depth, Circuit, Gate, GateKind, PhaseExponent, RotationProgram};
use crate::gf2::Gf2Matrix;
use crate::semantics::{phase_polynomial_of, phase_polynomial_of_program, poly_equal};

type Cache = RwLock<HashMap<(Gf2Matrix, Objective), SynthesisResult>>;

const CACHE_LIMIT: usize = 1 << 20;

fn cached_synthesize(u: &Gf2Matrix, objective: Objective) -> Result<SynthesisResult, CompileError> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (u.clone(), objective);
    if let Some(hit) = cache.read().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let result = synthesize(u, objective)?;
    let mut w = cache.write().expect("cache lock");
    if w.len() >= CACHE_LIMIT {
        w.clear();
    }
    w.insert(key, result.clone());
    Ok(result)
}

/// One block as `CX(U)`, then `T^{k_i}` on each qubit `i`, then `CX(U)^-1`.
pub fn parallelize_block(
    u: &Gf2Matrix,
    exponents: &[PhaseExponent],
    objective: Objective,
) -> Result<Circuit, CompileError> {
    let n = u.rows();
    if exponents.len() != n {
        return Err(CompileError::Precondition(format!("{} exponents for {n} qubits", exponents.len())));
    }
    let forward = cached_synthesize(u, objective)?.to_gates();
    let mut c = Circuit::new(n);
    c.extend(forward.iter().cloned());
    for (q, &k) in exponents.iter().enumerate() {
        c.extend(Gate::phase_gates(q, k));
    }
    c.extend(forward.into_iter().rev());
    Ok(c)
}

/// Replaces every maximal run of CNOT/SWAP gates by a fresh synthesis of its
/// parity matrix. Identity runs disappear.
pub fn merge_adjacent_blocks(c: &Circuit, objective: Objective) -> Result<Circuit, CompileError> {
    let mut out = Circuit::new(c.n);
    let mut run: Vec<Gate> = Vec::new();
    let flush = |run: &mut Vec<Gate>, out: &mut Circuit| -> Result<(), CompileError> {
        if !run.is_empty() {
            let m = parity_matrix_of(c.n, run)?;
            out.extend(cached_synthesize(&m, objective)?.to_gates());
            run.clear();
        }
        Ok(())
    };
    for g in &c.gates {
        if matches!(g.kind, GateKind::CNOT | GateKind::SWAP) {
            run.push(g.clone());
        } else {
            flush(&mut run, &mut out)?;
            out.push(g.clone());
        }
    }
    flush(&mut run, &mut out)?;
    Ok(out)
}

/// Moves every SWAP to the start of the circuit, relabeling the gates it
/// passes, and re-emits the composed permutation with as few SWAPs as possible.
pub fn hoist_permutations(c: &Circuit) -> Circuit {
    // f maps a gate's label to its label once all later swaps sit in front of it.
    let mut f: Vec<usize> = (0..c.n).collect();
    let mut body = Vec::with_capacity(c.gates.len());
    let mut cur: Vec<usize> = (0..c.n).collect();
    for g in c.gates.iter().rev() {
        if g.kind == GateKind::SWAP {
            f.swap(g.qubits[0], g.qubits[1]);
        } else {
            body.push(g.relabeled(&f));
        }
    }
    body.reverse();
    for g in c.gates.iter().filter(|g| g.kind == GateKind::SWAP) {
        cur.swap(g.qubits[0], g.qubits[1]);
    }
    let mut out = Circuit::new(c.n);
    out.extend(permutation_swaps(&cur));
    out.extend(body);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Absorbed {
    pub circuit: Circuit,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq)]
enum Open {
    Plus,
    Zero,
    Closed,
}

/// Prepends state preparation and deletes the gates it makes redundant.
///
/// Leading SWAPs relabel the preparations. CNOTs with a `|+>` target or a
/// `|0>` control are dropped, as are X on `|+>` and diagonal gates on `|0>`.
/// A T or T-dagger reaching a still-untouched `|+>` qubit becomes a `|T>`-type
/// preparation. Anything else closes its qubits.
pub fn absorb_into_prep(c: &Circuit, prep: &[Prep]) -> Absorbed {
    if prep.len() != c.n || !c.is_unitary() {
        let reason = if prep.len() != c.n {
            format!("{} preparations for {} qubits", prep.len(), c.n)
        } else {
            "circuit already contains preparations or measurements".to_string()
        };
        return Absorbed { circuit: c.clone(), warnings: vec![format!("absorption skipped: {reason}")] };
    }
    let lead = c.gates.iter().take_while(|g| g.kind == GateKind::SWAP).count();
    let mut cur: Vec<usize> = (0..c.n).collect();
    for g in &c.gates[..lead] {
        cur.swap(g.qubits[0], g.qubits[1]);
    }
    let mut state: Vec<Open> = cur
        .iter()
        .map(|&s| match prep[s] {
            Prep::Plus => Open::Plus,
            Prep::Zero => Open::Zero,
        })
        .collect();
    let mut kinds: Vec<GateKind> = cur
        .iter()
        .map(|&s| match prep[s] {
            Prep::Plus => GateKind::PrepPlus,
            Prep::Zero => GateKind::PrepZero,
        })
        .collect();
    let mut kept = Vec::new();
    for g in &c.gates[lead..] {
        let q = g.qubits[0];
        let drop = match g.kind {
            GateKind::CNOT => state[g.qubits[1]] == Open::Plus || state[q] == Open::Zero,
            GateKind::X => state[q] == Open::Plus,
            GateKind::T | GateKind::Tdag if state[q] == Open::Plus => {
                kinds[q] = if g.kind == GateKind::T { GateKind::PrepT } else { GateKind::PrepTdag };
                state[q] = Open::Closed;
                true
            }
            k if k.is_diagonal() => g.qubits.iter().any(|&x| state[x] == Open::Zero),
            _ => false,
        };
        if !drop {
            for &x in &g.qubits {
                state[x] = Open::Closed;
            }
            kept.push(g.clone());
        }
    }
    let mut out = Circuit::new(c.n);
    out.extend(kinds.iter().enumerate().map(|(q, &k)| Gate::single(k, q)));
    out.extend(kept);
    Absorbed { circuit: out, warnings: Vec::new() }
}

/// Rewrites T-dagger as X T X and a T-dagger preparation as `|T>` followed by X.
/// Both hold up to global phase.
pub fn eliminate_tdag(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.n);
    for g in &c.gates {
        let q = g.qubits[0];
        match g.kind {
            GateKind::Tdag => out.extend([
                Gate::single(GateKind::X, q),
                Gate::single(GateKind::T, q),
                Gate::single(GateKind::X, q),
            ]),
            GateKind::PrepTdag => {
                out.extend([Gate::single(GateKind::PrepT, q), Gate::single(GateKind::X, q)])
            }
            _ => out.push(g.clone()),
        }
    }
    out
}

/// Each rotation as its own parity gadget: CNOTs onto the lowest support
/// qubit, the phase, and the CNOTs undone.
pub fn reference_expansion(p: &RotationProgram) -> Circuit {
    let mut c = Circuit::new(p.n);
    for r in &p.rotations {
        let mut ones = r.support.ones();
        let Some(t) = ones.next() else { continue };
        let fan: Vec<Gate> = ones.map(|i| Gate::cnot(i, t)).collect();
        c.extend(fan.iter().cloned());
        c.extend(Gate::phase_gates(t, r.k));
        c.extend(fan.into_iter().rev());
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileOptions {
    /// Per-qubit input state; all `|+>` when absent.
    pub prep: Option<Vec<Prep>>,
    /// Orderings sampled when the program is too large for exhaustive search.
    pub budget: usize,
    pub seed: u64,
    pub objective: Objective,
    /// Compile exactly this ordering instead of searching.
    pub ordering: Option<Vec<usize>>,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self { prep: None, budget: 2000, seed: 0, objective: Objective::CnotDepth, ordering: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompileReport {
    pub circuit: Circuit,
    pub t_depth: usize,
    pub t_count: usize,
    pub cnot_depth: usize,
    pub cnot_count: usize,
    /// CNOT depth of each CNOT region between phase layers, in time order.
    pub block_depths: Vec<usize>,
    pub orderings_tried: usize,
    pub exhaustive: bool,
    pub seed: u64,
    pub budget: usize,
    pub objective: Objective,
    pub partition: Partition,
    /// The unitary circuit before folding into state preparation.
    pub unitary: Circuit,
    pub warnings: Vec<String>,
}

/// CNOT depth of every maximal T-free stretch that contains a CNOT or SWAP.
pub fn region_depths(c: &Circuit) -> Vec<usize> {
    c.gates
        .split(|g| g.kind.is_t_type())
        .map(|run| cnot_depth(&Circuit { n: c.n, gates: run.to_vec() }))
        .filter(|&d| d > 0)
        .collect()
}

struct Compiled {
    unitary: Circuit,
    circuit: Circuit,
    warnings: Vec<String>,
}

fn compile_partition(
    n: usize,
    part: &Partition,
    prep: &[Prep],
    objective: Objective,
) -> Result<Compiled, CompileError> {
    let mut raw = Circuit::new(n);
    for (u, k) in part.blocks.iter().zip(&part.exponent_map) {
        raw.append(&parallelize_block(u, k, objective)?);
    }
    if !part.residual.is_empty() {
        let (u, k) = padded_residual(n, &part.residual)
            .ok_or_else(|| CompileError::Precondition("residual supports are dependent".into()))?;
        raw.append(&parallelize_block(&u, &k, objective)?);
    }
    let unitary = hoist_permutations(&merge_adjacent_blocks(&raw, objective)?);
    let absorbed = absorb_into_prep(&unitary, prep);
    Ok(Compiled { circuit: eliminate_tdag(&absorbed.circuit), unitary, warnings: absorbed.warnings })
}

/// Compiles one fixed grouping of the program.
pub fn compile_ordering(
    p: &RotationProgram,
    ordering: &[usize],
    opts: &CompileOptions,
) -> Result<CompileReport, CompileError> {
    let opts = CompileOptions { ordering: Some(ordering.to_vec()), ..opts.clone() };
    compile(p, &opts)
}

enum Candidate {
    Valid((usize, usize)),
    Invalid(usize),
}

/// Full pipeline: search orderings, parallelize, merge, hoist, absorb.
///
/// Candidates are evaluated in parallel; the winner is the lowest
/// `(cost, candidate index)`, so results do not depend on scheduling.
pub fn compile(p: &RotationProgram, opts: &CompileOptions) -> Result<CompileReport, CompileError> {
    let n = p.n;
    let m = p.len();
    let prep = opts.prep.clone().unwrap_or_else(|| vec![Prep::Plus; n]);
    if prep.len() != n {
        return Err(CompileError::Precondition(format!("{} preparations for {n} qubits", prep.len())));
    }
    if let Some(order) = &opts.ordering {
        let mut seen = vec![false; m];
        if order.len() != m || order.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
            return Err(CompileError::Precondition(format!("ordering is not a permutation of 0..{m}")));
        }
    }
    let (count, exhaustive) = match &opts.ordering {
        Some(_) => (1, false),
        None => ordering_plan(m, opts.budget),
    };
    let order_of = |idx: usize| match &opts.ordering {
        Some(o) => o.clone(),
        None => candidate_ordering(m, idx, exhaustive, opts.seed),
    };
    let outcomes: Vec<Result<Candidate, CompileError>> = (0..count)
        .into_par_iter()
        .map(|idx| match partition_for_ordering(p, &order_of(idx)) {
            Ok(part) => {
                let c = compile_partition(n, &part, &prep, opts.objective)?;
                Ok(Candidate::Valid(circuit_cost(&c.circuit, opts.objective)))
            }
            Err(valid) => Ok(Candidate::Invalid(valid)),
        })
        .collect();
    let mut best: Option<((usize, usize), usize)> = None;
    let mut best_valid_groups = 0;
    for (idx, o) in outcomes.into_iter().enumerate() {
        match o? {
            Candidate::Valid(cost) => {
                if best.is_none_or(|(b, _)| cost < b) {
                    best = Some((cost, idx));
                }
            }
            Candidate::Invalid(v) => best_valid_groups = best_valid_groups.max(v),
        }
    }
    let Some((_, idx)) = best else {
        return Err(PartitionFailure { n, m, tried: count, best_valid_groups }.into());
    };
    let partition = partition_for_ordering(p, &order_of(idx)).expect("winner was valid");
    let compiled = compile_partition(n, &partition, &prep, opts.objective)?;
    let want = phase_polynomial_of_program(p);
    let got = phase_polynomial_of(&compiled.unitary)?;
    if !poly_equal(&want, &got, true) {
        return Err(CompileError::Verification(format!("ordering {:?}", partition.ordering)));
    }
    let c = compiled.circuit;
    Ok(CompileReport {
        t_depth: t_depth(&c),
        t_count: t_count(&c),
        cnot_depth: cnot_depth(&c),
        cnot_count: cnot_count(&c),
        block_depths: region_depths(&c),
        circuit: c,
        orderings_tried: count,
        exhaustive,
        seed: opts.seed,
        budget: opts.budget,
        objective: opts.objective,
        partition,
        unitary: compiled.unitary,
        warnings: compiled.warnings,
    })
}
