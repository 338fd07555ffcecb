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

//! Grouping rotations into independent sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{compile, CompileError, CompileOptions, Objective};
use crate::circuit::{PhaseExponent, PhaseRotation, RotationProgram};
use crate::gf2::{BitVec, Gf2Matrix};

/// Programs with at most this many rotations have every ordering tried.
pub const EXHAUSTIVE_MAX_ROTATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    /// Rotation indices of the input program in the order they were grouped.
    pub ordering: Vec<usize>,
    /// Column `i` of each block is the support routed to qubit `i`.
    #[serde(with = "matrix_list")]
    pub blocks: Vec<Gf2Matrix>,
    pub exponent_map: Vec<Vec<PhaseExponent>>,
    /// Trailing rotations that do not fill a block.
    pub residual: Vec<PhaseRotation>,
}

mod matrix_list {
    use super::Gf2Matrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(ms: &[Gf2Matrix], s: S) -> Result<S::Ok, S::Error> {
        ms.iter().map(Gf2Matrix::to_rows).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Gf2Matrix>, D::Error> {
        Vec::<Vec<Vec<u8>>>::deserialize(d)?
            .iter()
            .map(|rows| Gf2Matrix::from_rows(rows).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl Partition {
    /// Number of phase layers, counting a padded residual block.
    pub fn layer_count(&self) -> usize {
        self.blocks.len() + usize::from(!self.residual.is_empty())
    }
}

#[derive(Debug, Clone, thiserror::Error, Serialize)]
#[error(
    "no ordering out of {tried} yields independent groups for {m} rotations on {n} qubits \
     (best ordering had {best_valid_groups} valid leading groups)"
)]
pub struct PartitionFailure {
    pub n: usize,
    pub m: usize,
    pub tried: usize,
    pub best_valid_groups: usize,
}

/// Completes linearly independent residual supports to an invertible matrix
/// with standard basis columns; padded qubits get exponent 0.
pub fn padded_residual(n: usize, residual: &[PhaseRotation]) -> Option<(Gf2Matrix, Vec<PhaseExponent>)> {
    let mut cols: Vec<BitVec> = residual.iter().map(|r| r.support.clone()).collect();
    let mut exps: Vec<PhaseExponent> = residual.iter().map(|r| r.k).collect();
    if Gf2Matrix::from_columns(&cols).ok()?.rank() < cols.len() {
        return None;
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        cols.push(BitVec::unit(n, i));
        if Gf2Matrix::from_columns(&cols).ok()?.rank() < cols.len() {
            cols.pop();
        } else {
            exps.push(PhaseExponent::ZERO);
        }
    }
    Some((Gf2Matrix::from_columns(&cols).ok()?, exps))
}

/// Groups `p` in the given order. On failure returns how many leading groups were valid.
pub fn partition_for_ordering(p: &RotationProgram, order: &[usize]) -> Result<Partition, usize> {
    let n = p.n;
    let full = if n == 0 { 0 } else { order.len() / n };
    let mut blocks = Vec::with_capacity(full);
    let mut exponent_map = Vec::with_capacity(full);
    for b in 0..full {
        let rots: Vec<&PhaseRotation> = order[b * n..(b + 1) * n].iter().map(|&i| &p.rotations[i]).collect();
        let cols: Vec<BitVec> = rots.iter().map(|r| r.support.clone()).collect();
        let u = Gf2Matrix::from_columns(&cols).map_err(|_| b)?;
        if u.rank() < n {
            return Err(b);
        }
        blocks.push(u);
        exponent_map.push(rots.iter().map(|r| r.k).collect());
    }
    let residual: Vec<PhaseRotation> = order[full * n..].iter().map(|&i| p.rotations[i].clone()).collect();
    if !residual.is_empty() && padded_residual(n, &residual).is_none() {
        return Err(full);
    }
    Ok(Partition { ordering: order.to_vec(), blocks, exponent_map, residual })
}

/// Number of candidate orderings and whether they cover all `m!` orderings.
pub(crate) fn ordering_plan(m: usize, budget: usize) -> (usize, bool) {
    if m <= EXHAUSTIVE_MAX_ROTATIONS {
        ((1..=m).product(), true)
    } else {
        (budget.max(1), false)
    }
}

/// Candidate `index`: the `index`-th permutation in lexicographic order when
/// exhaustive, otherwise the given order (index 0) or a seeded shuffle.
pub(crate) fn candidate_ordering(m: usize, index: usize, exhaustive: bool, seed: u64) -> Vec<usize> {
    if exhaustive {
        let mut pool: Vec<usize> = (0..m).collect();
        let mut rest = index;
        let mut out = Vec::with_capacity(m);
        for i in (0..m).rev() {
            let f: usize = (1..=i).product();
            out.push(pool.remove(rest / f));
            rest %= f;
        }
        out
    } else {
        let mut order: Vec<usize> = (0..m).collect();
        if index > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            order.shuffle(&mut rng);
        }
        order
    }
}

/// Picks the ordering whose fully compiled circuit minimizes `objective`.
pub fn partition_rotations(
    p: &RotationProgram,
    budget: usize,
    seed: u64,
    objective: Objective,
) -> Result<Partition, CompileError> {
    let opts = CompileOptions { budget, seed, objective, ..CompileOptions::default() };
    Ok(compile(p, &opts)?.partition)
}
