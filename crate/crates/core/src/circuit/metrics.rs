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

//! Depth and count metrics.
//!
//! Depths use as-soon-as-possible layering in list order. Only the counted
//! gate class opens a new layer; every other gate carries the layer index
//! across its operands, so it orders the counted gates around it without
//! adding depth of its own.

use super::{Circuit, GateKind};

fn weighted_depth(c: &Circuit, counts: impl Fn(GateKind) -> bool) -> usize {
    let mut level = vec![0usize; c.n];
    let mut depth = 0;
    for g in &c.gates {
        let base = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0);
        let next = if counts(g.kind) { base + 1 } else { base };
        for &q in &g.qubits {
            level[q] = next;
        }
        depth = depth.max(next);
    }
    depth
}

/// Number of CNOT/SWAP layers.
pub fn cnot_depth(c: &Circuit) -> usize {
    weighted_depth(c, |k| matches!(k, GateKind::CNOT | GateKind::SWAP))
}

/// Number of layers holding a T, T-dagger, or |T>-type preparation.
pub fn t_depth(c: &Circuit) -> usize {
    weighted_depth(c, GateKind::is_t_type)
}

pub fn cnot_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| g.kind == GateKind::CNOT).count()
}

pub fn t_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| g.kind.is_t_type()).count()
}

/// ASAP layer index of every gate, counting all gates.
pub fn gate_layers(c: &Circuit) -> Vec<usize> {
    let mut level = vec![0usize; c.n];
    c.gates
        .iter()
        .map(|g| {
            let l = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0);
            for &q in &g.qubits {
                level[q] = l + 1;
            }
            l
        })
        .collect()
}
