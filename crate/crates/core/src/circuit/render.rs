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

use std::fmt::Write;

use super::{gate_layers, Circuit, GateKind};

const CELL: usize = 8;

fn cell_label(kind: GateKind, operand: usize) -> String {
    use GateKind::*;
    match (kind, operand) {
        (CNOT, 0) => "*".into(),
        (CNOT, _) => "(+)".into(),
        (SWAP, _) => "x".into(),
        (CZ, _) => "CZ".into(),
        (CS, 0) => "CS.c".into(),
        (CS, _) => "CS.t".into(),
        (CCZ, _) => "CCZ".into(),
        (PrepPlus, _) => "|+>".into(),
        (PrepZero, _) => "|0>".into(),
        (PrepT, _) => "|T>".into(),
        (PrepTdag, _) => "|T*>".into(),
        (MeasZ, _) => "MZ".into(),
        (MeasX, _) => "MX".into(),
        (CondS, _) => "S?".into(),
        (k, _) => k.name().into(),
    }
}

/// One line per ASAP layer, one fixed-width column per qubit.
pub fn render_text(c: &Circuit) -> String {
    let layers = gate_layers(c);
    let depth = layers.iter().map(|l| l + 1).max().unwrap_or(0);
    let mut grid = vec![vec![String::from("|"); c.n]; depth];
    let mut links = vec![vec![]; depth];
    for (g, &l) in c.gates.iter().zip(&layers) {
        for (i, &q) in g.qubits.iter().enumerate() {
            grid[l][q] = cell_label(g.kind, i);
        }
        if g.qubits.len() > 1 {
            links[l].push(g.qubits.clone());
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{:>5} ", "");
    for q in 0..c.n {
        let _ = write!(out, "{:^CELL$}", format!("q{q}"));
    }
    out.push('\n');
    for (l, row) in grid.iter().enumerate() {
        let _ = write!(out, "{l:>5} ");
        for cell in row {
            let _ = write!(out, "{cell:^CELL$}");
        }
        for ops in &links[l] {
            let joined: Vec<String> = ops.iter().map(|q| q.to_string()).collect();
            let _ = write!(out, "  [{}]", joined.join("-"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn renders_one_line_per_layer() {
        let c = Circuit::with_gates(
            3,
            vec![Gate::single(GateKind::PrepT, 0), Gate::cnot(0, 1), Gate::cnot(1, 2)],
        )
        .unwrap();
        let text = render_text(&c);
        assert_eq!(text.lines().count(), 1 + 3);
        assert!(text.contains("|T>"));
        assert!(text.contains("(+)"));
    }
}
