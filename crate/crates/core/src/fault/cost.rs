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

//! Rough spacetime cost in physical qubit-cycles.
//!
//! Every logical patch is charged `factor * d^2` physical qubits (code plus
//! auxiliary and flag qubits). Space for catalytic S teleportation, needed
//! when S is not transversal, is not included.

use serde::{Deserialize, Serialize};

use super::FaultError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub rounds: u64,
    pub patches: u64,
    pub qubits_per_patch_factor: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self { rounds: 7, patches: 8, qubits_per_patch_factor: 3 }
    }
}

impl CostModel {
    pub fn cost(&self, d: u64) -> Result<u64, FaultError> {
        spacetime_cost(d, self.rounds, self.patches, self.qubits_per_patch_factor)
    }
}

/// `rounds * patches * factor * d^2`.
pub fn spacetime_cost(d: u64, rounds: u64, patches: u64, factor: u64) -> Result<u64, FaultError> {
    if d == 0 {
        return Err(FaultError::Domain("code distance must be at least 1".into()));
    }
    [rounds, patches, factor, d, d]
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| FaultError::Domain("cost overflows u64".into()))
}

/// Comparison with a lattice-surgery construction of 18 patches running 8.5 d cycles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostComparison {
    pub d: u64,
    pub ours: u64,
    pub baseline: f64,
    pub ratio: f64,
}

pub const BASELINE_PATCHES: u64 = 18;
pub const BASELINE_CYCLES_PER_D: f64 = 8.5;

pub fn lattice_surgery_comparison(d: u64, model: &CostModel) -> Result<CostComparison, FaultError> {
    let ours = model.cost(d)?;
    let df = d as f64;
    let baseline =
        BASELINE_PATCHES as f64 * model.qubits_per_patch_factor as f64 * df * df * BASELINE_CYCLES_PER_D * df;
    Ok(CostComparison { d, ours, baseline, ratio: baseline / ours as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let m = CostModel::default();
        assert_eq!(m.cost(1).unwrap(), 168);
        assert_eq!(m.cost(5).unwrap(), 4200);
        assert_eq!(m.cost(11).unwrap(), 20328);
        assert!(m.cost(0).is_err());
    }

    #[test]
    fn baseline_ratio_grows_linearly_in_d() {
        let m = CostModel::default();
        let r5 = lattice_surgery_comparison(5, &m).unwrap().ratio;
        let r10 = lattice_surgery_comparison(10, &m).unwrap().ratio;
        assert!((r10 / r5 - 2.0).abs() < 1e-12);
        // 18 * 3 * 8.5 / 168 per unit of d
        assert!((r5 / 5.0 - 459.0 / 168.0).abs() < 1e-12);
    }
}
