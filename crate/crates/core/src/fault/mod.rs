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

//! Fault analysis of magic-state circuits.
//!
//! Faults are Pauli operators inserted between gates. Exhaustive
//! enumeration classifies single faults and fault pairs; the Monte Carlo
//! estimator samples round-by-round logical noise on an explicit schedule.

mod channel;
mod cost;
mod enumerate;
mod monte_carlo;
mod schedule;

use serde::{Deserialize, Serialize};

pub use channel::{superoperator_distance, t_gadget_channel, Superoperator, TGadgetChannel};
pub use cost::{lattice_surgery_comparison, spacetime_cost, CostComparison, CostModel};
pub use enumerate::{
    enumerate_pair_faults, enumerate_single_faults, evaluate_faults, fault_sites, first_order_oracle, DetectionTable,
    FaultClass, FaultEntry, FirstOrderReport, SiteSet, Target, HARMFUL_THRESHOLD,
};
pub use monte_carlo::{monte_carlo_infidelity, AnalysisReport, Coefficients};
pub use schedule::{bundled_impl_schedule, implement_t_gadgets, ImplOptions, Round, RoundSchedule, SRound};

use crate::compiler::CompileError;
use crate::semantics::{Pauli, SemanticsError};

#[derive(Debug, thiserror::Error)]
pub enum FaultError {
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("unsupported circuit: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Logical noise: depolarizing `p_l` per qubit per round and Z errors at
/// `p_t` on every `|T>`-type preparation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p_l: f64,
    pub p_t: f64,
    /// `p_t / p_l`; zero when `p_l` is zero.
    pub r: f64,
    /// Extra idle code cycles spent decoding before the adaptive S round.
    pub t_decode: usize,
}

fn check_prob(name: &str, p: f64) -> Result<(), FaultError> {
    if !(0.0..=0.5).contains(&p) {
        return Err(FaultError::Domain(format!("{name} = {p} is outside [0, 0.5]")));
    }
    Ok(())
}

impl NoiseModel {
    pub fn new(p_l: f64, p_t: f64, t_decode: usize) -> Result<Self, FaultError> {
        check_prob("p_L", p_l)?;
        check_prob("p_T", p_t)?;
        let r = if p_l > 0.0 { p_t / p_l } else { 0.0 };
        Ok(Self { p_l, p_t, r, t_decode })
    }

    /// `p_t = r * p_l`.
    pub fn from_ratio(p_l: f64, r: f64, t_decode: usize) -> Result<Self, FaultError> {
        if r < 0.0 || !r.is_finite() {
            return Err(FaultError::Domain(format!("r = {r} must be a non-negative number")));
        }
        let mut nm = Self::new(p_l, r * p_l, t_decode)?;
        nm.r = r;
        Ok(nm)
    }
}

/// A Pauli fault placed just before gate `gate_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaultLocation {
    pub gate_index: usize,
    pub qubit: usize,
    pub pauli: Pauli,
    /// Schedule round whose end the fault belongs to, when scheduled.
    pub round: Option<usize>,
}
