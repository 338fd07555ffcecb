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

//! Minimal-T-depth compilation of rotation programs.
//!
//! Rotations are split into groups of `n` with linearly independent
//! supports, each group becomes one parallel phase layer conjugated by a
//! CNOT block, adjacent CNOT blocks are merged and resynthesized, qubit
//! permutations are pushed to the front, and the leading block is folded
//! into state preparation.

mod partition;
mod pipeline;
mod synthesis;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use partition::{
    padded_residual, partition_for_ordering, partition_rotations, Partition, PartitionFailure,
    EXHAUSTIVE_MAX_ROTATIONS,
};
pub use pipeline::{
    absorb_into_prep, compile, compile_ordering, eliminate_tdag, hoist_permutations, merge_adjacent_blocks,
    parallelize_block, reference_expansion, Absorbed, CompileOptions, CompileReport,
};
pub use synthesis::{
    cnot_synthesize, depth_optimal_synthesize, parity_matrix_of, permutation_swaps, synthesize, SynthesisResult,
    DEPTH_SEARCH_MAX_N,
};

use crate::circuit::IrError;
use crate::gf2::Gf2Error;
use crate::semantics::SemanticsError;

#[derive(Debug, thiserror::Error)]
pub enum CompileError {
    #[error("parity matrix is singular")]
    Singular,
    #[error("synthesis made no progress within {iterations} iterations at n = {n}")]
    NoProgress { n: usize, iterations: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Partition(#[from] PartitionFailure),
    #[error("compiled circuit is not equivalent to the program: {0}")]
    Verification(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Quantity minimized over rotation orderings; the other metric breaks ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    #[default]
    CnotDepth,
    CnotCount,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::CnotDepth => "cnot-depth",
            Objective::CnotCount => "cnot-count",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cnot-depth" => Ok(Objective::CnotDepth),
            "cnot-count" => Ok(Objective::CnotCount),
            other => Err(format!("unknown objective {other:?} (expected cnot-depth or cnot-count)")),
        }
    }
}

/// Initial single-qubit state of a compiled circuit's qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Prep {
    #[default]
    Plus,
    Zero,
}
