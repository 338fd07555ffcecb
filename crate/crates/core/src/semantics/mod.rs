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

//! Circuit semantics: a dense simulator and the phase-polynomial form of
//! diagonal-plus-CNOT circuits.

mod dense;
mod phase_poly;

pub use dense::{
    enumerate_branches, simulate, simulate_with, state_fidelity, unitary_columns, unitary_distance, Branch,
    DenseState, Insertion, Pauli, SimOutcome, MAX_QUBITS,
};
pub use phase_poly::{phase_polynomial_of, phase_polynomial_of_program, poly_equal, PhasePolynomial};

use crate::circuit::{Circuit, RotationProgram};

#[derive(Debug, thiserror::Error)]
pub enum SemanticsError {
    #[error("gate {0} has no phase-polynomial form")]
    NotDiagonalizable(String),
    #[error("gate {0} is not unitary")]
    NotUnitary(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} qubits exceed the dense simulator limit of {MAX_QUBITS}")]
    TooLarge(usize),
    #[error("postselection names unknown record {0:?}")]
    UnknownRecord(String),
    #[error("simulation error: {0}")]
    Simulation(String),
}

/// Result of comparing two unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub equal: bool,
    /// Largest entrywise deviation after aligning global phase; 0 when decided symbolically.
    pub max_deviation: f64,
}

/// Checks `a == b` up to global phase.
///
/// Circuits in the CNOT + diagonal fragment are compared exactly through
/// their phase polynomials; everything else goes through dense unitaries.
pub fn equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Result<Equivalence, SemanticsError> {
    if a.n != b.n {
        return Err(SemanticsError::Dimension(format!("{} vs {} qubits", a.n, b.n)));
    }
    if let (Ok(pa), Ok(pb)) = (phase_polynomial_of(a), phase_polynomial_of(b)) {
        return Ok(Equivalence { equal: poly_equal(&pa, &pb, true), max_deviation: 0.0 });
    }
    let dev = unitary_distance(&unitary_columns(a)?, &unitary_columns(b)?)?;
    Ok(Equivalence { equal: dev <= tol, max_deviation: dev })
}

/// Checks that a circuit implements the product of a rotation program's rotations.
pub fn implements_program(c: &Circuit, p: &RotationProgram) -> Result<bool, SemanticsError> {
    let want = phase_polynomial_of_program(p);
    let got = phase_polynomial_of(c)?;
    Ok(poly_equal(&want, &got, true))
}
