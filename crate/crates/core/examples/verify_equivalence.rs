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

//! Equivalence checking with the phase-polynomial and dense oracles.

use magic_circuits::circuit::{Circuit, Gate, GateKind};
use magic_circuits::compiler::{compile, reference_expansion, CompileOptions};
use magic_circuits::protocols;
use magic_circuits::semantics::{equivalent, implements_program, phase_polynomial_of};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let program = protocols::t15_program();
    let report = compile(&program, &CompileOptions::default())?;
    let reference = reference_expansion(&program);
    println!("compiled unitary implements the program: {}", implements_program(&report.unitary, &program)?);
    println!("matches the gadget-by-gadget expansion: {}", equivalent(&report.unitary, &reference, 1e-10)?.equal);

    // X T X is T-dagger up to a global phase
    let xtx = Circuit::with_gates(1, vec![
        Gate::single(GateKind::X, 0),
        Gate::single(GateKind::T, 0),
        Gate::single(GateKind::X, 0),
    ])?;
    let tdag = Circuit::with_gates(1, vec![Gate::single(GateKind::Tdag, 0)])?;
    let (a, b) = (phase_polynomial_of(&xtx)?, phase_polynomial_of(&tdag)?);
    println!("X T X vs T^dag: equal up to phase {}, global phases {} vs {} (pi/8 units)", equivalent(&xtx, &tdag, 1e-12)?.equal, a.global, b.global);
    Ok(())
}
