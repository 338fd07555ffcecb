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

//! Fault-tolerant CS preparation from twelve rotations on four qubits.

use magic_circuits::circuit::render_text;
use magic_circuits::compiler::CompileOptions;
use magic_circuits::fault::{enumerate_single_faults, SiteSet, Target};
use magic_circuits::protocols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cs = protocols::cs();
    let (report, circuit) = cs.compile(&CompileOptions::default())?;
    println!("{}", render_text(&circuit));
    println!("T depth {}, CNOT layers {:?}", report.t_depth, report.block_depths);
    let target = Target::new(cs.postselection(), cs.outputs.clone(), cs.ideal.clone());
    let singles = enumerate_single_faults(&circuit, &target, SiteSet::TSites)?;
    println!("single Z faults: {} detected, {} harmful of {}", singles.detected, singles.harmful, singles.len());
    Ok(())
}
