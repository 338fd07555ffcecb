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

//! Compile the bundled CCZ preparation and print the circuit.

use magic_circuits::circuit::render_text;
use magic_circuits::compiler::CompileOptions;
use magic_circuits::protocols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ccz = protocols::ccz();
    let (report, circuit) = ccz.compile(&CompileOptions::default())?;
    println!("{}", render_text(&circuit));
    println!(
        "T depth {}, T count {}, CNOT depth {} {:?}, CNOT count {}",
        report.t_depth, report.t_count, report.cnot_depth, report.block_depths, report.cnot_count
    );
    println!("{} of {} orderings searched exhaustively: {}", report.orderings_tried, ccz.program.len(), report.exhaustive);
    for (i, u) in report.partition.blocks.iter().enumerate() {
        println!("block {i}: {:?}", u.to_rows());
    }
    Ok(())
}
