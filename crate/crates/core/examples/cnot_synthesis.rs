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

//! Synthesize a random parity matrix three ways and compare CNOT depth.

use magic_circuits::compiler::{cnot_synthesize, depth_optimal_synthesize, synthesize, Objective};
use magic_circuits::gf2::Gf2Matrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let u = Gf2Matrix::random_invertible(5, seed)?;
    println!("U = {:?}", u.to_rows());

    let greedy = cnot_synthesize(&u)?;
    println!("greedy: {} CNOTs, depth {}, ops {:?}", greedy.ops.len(), greedy.cnot_depth(), greedy.ops);
    assert_eq!(greedy.replay(), u.transpose());

    if let Some(exact) = depth_optimal_synthesize(&u)? {
        println!("layered search: {} CNOTs, depth {}", exact.ops.len(), exact.cnot_depth());
    }
    let best = synthesize(&u, Objective::CnotDepth)?;
    println!("chosen: depth {}, permutation sources {:?}", best.cnot_depth(), best.permutation_sources());
    Ok(())
}
