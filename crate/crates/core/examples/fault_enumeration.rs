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

//! Exhaustive single and pair Z-fault enumeration on the T sites.

use magic_circuits::compiler::CompileOptions;
use magic_circuits::fault::{enumerate_pair_faults, enumerate_single_faults, FaultClass, SiteSet, Target};
use magic_circuits::protocols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [protocols::ccz(), protocols::cs(), protocols::t15()] {
        let (_, circuit) = p.compile(&CompileOptions::default())?;
        let target = Target::new(p.postselection(), p.outputs.clone(), p.ideal.clone());
        let singles = enumerate_single_faults(&circuit, &target, SiteSet::TSites)?;
        let pairs = enumerate_pair_faults(&circuit, &target, SiteSet::TSites)?;
        println!(
            "{:>4}: singles {} detected / {} harmful of {}; pairs {} detected / {} harmful of {}",
            p.name,
            singles.detected,
            singles.harmful,
            singles.len(),
            pairs.detected,
            pairs.harmful,
            pairs.len()
        );
        if let Some(e) = pairs.entries.iter().find(|e| e.class == FaultClass::Harmful) {
            println!("      e.g. {:?} -> infidelity {:.3}", e.faults.iter().map(|f| f.gate_index).collect::<Vec<_>>(), e.infidelity.unwrap_or(0.0));
        }
    }
    Ok(())
}
