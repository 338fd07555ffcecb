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

//! 15-to-1 T distillation: compile, check the output, and show the error suppression.

use magic_circuits::compiler::CompileOptions;
use magic_circuits::fault::{enumerate_pair_faults, evaluate_faults, fault_sites, SiteSet, Target};
use magic_circuits::protocols;
use magic_circuits::semantics::{enumerate_branches, state_fidelity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t15 = protocols::t15();
    let (report, circuit) = t15.compile(&CompileOptions::default())?;
    println!("T depth {}, CNOT depth {} {:?}", report.t_depth, report.cnot_depth, report.block_depths);

    let branches = enumerate_branches(&circuit, &t15.postselection(), &[])?;
    let fid: f64 = branches.iter().map(|b| b.weight * state_fidelity(&b.state, &t15.ideal, &t15.outputs).unwrap_or(0.0)).sum();
    println!("noiseless output fidelity {fid:.12}");

    let target = Target::new(t15.postselection(), t15.outputs.clone(), t15.ideal.clone());
    let pairs = enumerate_pair_faults(&circuit, &target, SiteSet::TSites)?;
    println!("{} of {} Z pairs detected", pairs.detected, pairs.len());

    // Three faults can slip through.
    let sites = fault_sites(&circuit, SiteSet::TSites);
    let mut undetected = 0;
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            for k in j + 1..sites.len() {
                let e = evaluate_faults(&circuit, &target, &[sites[i], sites[j], sites[k]])?;
                undetected += usize::from(e.acceptance > 0.0);
            }
        }
    }
    println!("{undetected} undetected Z triples");
    Ok(())
}
