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

//! Monte Carlo infidelity of the CCZ preparation with explicit T gadgets.

use magic_circuits::fault::{bundled_impl_schedule, first_order_oracle, monte_carlo_infidelity, ImplOptions, NoiseModel, Target};
use magic_circuits::protocols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let shots = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000u64);
    for t_decode in [0, 1, 2] {
        let sched = bundled_impl_schedule(&protocols::ccz(), &ImplOptions { t_decode, ..Default::default() })?;
        let target = Target::infer(&sched.circuit())?;
        let exact = first_order_oracle(&sched, &target)?;
        println!("t_decode {t_decode}: {} rounds, exact p_L coefficient {:.4}", sched.rounds.len(), exact.coefficient);
    }

    let sched = bundled_impl_schedule(&protocols::ccz(), &ImplOptions::default())?;
    let target = Target::infer(&sched.circuit())?;
    println!("{:>8} {:>5} {:>12} {:>10} {:>10}", "p_L", "r", "infidelity", "stderr", "accepted");
    for p_l in [1e-4, 3e-4, 1e-3] {
        for r in [0.0, 1.0, 10.0] {
            let nm = NoiseModel::from_ratio(p_l, r, 1)?;
            let rep = monte_carlo_infidelity(&sched, &target, &nm, shots, 1)?;
            println!(
                "{p_l:>8.0e} {r:>5} {:>12.4e} {:>10.1e} {:>10.6}",
                rep.infidelity.unwrap_or(f64::NAN),
                rep.stderr.unwrap_or(f64::NAN),
                rep.acceptance
            );
        }
    }
    Ok(())
}
