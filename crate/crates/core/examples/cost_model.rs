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

//! Spacetime cost against a lattice-surgery baseline.

use magic_circuits::fault::{lattice_surgery_comparison, CostModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = CostModel::default();
    println!("{:>3} {:>10} {:>12} {:>7}", "d", "ours", "baseline", "ratio");
    for d in [3, 5, 7, 11, 15, 21, 25] {
        let c = lattice_surgery_comparison(d, &model)?;
        println!("{:>3} {:>10} {:>12.0} {:>7.2}", d, c.ours, c.baseline, c.ratio);
    }
    Ok(())
}
