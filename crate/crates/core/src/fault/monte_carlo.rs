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

//! Monte Carlo estimate of the postselected output infidelity.
//!
//! Each shot samples which noise events fire (geometric skipping, so quiet
//! shots cost almost nothing). The exact acceptance probability and
//! conditional infidelity of a fault pattern come from branch enumeration
//! and are cached; acceptance is then sampled and the conditional
//! infidelity averaged over accepted shots.

use std::collections::HashMap;
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::outcome;
use super::{FaultError, NoiseModel, RoundSchedule, Target};
use crate::semantics::{Insertion, Pauli};

const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    /// Infidelity divided by `p_L`, meaningful when `p_T` is zero.
    pub per_p_l: Option<f64>,
    pub per_p_l_stderr: Option<f64>,
    /// Infidelity divided by `p_T^2`, meaningful when `p_L` is zero.
    pub per_p_t_squared: Option<f64>,
    pub per_p_t_squared_stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub noise: NoiseModel,
    pub shots: u64,
    pub seed: u64,
    pub accepted: u64,
    pub acceptance: f64,
    /// Mean infidelity of accepted shots; absent when nothing was accepted.
    pub infidelity: Option<f64>,
    pub stderr: Option<f64>,
    pub undefined: bool,
    pub coefficients: Coefficients,
    pub distinct_fault_patterns: usize,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    shots: u64,
    accepted: u64,
    sum: f64,
    sum_sq: f64,
}

type Outcome = (f64, Option<f64>);

struct Sampler<'a> {
    prep_sites: Vec<(usize, usize)>,
    noise_sites: Vec<(usize, usize)>,
    circuit: crate::circuit::Circuit,
    target: &'a Target,
    nm: NoiseModel,
    cache: RwLock<HashMap<Vec<Insertion>, Outcome>>,
}

impl Sampler<'_> {
    fn outcome(&self, pattern: &[Insertion]) -> Result<Outcome, FaultError> {
        if pattern.is_empty() {
            return Ok((1.0, Some(0.0)));
        }
        if let Some(&o) = self.cache.read().expect("cache lock").get(pattern) {
            return Ok(o);
        }
        let o = outcome(&self.circuit, self.target, pattern)?;
        self.cache.write().expect("cache lock").insert(pattern.to_vec(), o);
        Ok(o)
    }

    fn run_chunk(&self, seed: u64, chunk: u64, shots: u64) -> Result<Tally, FaultError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let geo = |p: f64| if p > 0.0 { Geometric::new(p).ok() } else { None };
        let (geo_t, geo_l) = (geo(self.nm.p_t), geo(self.nm.p_l));
        let mut tally = Tally { shots, ..Tally::default() };
        let mut pattern = Vec::new();
        for _ in 0..shots {
            pattern.clear();
            if let Some(g) = &geo_t {
                let mut i = g.sample(&mut rng);
                while (i as usize) < self.prep_sites.len() {
                    let (before, qubit) = self.prep_sites[i as usize];
                    pattern.push(Insertion { before, qubit, pauli: Pauli::Z });
                    i += 1 + g.sample(&mut rng);
                }
            }
            if let Some(g) = &geo_l {
                let mut i = g.sample(&mut rng);
                while (i as usize) < self.noise_sites.len() {
                    let (before, qubit) = self.noise_sites[i as usize];
                    let pauli = Pauli::ALL[rng.random_range(0..3)];
                    pattern.push(Insertion { before, qubit, pauli });
                    i += 1 + g.sample(&mut rng);
                }
            }
            pattern.sort_unstable();
            let (acc, infid) = self.outcome(&pattern)?;
            if rng.random::<f64>() < acc {
                let x = infid.unwrap_or(0.0);
                tally.accepted += 1;
                tally.sum += x;
                tally.sum_sq += x * x;
            }
        }
        Ok(tally)
    }
}

/// Samples `shots` noisy runs of the schedule and estimates the output
/// infidelity after postselection. Deterministic for a given seed: shots
/// are split into fixed chunks with independent streams and reduced in order.
pub fn monte_carlo_infidelity(
    sched: &RoundSchedule,
    target: &Target,
    nm: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<AnalysisReport, FaultError> {
    if shots == 0 {
        return Err(FaultError::Domain("shots must be at least 1".into()));
    }
    let circuit = sched.circuit();
    let prep_sites = circuit
        .gates
        .iter()
        .enumerate()
        .filter(|(_, g)| matches!(g.kind, crate::circuit::GateKind::PrepT | crate::circuit::GateKind::PrepTdag))
        .map(|(i, g)| (i + 1, g.qubits[0]))
        .collect();
    let ends = sched.round_ends();
    let noise_sites = sched
        .rounds
        .iter()
        .zip(&ends)
        .flat_map(|(r, &end)| r.noisy_qubits.iter().map(move |&q| (end, q)))
        .collect();
    let sampler = Sampler { prep_sites, noise_sites, circuit, target, nm: *nm, cache: RwLock::default() };
    let chunks = shots.div_ceil(CHUNK);
    let tallies = (0..chunks)
        .into_par_iter()
        .map(|k| sampler.run_chunk(seed, k, CHUNK.min(shots - k * CHUNK)))
        .collect::<Result<Vec<_>, _>>()?;
    let total = tallies.iter().fold(Tally::default(), |a, t| Tally {
        shots: a.shots + t.shots,
        accepted: a.accepted + t.accepted,
        sum: a.sum + t.sum,
        sum_sq: a.sum_sq + t.sum_sq,
    });
    let acc_n = total.accepted as f64;
    let infidelity = (total.accepted > 0).then(|| total.sum / acc_n);
    let stderr = (total.accepted > 1).then(|| {
        let mean = total.sum / acc_n;
        let var = ((total.sum_sq - acc_n * mean * mean) / (acc_n - 1.0)).max(0.0);
        (var / acc_n).sqrt()
    });
    let scale = |x: Option<f64>, by: f64| if by > 0.0 { x.map(|v| v / by) } else { None };
    let coefficients = Coefficients {
        per_p_l: scale(infidelity, nm.p_l),
        per_p_l_stderr: scale(stderr, nm.p_l),
        per_p_t_squared: scale(infidelity, nm.p_t * nm.p_t),
        per_p_t_squared_stderr: scale(stderr, nm.p_t * nm.p_t),
    };
    let distinct_fault_patterns = sampler.cache.read().expect("cache lock").len();
    Ok(AnalysisReport {
        noise: *nm,
        shots,
        seed,
        accepted: total.accepted,
        acceptance: acc_n / shots as f64,
        infidelity,
        stderr,
        undefined: total.accepted == 0,
        coefficients,
        distinct_fault_patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::schedule::ccz_schedule;

    fn ccz() -> (RoundSchedule, Target) {
        let s = ccz_schedule(1);
        let t = Target::infer(&s.circuit()).unwrap();
        (s, t)
    }

    #[test]
    fn noiseless_runs_are_perfect() {
        let (s, t) = ccz();
        let r = monte_carlo_infidelity(&s, &t, &NoiseModel::new(0.0, 0.0, 1).unwrap(), 1000, 1).unwrap();
        assert_eq!(r.accepted, 1000);
        assert_eq!(r.infidelity, Some(0.0));
    }

    #[test]
    fn seeded_runs_repeat() {
        let (s, t) = ccz();
        let nm = NoiseModel::new(0.01, 0.02, 1).unwrap();
        let a = monte_carlo_infidelity(&s, &t, &nm, 70_000, 5).unwrap();
        let b = monte_carlo_infidelity(&s, &t, &nm, 70_000, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.acceptance < 1.0);
    }

    #[test]
    fn acceptance_falls_with_p_t() {
        let (s, t) = ccz();
        let mut last = 1.0;
        for p_t in [0.0, 0.01, 0.05, 0.1, 0.2] {
            let nm = NoiseModel::new(0.0, p_t, 1).unwrap();
            let r = monte_carlo_infidelity(&s, &t, &nm, 100_000, 3).unwrap();
            assert!(r.acceptance <= last);
            last = r.acceptance;
        }
    }

    #[test]
    fn zero_shots_rejected() {
        let (s, t) = ccz();
        assert!(monte_carlo_infidelity(&s, &t, &NoiseModel::new(0.0, 0.0, 1).unwrap(), 0, 0).is_err());
    }
}
