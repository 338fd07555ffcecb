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

//! Effective channel of a T gadget fed by a Pauli-noisy `|T>`.
//!
//! Up to phase, `X|T> = S^dag|T>`, `Y|T> = S|T>` and `Z|T> = Z|T>`, so
//! Pauli noise on a `|T>` state is an ideal `|T>` followed by a mixture of
//! `S^dag`, `S` and `Z`. Through an injection gadget the same holds in the
//! uncorrected branch; the S-corrected branch swaps the roles of X and Y.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::FaultError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TGadgetChannel {
    pub p_i: f64,
    pub p_s: f64,
    pub p_sdag: f64,
    pub p_z: f64,
}

/// Row-major 4x4 superoperator acting on row-major vectorized 2x2 density matrices.
pub type Superoperator = [[Complex64; 4]; 4];

pub fn t_gadget_channel(px: f64, py: f64, pz: f64) -> Result<TGadgetChannel, FaultError> {
    for (name, p) in [("pX", px), ("pY", py), ("pZ", pz)] {
        if !(p >= 0.0) {
            return Err(FaultError::Domain(format!("{name} = {p} must be non-negative")));
        }
    }
    let p_i = 1.0 - px - py - pz;
    if p_i < -1e-12 {
        return Err(FaultError::Domain(format!("pX + pY + pZ = {} exceeds 1", px + py + pz)));
    }
    Ok(TGadgetChannel { p_i: p_i.max(0.0), p_s: py, p_sdag: px, p_z: pz })
}

fn diag(phase: Complex64) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::new(1.0, 0.0), z], [z, phase]]
}

impl TGadgetChannel {
    pub fn is_normalized(&self) -> bool {
        (self.p_i + self.p_s + self.p_sdag + self.p_z - 1.0).abs() < 1e-12
            && [self.p_i, self.p_s, self.p_sdag, self.p_z].iter().all(|&p| p >= 0.0)
    }

    /// `sum_k p_k K (x) conj(K)` over `K` in `{I, S, S^dag, Z}`.
    pub fn superoperator(&self) -> Superoperator {
        let i = Complex64::i();
        let kraus = [
            (self.p_i, diag(Complex64::new(1.0, 0.0))),
            (self.p_s, diag(i)),
            (self.p_sdag, diag(-i)),
            (self.p_z, diag(Complex64::new(-1.0, 0.0))),
        ];
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (p, k) in kraus {
            for (a, b, c, d) in (0..16).map(|x| (x >> 3 & 1, x >> 2 & 1, x >> 1 & 1, x & 1)) {
                m[2 * a + b][2 * c + d] += k[a][c] * k[b][d].conj() * p;
            }
        }
        m
    }

    /// Equal S and S-dagger weights act as identity plus Z at that weight.
    pub fn symmetrized(&self) -> Option<TGadgetChannel> {
        if (self.p_s - self.p_sdag).abs() > 1e-15 {
            return None;
        }
        Some(TGadgetChannel {
            p_i: self.p_i + self.p_s,
            p_s: 0.0,
            p_sdag: 0.0,
            p_z: self.p_z + self.p_s,
        })
    }
}

/// Largest entrywise difference of two superoperators.
pub fn superoperator_distance(a: &Superoperator, b: &Superoperator) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate, GateKind};
    use crate::semantics::{enumerate_branches, state_fidelity, DenseState, Insertion, Pauli};

    #[test]
    fn mapping_examples() {
        let id = t_gadget_channel(0.0, 0.0, 0.0).unwrap();
        assert_eq!(id.p_i, 1.0);
        let c = t_gadget_channel(0.01, 0.02, 0.03).unwrap();
        assert_eq!((c.p_sdag, c.p_s, c.p_z), (0.01, 0.02, 0.03));
        assert!(c.is_normalized());
        assert!(t_gadget_channel(-0.1, 0.0, 0.0).is_err());
        assert!(t_gadget_channel(0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn symmetric_s_noise_is_z_noise() {
        for q in [0.0, 0.01, 0.1, 0.25] {
            let c = TGadgetChannel { p_i: 1.0 - 2.0 * q - 0.05, p_s: q, p_sdag: q, p_z: 0.05 };
            let z = c.symmetrized().unwrap();
            assert!(superoperator_distance(&c.superoperator(), &z.superoperator()) < 1e-12);
        }
    }

    #[test]
    fn paulis_on_t_state_are_phase_gates() {
        let t_state = || {
            let mut s = DenseState::zero(1).unwrap();
            s.apply_h(0);
            s.apply_phase(0, 1);
            s
        };
        for (pauli, k) in [(Pauli::X, 6u8), (Pauli::Y, 2), (Pauli::Z, 4)] {
            let mut noisy = t_state();
            noisy.apply_pauli(0, pauli);
            let mut want = t_state();
            want.apply_phase(0, k);
            assert!((want.inner(&noisy).norm() - 1.0).abs() < 1e-12, "{pauli:?}");
        }
    }

    /// Simulating the gadget with a Pauli on the resource state reproduces the
    /// channel's Kraus operator in the uncorrected branch and its conjugate otherwise.
    #[test]
    fn resource_paulis_map_to_channel_terms() {
        let mut c = Circuit::new(2);
        c.push(Gate::single(GateKind::PrepPlus, 0));
        c.push(Gate::single(GateKind::PrepT, 1));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::measure(GateKind::MeasZ, 1, "m"));
        c.push(Gate::cond_s(0, "m"));
        let ch = t_gadget_channel(0.1, 0.2, 0.3).unwrap();
        for (pauli, phase, weight) in [(Pauli::X, 6u8, ch.p_sdag), (Pauli::Y, 2, ch.p_s), (Pauli::Z, 4, ch.p_z)] {
            let ins = [Insertion { before: 2, qubit: 1, pauli }];
            let branches = enumerate_branches(&c, &Default::default(), &ins).unwrap();
            assert_eq!(branches.len(), 2);
            for b in branches {
                let m = b.records["m"];
                let k = if m == 0 || pauli == Pauli::Z { phase } else { 8 - phase };
                let mut want = DenseState::zero(1).unwrap();
                want.apply_h(0);
                want.apply_phase(0, 1);
                want.apply_phase(0, k);
                let f = state_fidelity(&b.state, &want, &[0]).unwrap();
                assert!((f - 1.0).abs() < 1e-12, "{pauli:?} m={m}");
            }
            assert!(weight > 0.0);
        }
    }
}
