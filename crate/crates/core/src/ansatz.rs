//! The variational circuit template: per layer one phase gate per site,
//! then entanglers on odd bonds, then on even bonds, mirroring the
//! first-order Trotter geometry.
//!
//! Mirror tying binds the phase angles at sites `k` and `N-k+1` (1-based)
//! to one parameter with opposite signs, giving `L = (3N/2 - 1) M`
//! parameters; untied circuits carry `L = (2N - 1) M`. Entanglers take
//! `theta_alpha = J_alpha * theta` so one parameter per bond serves the
//! anisotropic chain as well.

use crate::circuit::Circuit;
use crate::error::{SimError, SimResult};
use crate::gates::Gate;
use crate::hamiltonian::{HamiltonianSpec, Model};
use crate::state::PureState;

/// Where a bound angle sits in the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    Phase { site: usize },
    Entangler { left: usize },
}

/// One physical gate slot: which parameter feeds it and with which sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSlot {
    pub kind: SlotKind,
    pub param: usize,
    pub sign: f64,
}

/// A parameterized circuit family bound to a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSpec {
    model: HamiltonianSpec,
    layers: usize,
    mirror_tied: bool,
    slots: Vec<ParamSlot>,
}

impl AnsatzSpec {
    pub fn new(model: HamiltonianSpec, layers: usize, mirror_tied: bool) -> SimResult<Self> {
        if layers == 0 {
            return Err(SimError::InvalidConfig(
                "the ansatz needs at least one layer".into(),
            ));
        }
        if mirror_tied && matches!(model.model(), Model::Kondo { .. }) {
            return Err(SimError::InvalidConfig(
                "the impurity chain is not mirror symmetric; phase angles cannot be tied".into(),
            ));
        }
        let slots = build_slots(model.n_qubits(), layers, mirror_tied);
        Ok(Self {
            model,
            layers,
            mirror_tied,
            slots,
        })
    }

    pub fn model(&self) -> &HamiltonianSpec {
        &self.model
    }

    pub fn n_qubits(&self) -> usize {
        self.model.n_qubits()
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn mirror_tied(&self) -> bool {
        self.mirror_tied
    }

    /// Free parameters per layer.
    pub fn params_per_layer(&self) -> usize {
        params_per_layer(self.n_qubits(), self.mirror_tied)
    }

    /// Total parameter count `L`.
    pub fn param_count(&self) -> usize {
        self.layers * self.params_per_layer()
    }

    /// Physical gate slots in circuit order.
    pub fn slots(&self) -> &[ParamSlot] {
        &self.slots
    }

    /// Whether the bound circuit conserves total `S_z` for any parameters.
    pub fn sz_conserving(&self) -> bool {
        self.model.conserves_sz()
    }

    /// Entangler angle scale `(jx, jy, jz)` per unit parameter.
    pub fn entangler_scale(&self) -> [f64; 3] {
        match self.model.model() {
            Model::Xyz { jx, jy, jz } => [jx, jy, jz],
            _ => [1.0, 1.0, 1.0],
        }
    }

    /// The circuit's fixed input state.
    pub fn initial_state(&self) -> PureState {
        PureState::singlet_product(self.n_qubits()).expect("even qubit count enforced")
    }

    /// The gate a slot binds to under `theta`.
    pub(crate) fn slot_gate(&self, slot: &ParamSlot, theta: &[f64]) -> Gate {
        let value = slot.sign * theta[slot.param];
        match slot.kind {
            SlotKind::Phase { site } => Gate::Phase {
                qubit: site,
                angle: value,
            },
            SlotKind::Entangler { left } => {
                let scale = self.entangler_scale();
                Gate::Entangler {
                    a: left,
                    b: left + 1,
                    theta: [scale[0] * value, scale[1] * value, scale[2] * value],
                }
            }
        }
    }

    /// Bind parameter values, producing a circuit with one mark per layer.
    pub fn bind(&self, theta: &[f64]) -> SimResult<Circuit> {
        if theta.len() != self.param_count() {
            return Err(SimError::ParamLength {
                expected: self.param_count(),
                got: theta.len(),
            });
        }
        let mut circuit = Circuit::new(self.n_qubits());
        let per_layer_slots = self.slots.len() / self.layers;
        for (i, slot) in self.slots.iter().enumerate() {
            circuit.push(self.slot_gate(slot, theta))?;
            if (i + 1) % per_layer_slots == 0 {
                circuit.mark_layer()?;
            }
        }
        Ok(circuit)
    }
}

pub(crate) fn params_per_layer(n: usize, mirror_tied: bool) -> usize {
    if mirror_tied {
        n / 2 + (n - 1)
    } else {
        n + (n - 1)
    }
}

fn build_slots(n: usize, layers: usize, mirror_tied: bool) -> Vec<ParamSlot> {
    let per_layer = params_per_layer(n, mirror_tied);
    let phase_params = if mirror_tied { n / 2 } else { n };
    let mut slots = Vec::with_capacity(layers * (n + n - 1));
    for layer in 0..layers {
        let base = layer * per_layer;
        for site in 0..n {
            let (param, sign) = if mirror_tied {
                // 1-based sites k and N-k+1 share a parameter with opposite
                // signs; the left partner carries +.
                if site < n / 2 {
                    (base + site, 1.0)
                } else {
                    (base + (n - 1 - site), -1.0)
                }
            } else {
                (base + site, 1.0)
            };
            slots.push(ParamSlot {
                kind: SlotKind::Phase { site },
                param,
                sign,
            });
        }
        let mut bond_param = base + phase_params;
        for parity in [0usize, 1] {
            for left in (parity..n - 1).step_by(2) {
                slots.push(ParamSlot {
                    kind: SlotKind::Entangler { left },
                    param: bond_param,
                    sign: 1.0,
                });
                bond_param += 1;
            }
        }
    }
    slots
}

/// Parameter index of the entangler on bond `left` in `layer`.
pub(crate) fn bond_param_index(n: usize, mirror_tied: bool, layer: usize, left: usize) -> usize {
    let base = layer * params_per_layer(n, mirror_tied);
    let phase_params = if mirror_tied { n / 2 } else { n };
    // odd bonds (even 0-based left) come first, then even bonds
    let offset = if left % 2 == 0 {
        left / 2
    } else {
        n / 2 + (left - 1) / 2
    };
    base + phase_params + offset
}

/// Parameter index of the phase at `site` in `layer` (the tied partner's
/// index for right-half sites).
pub(crate) fn phase_param_index(n: usize, mirror_tied: bool, layer: usize, site: usize) -> usize {
    let base = layer * params_per_layer(n, mirror_tied);
    if mirror_tied && site >= n / 2 {
        base + (n - 1 - site)
    } else {
        base + site
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis(n: usize) -> HamiltonianSpec {
        HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, n).unwrap()
    }

    #[test]
    fn parameter_counts_follow_the_tying_rule() {
        let a = AnsatzSpec::new(heis(4), 2, true).unwrap();
        assert_eq!(a.param_count(), 10);
        let b = AnsatzSpec::new(heis(20), 6, true).unwrap();
        assert_eq!(b.param_count(), 174);
        let kondo = HamiltonianSpec::new(
            Model::Kondo {
                j: 1.0,
                j_prime: 0.5,
            },
            10,
        )
        .unwrap();
        let c = AnsatzSpec::new(kondo, 4, false).unwrap();
        assert_eq!(c.param_count(), 76);
    }

    #[test]
    fn kondo_cannot_be_mirror_tied() {
        let kondo = HamiltonianSpec::new(
            Model::Kondo {
                j: 1.0,
                j_prime: 0.5,
            },
            4,
        )
        .unwrap();
        assert!(AnsatzSpec::new(kondo, 1, true).is_err());
    }

    #[test]
    fn tied_phases_bind_with_opposite_signs() {
        let a = AnsatzSpec::new(heis(4), 1, true).unwrap();
        let theta: Vec<f64> = (0..a.param_count()).map(|i| 0.1 * (i + 1) as f64).collect();
        let circuit = a.bind(&theta).unwrap();
        let phases: Vec<(usize, f64)> = circuit
            .gates()
            .iter()
            .filter_map(|g| match g {
                Gate::Phase { qubit, angle } => Some((*qubit, *angle)),
                _ => None,
            })
            .collect();
        assert_eq!(phases.len(), 4);
        for k in 0..2 {
            let left = phases.iter().find(|(q, _)| *q == k).unwrap().1;
            let right = phases.iter().find(|(q, _)| *q == 3 - k).unwrap().1;
            assert_eq!(left, -right);
            assert_eq!(left, theta[k]);
        }
    }

    #[test]
    fn zero_parameters_bind_to_the_identity_circuit() {
        let a = AnsatzSpec::new(heis(4), 2, true).unwrap();
        let circuit = a.bind(&vec![0.0; 10]).unwrap();
        let mut psi = a.initial_state();
        let before = psi.clone();
        psi.apply_circuit(&circuit).unwrap();
        assert!(psi.fidelity(&before).unwrap() > 1.0 - 1e-12);
        assert_eq!(circuit.layers().len(), 2);
        // VQE CNOT budget: 3 (N-1) M
        assert_eq!(circuit.cnot_count(), 18);
    }

    #[test]
    fn every_slot_maps_to_exactly_one_parameter() {
        let a = AnsatzSpec::new(heis(6), 3, true).unwrap();
        assert_eq!(a.slots().len(), 3 * (6 + 5));
        for slot in a.slots() {
            assert!(slot.param < a.param_count());
        }
        // every parameter is referenced at least once
        let mut seen = vec![false; a.param_count()];
        for slot in a.slots() {
            seen[slot.param] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn bond_and_phase_index_helpers_agree_with_slots() {
        let n = 8;
        let a = AnsatzSpec::new(heis(n), 2, true).unwrap();
        for (i, slot) in a.slots().iter().enumerate() {
            let layer = i / (n + n - 1);
            match slot.kind {
                SlotKind::Phase { site } => {
                    assert_eq!(slot.param, phase_param_index(n, true, layer, site));
                }
                SlotKind::Entangler { left } => {
                    assert_eq!(slot.param, bond_param_index(n, true, layer, left));
                }
            }
        }
    }
}
