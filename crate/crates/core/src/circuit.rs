//! Ordered gate lists with optional layer boundaries.

use crate::error::{SimError, SimResult};
use crate::gates::{decompose_entangler, Gate};
use crate::state::{MixedState, PureState};

/// An ordered list of gates on `n_qubits` sites.
///
/// `layer_marks[i]` is the one-past-the-end gate index of layer `i`; gates
/// after the last mark form a final implicit layer.
#[derive(Debug, Clone, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    layer_marks: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            layer_marks: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> SimResult<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Close the current layer at the present gate count.
    pub fn mark_layer(&mut self) -> SimResult<()> {
        let at = self.gates.len();
        if let Some(&last) = self.layer_marks.last() {
            if at <= last {
                return Err(SimError::InvalidLayerMarks);
            }
        } else if at == 0 {
            return Err(SimError::InvalidLayerMarks);
        }
        self.layer_marks.push(at);
        Ok(())
    }

    pub fn layer_marks(&self) -> &[usize] {
        &self.layer_marks
    }

    /// Gate slices per layer; the whole circuit if no marks were set.
    pub fn layers(&self) -> Vec<&[Gate]> {
        if self.layer_marks.is_empty() {
            return vec![&self.gates[..]];
        }
        let mut out = Vec::with_capacity(self.layer_marks.len() + 1);
        let mut start = 0;
        for &m in &self.layer_marks {
            out.push(&self.gates[start..m]);
            start = m;
        }
        if start < self.gates.len() {
            out.push(&self.gates[start..]);
        }
        out
    }

    /// Total CNOT budget: 1 per CNOT, 3 per entangler, declared cost for
    /// fixed two-qubit unitaries.
    pub fn cnot_count(&self) -> u64 {
        self.gates.iter().map(Gate::cnot_cost).sum()
    }

    /// Expand every entangler into its 3-CNOT realization, preserving layer
    /// boundaries.
    pub fn decompose(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        let mut marks = self.layer_marks.iter().copied().peekable();
        for (i, gate) in self.gates.iter().enumerate() {
            if marks.peek() == Some(&i) {
                marks.next();
                out.layer_marks.push(out.gates.len());
            }
            match gate {
                Gate::Entangler { a, b, theta } => {
                    out.gates
                        .extend(decompose_entangler(*a, *b, theta[0], theta[1], theta[2]));
                }
                g => out.gates.push(g.clone()),
            }
        }
        if marks.peek().is_some() {
            out.layer_marks.push(out.gates.len());
        }
        out
    }
}

impl PureState {
    /// Apply all gates of `circuit` in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> SimResult<()> {
        if circuit.n_qubits() != self.n_qubits() {
            return Err(SimError::DimensionMismatch {
                left: 1 << circuit.n_qubits(),
                right: self.dim(),
            });
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }
}

impl MixedState {
    /// Apply all gates of `circuit` as `rho -> U rho U^dagger`.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> SimResult<()> {
        if circuit.n_qubits() != self.n_qubits() {
            return Err(SimError::DimensionMismatch {
                left: 1 << circuit.n_qubits(),
                right: self.dim(),
            });
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }
}
