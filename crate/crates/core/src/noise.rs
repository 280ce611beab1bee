//! Simple error models: a coherent CNOT over-rotation and layer-wise
//! dephasing.
//!
//! The imperfect CNOT comes from an Ising-type realization,
//! `sqrt(i) H_2 e^{i Z Z (pi/4 + phi)} e^{-i Z_1 pi/4} e^{-i Z_2 pi/4} H_2`,
//! which reduces to the exact CNOT at `phi = 0`. Dephasing applies the
//! single-qubit phase-flip channel to every qubit after each circuit
//! layer, damping an off-diagonal density-matrix element by
//! `e^{-2 gamma dt}` per differing bit.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_PI_4;

use crate::ansatz::AnsatzSpec;
use crate::circuit::Circuit;
use crate::error::{SimError, SimResult};
use crate::gates::{Gate, Matrix4};
use crate::ground::GroundStateResult;
use crate::seeding::{derive_seed, rng_from_seed};
use crate::state::MixedState;

/// Noise-model knobs.
#[derive(Debug, Clone, Copy)]
pub struct NoiseConfig {
    /// Half-width of the uniform CNOT phase error (radians).
    pub h: f64,
    /// Dephasing strength per layer, `gamma * dt`.
    pub gamma_dt: f64,
    pub realizations: usize,
}

impl NoiseConfig {
    pub fn validate(&self) -> SimResult<()> {
        if self.h < 0.0 || self.gamma_dt < 0.0 {
            return Err(SimError::InvalidConfig(
                "noise strengths must be nonnegative".into(),
            ));
        }
        if self.realizations == 0 {
            return Err(SimError::InvalidConfig(
                "noise evaluation needs at least one realization".into(),
            ));
        }
        Ok(())
    }
}

/// The imperfect CNOT at phase error `phi` (control = first qubit).
pub fn noisy_cnot(phi: f64) -> Matrix4 {
    // diagonal part: e^{i Z1 Z2 (pi/4+phi)} e^{-i Z1 pi/4} e^{-i Z2 pi/4}
    let mut diag = [Complex64::ZERO; 4];
    for (idx, d) in diag.iter_mut().enumerate() {
        let z1 = if idx & 2 == 0 { 1.0 } else { -1.0 };
        let z2 = if idx & 1 == 0 { 1.0 } else { -1.0 };
        let angle = z1 * z2 * (FRAC_PI_4 + phi) - z1 * FRAC_PI_4 - z2 * FRAC_PI_4;
        *d = Complex64::from_polar(1.0, angle);
    }
    // H on the target qubit: I (x) H
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = [[Complex64::ZERO; 4]; 4];
    let sqrt_i = Complex64::from_polar(1.0, FRAC_PI_4);
    for r in 0..4 {
        for c in 0..4 {
            // (I(x)H) D (I(x)H): rows/cols split into control block
            if r & 2 != c & 2 {
                continue;
            }
            let mut acc = Complex64::ZERO;
            for k in 0..2 {
                let kk = (r & 2) | k;
                let h_rk = if (r & 1) == 1 && k == 1 { -s } else { s };
                let h_kc = if k == 1 && (c & 1) == 1 { -s } else { s };
                acc += h_rk * diag[kk] * h_kc;
            }
            out[r][c] = sqrt_i * acc;
        }
    }
    out
}

/// Replace every explicit CNOT by a freshly drawn noisy one.
///
/// The circuit must already be in decomposed form (no entangler
/// descriptors), so the number of injected errors equals the CNOT budget.
pub fn sample_noisy_circuit(
    circuit: &Circuit,
    h: f64,
    rng: &mut impl Rng,
) -> SimResult<Circuit> {
    if h < 0.0 {
        return Err(SimError::InvalidConfig(
            "noise half-width must be nonnegative".into(),
        ));
    }
    if circuit
        .gates()
        .iter()
        .any(|g| matches!(g, Gate::Entangler { .. }))
    {
        return Err(SimError::NotDecomposed);
    }
    let mut out = Circuit::new(circuit.n_qubits());
    for gate in circuit.gates() {
        match gate {
            Gate::Cnot { control, target } => {
                let phi = rng.gen_range(-h..=h);
                out.push(Gate::FixedUnitary2Q {
                    a: *control,
                    b: *target,
                    matrix: Box::new(noisy_cnot(phi)),
                    cnot_cost: 1,
                })?;
            }
            g => out.push(g.clone())?,
        }
    }
    Ok(out)
}

/// Mean and population spread of a Monte Carlo fidelity estimate.
#[derive(Debug, Clone, Copy)]
pub struct NoiseStats {
    pub mean: f64,
    pub std: f64,
}

/// Average fidelity of the optimized circuit under random CNOT phase
/// errors, over seeded independent realizations.
pub fn avg_noisy_fidelity(
    spec: &AnsatzSpec,
    theta: &[f64],
    h: f64,
    realizations: usize,
    master_seed: u64,
    target: &GroundStateResult,
) -> SimResult<NoiseStats> {
    if realizations == 0 {
        return Err(SimError::InvalidConfig(
            "noise evaluation needs at least one realization".into(),
        ));
    }
    let template = spec.bind(theta)?.decompose();
    let mut fids = Vec::with_capacity(realizations);
    for r in 0..realizations {
        let mut rng = rng_from_seed(derive_seed(master_seed, r as u64));
        let noisy = sample_noisy_circuit(&template, h, &mut rng)?;
        let mut psi = spec.initial_state();
        psi.apply_circuit(&noisy)?;
        fids.push(target.fidelity_of(&psi)?);
    }
    let mean = fids.iter().sum::<f64>() / realizations as f64;
    let var = fids.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / realizations as f64;
    Ok(NoiseStats {
        mean,
        std: var.sqrt(),
    })
}

/// Phase-flip channel on every qubit: `rho_ij *= e^{-2 gamma dt d(i,j)}`
/// with `d` the Hamming distance.
pub fn dephasing_channel(rho: &mut MixedState, gamma_dt: f64) -> SimResult<()> {
    if gamma_dt < 0.0 {
        return Err(SimError::InvalidConfig(
            "dephasing strength must be nonnegative".into(),
        ));
    }
    if gamma_dt == 0.0 {
        return Ok(());
    }
    let n = rho.n_qubits();
    let dim = rho.dim();
    let factors: Vec<f64> = (0..=n)
        .map(|d| (-2.0 * gamma_dt * d as f64).exp())
        .collect();
    let mat = rho.matrix_mut();
    for r in 0..dim {
        for c in 0..dim {
            let d = (r ^ c).count_ones() as usize;
            if d > 0 {
                mat[r * dim + c] *= factors[d];
            }
        }
    }
    Ok(())
}

/// Density-matrix limit for the layered-dephasing evaluation.
pub const DENSITY_MAX_QUBITS: usize = 12;

/// Evolve `|psi0><psi0|` through the bound circuit, dephasing after every
/// layer.
pub fn noisy_layered_output(
    spec: &AnsatzSpec,
    theta: &[f64],
    gamma_dt: f64,
) -> SimResult<MixedState> {
    if spec.n_qubits() > DENSITY_MAX_QUBITS {
        return Err(SimError::SizeLimit {
            what: "density-matrix evolution",
            n: spec.n_qubits(),
            limit: DENSITY_MAX_QUBITS,
        });
    }
    let circuit = spec.bind(theta)?;
    let mut rho = MixedState::from_pure(&spec.initial_state());
    for layer in circuit.layers() {
        for gate in layer {
            rho.apply_gate(gate)?;
        }
        dephasing_channel(&mut rho, gamma_dt)?;
    }
    Ok(rho)
}
