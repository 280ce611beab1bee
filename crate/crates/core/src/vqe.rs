//! Variational ground-state search: energy, exact adjoint gradients, the
//! Adam/amsgrad optimizer, the optimization loop, and the minimal-depth
//! search under the 50L-iteration success rule.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzSpec, SlotKind};
use crate::error::{SimError, SimResult};
use crate::ground::GroundStateResult;
use crate::hamiltonian::HamiltonianSpec;
use crate::state::PureState;
use crate::strategies::{run_strategy_sample, SampleBudget, StrategyKind};

/// Adam hyperparameters; defaults are alpha 0.01, beta1 0.9, beta2 0.999,
/// epsilon 1e-8.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AdamHyper {
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamHyper {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Optimizer state for Adam with the amsgrad max accumulator.
#[derive(Debug, Clone)]
pub struct AdamState {
    step: u64,
    m: Vec<f64>,
    v: Vec<f64>,
    v_max: Vec<f64>,
    hyper: AdamHyper,
}

impl AdamState {
    pub fn new(len: usize, hyper: AdamHyper) -> Self {
        Self {
            step: 0,
            m: vec![0.0; len],
            v: vec![0.0; len],
            v_max: vec![0.0; len],
            hyper,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn v_max(&self) -> &[f64] {
        &self.v_max
    }

    /// One update: bias-corrected moments, amsgrad max on the corrected
    /// second moment, then `theta -= alpha * m_hat / (sqrt(v_max) + eps)`.
    pub fn step(&mut self, theta: &mut [f64], grad: &[f64]) -> SimResult<()> {
        if theta.len() != self.m.len() || grad.len() != self.m.len() {
            return Err(SimError::ParamLength {
                expected: self.m.len(),
                got: grad.len(),
            });
        }
        self.step += 1;
        let h = self.hyper;
        let bc1 = 1.0 - h.beta1.powi(self.step as i32);
        let bc2 = 1.0 - h.beta2.powi(self.step as i32);
        for i in 0..theta.len() {
            self.m[i] = h.beta1 * self.m[i] + (1.0 - h.beta1) * grad[i];
            self.v[i] = h.beta2 * self.v[i] + (1.0 - h.beta2) * grad[i] * grad[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            if v_hat > self.v_max[i] {
                self.v_max[i] = v_hat;
            }
            theta[i] -= h.alpha * m_hat / (self.v_max[i].sqrt() + h.epsilon);
        }
        Ok(())
    }
}

/// Ansatz output state for the given parameters.
pub fn output_state(spec: &AnsatzSpec, theta: &[f64]) -> SimResult<PureState> {
    let mut psi = spec.initial_state();
    psi.apply_circuit(&spec.bind(theta)?)?;
    Ok(psi)
}

/// `<psi(theta)|H|psi(theta)>`.
pub fn energy(spec: &AnsatzSpec, theta: &[f64]) -> SimResult<f64> {
    spec.model().expectation(&output_state(spec, theta)?)
}

/// Exact gradient of the energy with respect to the tied parameters.
pub fn gradient(spec: &AnsatzSpec, theta: &[f64]) -> SimResult<Vec<f64>> {
    Ok(energy_and_gradient(spec, theta)?.1)
}

/// Energy and gradient in one reverse-sweep adjoint pass.
///
/// With `|phi> = U|psi0>` and `|lambda> = H|phi>`, each slot contributes
/// `2 Re <lambda| dU_k/dtheta |phi_k>`; walking the circuit backwards keeps
/// the cost at `O(G 2^n)` for `G` gates. Tied slots accumulate into their
/// shared parameter through the sign baked into the slot generator.
pub fn energy_and_gradient(spec: &AnsatzSpec, theta: &[f64]) -> SimResult<(f64, Vec<f64>)> {
    if theta.len() != spec.param_count() {
        return Err(SimError::ParamLength {
            expected: spec.param_count(),
            got: theta.len(),
        });
    }
    let n = spec.n_qubits();
    let mut phi = output_state(spec, theta)?;
    let mut lambda = spec.model().apply(&phi)?;
    let e = phi.inner(&lambda)?.re;

    let scale = spec.entangler_scale();
    let mut grad = vec![0.0; theta.len()];
    for slot in spec.slots().iter().rev() {
        // phi currently holds the state right after this slot's gate
        let g = match slot.kind {
            SlotKind::Phase { site } => {
                let s = masked_inner(&lambda, &phi, n, site);
                -2.0 * slot.sign * s.im
            }
            SlotKind::Entangler { left } => {
                let t = bond_generator_inner(&lambda, &phi, n, left, scale);
                -2.0 * slot.sign * t.im
            }
        };
        grad[slot.param] += g;
        let inv = spec.slot_gate(slot, theta).dagger();
        phi.apply_gate(&inv)?;
        lambda.apply_gate(&inv)?;
    }
    Ok((e, grad))
}

/// `sum_{i: bit q set} conj(lambda_i) phi_i`.
fn masked_inner(lambda: &PureState, phi: &PureState, n: usize, qubit: usize) -> Complex64 {
    let stride = 1usize << (n - 1 - qubit);
    let (l, p) = (lambda.amplitudes(), phi.amplitudes());
    let mut acc = Complex64::ZERO;
    let mut base = stride;
    while base < l.len() {
        for i in base..base + stride {
            acc += l[i].conj() * p[i];
        }
        base += 2 * stride;
    }
    acc
}

/// `<lambda| (jx XX + jy YY + jz ZZ)_bond |phi>`.
fn bond_generator_inner(
    lambda: &PureState,
    phi: &PureState,
    n: usize,
    left: usize,
    j: [f64; 3],
) -> Complex64 {
    let sa = 1usize << (n - 1 - left);
    let sb = sa >> 1;
    let (l, p) = (lambda.amplitudes(), phi.amplitudes());
    let (flip_eq, flip_ne) = (j[0] - j[1], j[0] + j[1]);
    let jz = j[2];
    let mut acc = Complex64::ZERO;
    let mut base = 0;
    while base < l.len() {
        for off in 0..sb {
            let i00 = base + off;
            let i01 = i00 + sb;
            let i10 = i00 + sa;
            let i11 = i10 + sb;
            acc += l[i00].conj() * (p[i00] * jz + p[i11] * flip_eq);
            acc += l[i11].conj() * (p[i11] * jz + p[i00] * flip_eq);
            acc += l[i01].conj() * (p[i10] * flip_ne - p[i01] * jz);
            acc += l[i10].conj() * (p[i01] * flip_ne - p[i10] * jz);
        }
        base += 4 * sb;
    }
    acc
}

/// Trace of one optimization run.
///
/// `energies[t]` is the energy after `t` optimizer steps; fidelities are
/// `(iteration, value)` pairs sampled at the configured cadence. Stage
/// starts are only populated by the layer-recursive schedule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub energies: Vec<f64>,
    pub fidelities: Vec<(usize, f64)>,
    pub final_theta: Vec<f64>,
    pub stage_starts: Vec<usize>,
}

impl OptimizationTrace {
    pub fn final_energy(&self) -> f64 {
        *self.energies.last().expect("at least the initial energy")
    }

    pub fn final_fidelity(&self) -> Option<f64> {
        self.fidelities.last().map(|&(_, f)| f)
    }

    pub fn iterations(&self) -> usize {
        self.energies.len() - 1
    }

    /// Append a later trace (stage boundaries recorded).
    pub(crate) fn extend_with(&mut self, next: OptimizationTrace) {
        let offset = self.iterations();
        self.stage_starts.push(offset);
        self.energies.extend(next.energies.into_iter().skip(1));
        // drop a leading iteration-0 fidelity sample: it shares its COI
        // coordinate with the previous stage's final point
        let skip = usize::from(matches!(next.fidelities.first(), Some(&(0, _))));
        self.fidelities.extend(
            next.fidelities
                .into_iter()
                .skip(skip)
                .map(|(i, f)| (i + offset, f)),
        );
        self.final_theta = next.final_theta;
    }
}

/// Knobs for [`optimize`].
#[derive(Debug, Clone, Copy)]
pub struct OptimizeOptions {
    /// Record fidelity every this many iterations (0 disables except when a
    /// target is given, in which case the final point is still recorded).
    pub fidelity_every: usize,
    pub hyper: AdamHyper,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            fidelity_every: 1,
            hyper: AdamHyper::default(),
        }
    }
}

/// Run exactly `max_iter` Adam iterations from `theta0`; no early stopping.
pub fn optimize(
    spec: &AnsatzSpec,
    theta0: Vec<f64>,
    max_iter: usize,
    target: Option<&GroundStateResult>,
    opts: &OptimizeOptions,
) -> SimResult<OptimizationTrace> {
    let mut theta = theta0;
    let mut adam = AdamState::new(theta.len(), opts.hyper);
    let mut energies = Vec::with_capacity(max_iter + 1);
    let mut fidelities = Vec::new();

    let record_fid = |fidelities: &mut Vec<(usize, f64)>,
                      iter: usize,
                      theta: &[f64]|
     -> SimResult<()> {
        if let Some(gs) = target {
            let f = gs.fidelity_of(&output_state(spec, theta)?)?;
            fidelities.push((iter, f));
        }
        Ok(())
    };

    let (e0, mut grad) = energy_and_gradient(spec, &theta)?;
    energies.push(e0);
    if opts.fidelity_every > 0 {
        record_fid(&mut fidelities, 0, &theta)?;
    }
    for t in 1..=max_iter {
        adam.step(&mut theta, &grad)?;
        let (e, g) = energy_and_gradient(spec, &theta)?;
        energies.push(e);
        grad = g;
        let due = opts.fidelity_every > 0 && t % opts.fidelity_every == 0;
        if due || t == max_iter {
            record_fid(&mut fidelities, t, &theta)?;
        }
    }
    Ok(OptimizationTrace {
        energies,
        fidelities,
        final_theta: theta,
        stage_starts: Vec::new(),
    })
}

/// Configuration of the minimal-depth search.
#[derive(Debug, Clone, Copy)]
pub struct DepthSearchConfig {
    pub samples: usize,
    pub master_seed: u64,
    pub layer_cap: usize,
    pub strategy: StrategyKind,
    /// Iterations per parameter (the paper-style rule uses 50).
    pub iters_per_param: usize,
}

impl Default for DepthSearchConfig {
    fn default() -> Self {
        Self {
            samples: 20,
            master_seed: 0,
            layer_cap: 16,
            strategy: StrategyKind::Random,
            iters_per_param: 50,
        }
    }
}

/// Smallest layer count for which every seeded sample reaches the threshold
/// fidelity within `iters_per_param * L` iterations.
pub fn min_layers_vqe(
    model: &HamiltonianSpec,
    mirror_tied: bool,
    threshold: f64,
    gs: &GroundStateResult,
    cfg: &DepthSearchConfig,
) -> SimResult<u32> {
    if !(0.0 < threshold && threshold < 1.0) {
        return Err(SimError::InvalidThreshold(threshold));
    }
    for layers in 1..=cfg.layer_cap {
        let spec = AnsatzSpec::new(model.clone(), layers, mirror_tied)?;
        let budget = SampleBudget {
            total_iters: cfg.iters_per_param * spec.param_count(),
            iters_per_stage: None,
            half_iters: None,
        };
        let opts = OptimizeOptions {
            // only the final fidelity decides success
            fidelity_every: 0,
            hyper: AdamHyper::default(),
        };
        let mut all_passed = true;
        for sample in 0..cfg.samples {
            let seed = crate::seeding::derive_seed(
                cfg.master_seed,
                ((layers as u64) << 32) | sample as u64,
            );
            let trace =
                run_strategy_sample(cfg.strategy, &spec, seed, &budget, Some(gs), &opts)?;
            let fid = trace
                .final_fidelity()
                .expect("fidelity recorded because a target was passed");
            if fid < threshold {
                all_passed = false;
                break;
            }
        }
        if all_passed {
            return Ok(layers as u32);
        }
    }
    Err(SimError::SearchCapExceeded("VQE depth search"))
}
