//! Initialization strategies for the variational search and seeded
//! ensemble statistics.
//!
//! Three ways to start the optimizer: fresh standard-normal parameters,
//! gluing two optimized half-size circuits (qubit recursive), and growing
//! the circuit one optimized layer at a time (layer recursive).

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::{bond_param_index, phase_param_index, AnsatzSpec};
use crate::error::{SimError, SimResult};
use crate::ground::GroundStateResult;
use crate::hamiltonian::Model;
use crate::seeding::{derive_seed, rng_from_seed};
use crate::vqe::{optimize, OptimizationTrace, OptimizeOptions};

/// Which warm-start scheme seeds the optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    Random,
    QubitRecursive,
    LayerRecursive,
}

impl StrategyKind {
    pub fn label(self) -> &'static str {
        match self {
            StrategyKind::Random => "random",
            StrategyKind::QubitRecursive => "qubit",
            StrategyKind::LayerRecursive => "layer",
        }
    }
}

/// Iteration budget of one sample.
#[derive(Debug, Clone, Copy)]
pub struct SampleBudget {
    /// Optimizer iterations counted on the target-size circuit.
    pub total_iters: usize,
    /// Layer-recursive stage length; defaults to an even split of the total.
    pub iters_per_stage: Option<usize>,
    /// Qubit-recursive half-system budget; defaults to 50 x L_half.
    pub half_iters: Option<usize>,
}

/// A strategy ensemble: independent seeded samples plus the aggregation
/// cadence.
#[derive(Debug, Clone, Copy)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    pub master_seed: u64,
    pub samples: usize,
    pub budget: SampleBudget,
    pub fidelity_every: usize,
}

/// `L` independent standard-normal draws.
pub fn init_random(l: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..l)
        .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
        .collect()
}

/// Seed a doubled chain from an optimized half-size parameter vector.
///
/// Per shared layer the half-system bond angles are copied onto both
/// halves' corresponding bonds, the new junction bond `(N/2, N/2+1)` draws
/// a fresh standard-normal angle, and the half-system phase pattern is
/// copied onto the left half (mirror tying regenerates the right half;
/// untied circuits copy the phases onto both halves). Layers beyond the
/// half-system depth copy its last layer.
pub fn init_qubit_recursive(
    theta_half: &[f64],
    spec_half: &AnsatzSpec,
    spec_full: &AnsatzSpec,
    rng: &mut impl Rng,
) -> SimResult<Vec<f64>> {
    let n = spec_full.n_qubits();
    let n_half = spec_half.n_qubits();
    if n != 2 * n_half {
        return Err(SimError::IncompatibleRecursion(format!(
            "full size {n} is not twice the half size {n_half}"
        )));
    }
    if n_half % 2 != 0 {
        return Err(SimError::IncompatibleRecursion(format!(
            "half size {n_half} must itself be even, so the full size must be divisible by 4"
        )));
    }
    if spec_full.layers() < spec_half.layers() {
        return Err(SimError::IncompatibleRecursion(format!(
            "full circuit has fewer layers ({}) than the half circuit ({})",
            spec_full.layers(),
            spec_half.layers()
        )));
    }
    if spec_full.mirror_tied() != spec_half.mirror_tied() {
        return Err(SimError::IncompatibleRecursion(
            "half and full circuits must agree on mirror tying".into(),
        ));
    }
    if matches!(spec_full.model().model(), Model::Kondo { .. }) {
        return Err(SimError::IncompatibleRecursion(
            "the impurity chain is not translation uniform; halves cannot be replicated".into(),
        ));
    }
    if theta_half.len() != spec_half.param_count() {
        return Err(SimError::ParamLength {
            expected: spec_half.param_count(),
            got: theta_half.len(),
        });
    }

    let tied = spec_full.mirror_tied();
    let junction = n_half - 1; // 0-based left site of bond (N/2, N/2+1)
    let mut theta = vec![0.0; spec_full.param_count()];
    for layer in 0..spec_full.layers() {
        let src = layer.min(spec_half.layers() - 1);
        // bound per-site phase angles of the half system in this layer
        let half_angle = |site: usize| -> f64 {
            let idx = phase_param_index(n_half, tied, src, site);
            let sign = if tied && site >= n_half / 2 { -1.0 } else { 1.0 };
            sign * theta_half[idx]
        };
        if tied {
            // left-half copy; tying regenerates the right half
            for site in 0..n / 2 {
                theta[phase_param_index(n, true, layer, site)] = half_angle(site % n_half);
            }
        } else {
            for site in 0..n {
                theta[phase_param_index(n, false, layer, site)] = half_angle(site % n_half);
            }
        }
        for left in 0..n - 1 {
            let idx = bond_param_index(n, tied, layer, left);
            if left == junction {
                theta[idx] = rng.sample::<f64, _>(rand_distr::StandardNormal);
            } else {
                let src_left = if left < junction {
                    left
                } else {
                    left - n_half
                };
                theta[idx] = theta_half[bond_param_index(n_half, tied, src, src_left)];
            }
        }
    }
    Ok(theta)
}

/// Layer-recursive run: optimize a one-layer circuit, then repeatedly
/// append a layer initialized from the previous layer's optimized values
/// and keep optimizing, up to the target depth.
pub fn run_layer_recursive(
    spec_target: &AnsatzSpec,
    iters_per_stage: usize,
    rng: &mut ChaCha8Rng,
    target: Option<&GroundStateResult>,
    opts: &OptimizeOptions,
) -> SimResult<OptimizationTrace> {
    let per_layer = spec_target.params_per_layer();
    let model = spec_target.model().clone();
    let tied = spec_target.mirror_tied();

    let stage_spec = AnsatzSpec::new(model.clone(), 1, tied)?;
    let theta = init_random(per_layer, rng);
    let mut trace = optimize(&stage_spec, theta, iters_per_stage, target, opts)?;
    for m in 2..=spec_target.layers() {
        let stage_spec = AnsatzSpec::new(model.clone(), m, tied)?;
        let mut theta = trace.final_theta.clone();
        let last_layer = theta[(m - 2) * per_layer..].to_vec();
        theta.extend(last_layer);
        let next = optimize(&stage_spec, theta, iters_per_stage, target, opts)?;
        trace.extend_with(next);
    }
    Ok(trace)
}

/// Run one seeded sample of the given strategy.
pub fn run_strategy_sample(
    kind: StrategyKind,
    spec: &AnsatzSpec,
    seed: u64,
    budget: &SampleBudget,
    target: Option<&GroundStateResult>,
    opts: &OptimizeOptions,
) -> SimResult<OptimizationTrace> {
    if budget.total_iters == 0 {
        return Err(SimError::InvalidConfig(
            "sample budget must be at least one iteration".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    match kind {
        StrategyKind::Random => {
            let theta0 = init_random(spec.param_count(), &mut rng);
            optimize(spec, theta0, budget.total_iters, target, opts)
        }
        StrategyKind::QubitRecursive => {
            let model = spec.model();
            let half_model =
                crate::hamiltonian::HamiltonianSpec::new(model.model(), model.n_qubits() / 2)?;
            let spec_half = AnsatzSpec::new(half_model, spec.layers(), spec.mirror_tied())?;
            let half_iters = budget.half_iters.unwrap_or(50 * spec_half.param_count());
            let theta_h0 = init_random(spec_half.param_count(), &mut rng);
            // the half-system warm-up is not counted against the budget
            let half_opts = OptimizeOptions {
                fidelity_every: 0,
                hyper: opts.hyper,
            };
            let half = optimize(&spec_half, theta_h0, half_iters, None, &half_opts)?;
            let theta0 = init_qubit_recursive(&half.final_theta, &spec_half, spec, &mut rng)?;
            optimize(spec, theta0, budget.total_iters, target, opts)
        }
        StrategyKind::LayerRecursive => {
            let stages = spec.layers();
            let per_stage = budget
                .iters_per_stage
                .unwrap_or_else(|| (budget.total_iters / stages).max(1));
            run_layer_recursive(spec, per_stage, &mut rng, target, opts)
        }
    }
}

/// Final values of one ensemble sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub seed: u64,
    pub final_energy: f64,
    pub final_fidelity: f64,
}

/// Per-iteration ensemble statistics (population standard deviation, so a
/// single sample reports zero spread).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleStats {
    /// Iteration numbers at which fidelity statistics were sampled.
    pub fidelity_iters: Vec<usize>,
    pub mean_fidelity: Vec<f64>,
    pub std_fidelity: Vec<f64>,
    /// Mean energy at every iteration.
    pub mean_energy: Vec<f64>,
    pub outcomes: Vec<SampleOutcome>,
}

impl EnsembleStats {
    pub fn final_mean_fidelity(&self) -> f64 {
        *self.mean_fidelity.last().expect("nonempty trace")
    }

    pub fn final_std_fidelity(&self) -> f64 {
        *self.std_fidelity.last().expect("nonempty trace")
    }

    /// First sampled iteration at which the mean fidelity reaches `f`.
    pub fn iterations_to_fidelity(&self, f: f64) -> Option<usize> {
        self.fidelity_iters
            .iter()
            .zip(&self.mean_fidelity)
            .find(|(_, &m)| m >= f)
            .map(|(&i, _)| i)
    }
}

/// Deterministic reduction of per-sample traces into ensemble statistics.
///
/// All traces must share the budget, so fidelity cadences align.
pub fn aggregate(traces: &[OptimizationTrace], seeds: &[u64]) -> SimResult<EnsembleStats> {
    let first = traces.first().ok_or(SimError::InvalidConfig(
        "cannot aggregate an empty ensemble".into(),
    ))?;
    let iters = first.energies.len();
    let fid_len = first.fidelities.len();
    for t in traces {
        if t.energies.len() != iters || t.fidelities.len() != fid_len {
            return Err(SimError::InvalidConfig(
                "ensemble traces have mismatched budgets".into(),
            ));
        }
    }
    let inv = 1.0 / traces.len() as f64;
    let mean_energy: Vec<f64> = (0..iters)
        .map(|i| traces.iter().map(|t| t.energies[i]).sum::<f64>() * inv)
        .collect();
    let fidelity_iters: Vec<usize> = first.fidelities.iter().map(|&(i, _)| i).collect();
    let mut mean_fidelity = Vec::with_capacity(fid_len);
    let mut std_fidelity = Vec::with_capacity(fid_len);
    for k in 0..fid_len {
        let mean = traces.iter().map(|t| t.fidelities[k].1).sum::<f64>() * inv;
        let var = traces
            .iter()
            .map(|t| {
                let d = t.fidelities[k].1 - mean;
                d * d
            })
            .sum::<f64>()
            * inv;
        mean_fidelity.push(mean);
        std_fidelity.push(var.sqrt());
    }
    let outcomes = traces
        .iter()
        .zip(seeds)
        .map(|(t, &seed)| SampleOutcome {
            seed,
            final_energy: t.final_energy(),
            final_fidelity: t.final_fidelity().unwrap_or(f64::NAN),
        })
        .collect();
    Ok(EnsembleStats {
        fidelity_iters,
        mean_fidelity,
        std_fidelity,
        mean_energy,
        outcomes,
    })
}

/// Sequentially run and aggregate a seeded ensemble.
pub fn run_ensemble(
    cfg: &StrategyConfig,
    spec: &AnsatzSpec,
    target: &GroundStateResult,
) -> SimResult<EnsembleStats> {
    if cfg.samples == 0 {
        return Err(SimError::InvalidConfig(
            "an ensemble needs at least one sample".into(),
        ));
    }
    let opts = OptimizeOptions {
        fidelity_every: cfg.fidelity_every,
        hyper: Default::default(),
    };
    let seeds: Vec<u64> = (0..cfg.samples as u64)
        .map(|i| derive_seed(cfg.master_seed, i))
        .collect();
    let mut traces = Vec::with_capacity(cfg.samples);
    for &seed in &seeds {
        traces.push(run_strategy_sample(
            cfg.kind,
            spec,
            seed,
            &cfg.budget,
            Some(target),
            &opts,
        )?);
    }
    aggregate(&traces, &seeds)
}
