//! Matrix-free simulation of spin-chain ground-state preparation on a
//! digital gate set.
//!
//! The crate covers both preparation routes and the tooling around them:
//!
//! - [`state`], [`gates`], [`circuit`]: amplitude-vector and density-matrix
//!   simulation of phase gates, rotations, CNOTs, and the symmetric
//!   two-qubit entangler with its 3-CNOT decomposition.
//! - [`hamiltonian`], [`ground`]: Heisenberg/XYZ/impurity chains with
//!   matrix-free action, dense and Lanczos ground-state oracles.
//! - [`adiabatic`]: exact integration of the dimerized ramp, first/second
//!   order Suzuki-Trotter circuits, minimal ramp-time and depth searches,
//!   CNOT resource counts.
//! - [`ansatz`], [`vqe`]: the mirror-tied variational circuit, exact
//!   adjoint gradients, Adam/amsgrad, and the minimal-depth search.
//! - [`strategies`]: random, qubit-recursive, and layer-recursive starts
//!   with seeded ensemble statistics.
//! - [`noise`]: coherent CNOT phase errors and layer-wise dephasing.

pub mod adiabatic;
pub mod ansatz;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod ground;
pub mod hamiltonian;
mod lanczos;
pub mod noise;
pub mod seeding;
pub mod state;
pub mod strategies;
pub mod vqe;

pub use adiabatic::{
    build_adiabatic_circuit, build_trotter_step, exact_evolve, min_layers_adiabatic, min_tmax,
    ramp_time_floor, resource_count, AdiabaticRun, ResourceCount, TrotterOrder,
};
pub use ansatz::AnsatzSpec;
pub use circuit::Circuit;
pub use error::{SimError, SimResult};
pub use gates::{decompose_entangler, entangler_unitary, Gate, Matrix4};
pub use ground::{ground_state, ground_state_dense, ground_state_lanczos, GroundStateResult};
pub use hamiltonian::{Bond, HamiltonianSpec, Model, SymmetryReport};
pub use noise::{
    avg_noisy_fidelity, dephasing_channel, noisy_cnot, noisy_layered_output,
    sample_noisy_circuit, NoiseConfig, NoiseStats,
};
pub use state::{MixedState, PureState};
pub use strategies::{
    aggregate, init_qubit_recursive, init_random, run_ensemble, run_layer_recursive,
    run_strategy_sample, EnsembleStats, SampleBudget, SampleOutcome, StrategyConfig, StrategyKind,
};
pub use vqe::{
    energy, energy_and_gradient, gradient, min_layers_vqe, optimize, output_state, AdamHyper,
    AdamState, DepthSearchConfig, OptimizationTrace, OptimizeOptions,
};
