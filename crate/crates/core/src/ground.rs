//! Exact ground-state oracle: dense diagonalization for small chains,
//! matrix-free Lanczos beyond.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::hamiltonian::HamiltonianSpec;
use crate::lanczos::{lowest_eigenpair, LanczosOptions};
use crate::state::PureState;

/// Dense diagonalization is limited to this many qubits.
pub const DENSE_ORACLE_MAX_QUBITS: usize = 12;
/// The iterative path is limited to this many qubits.
pub const ITERATIVE_ORACLE_MAX_QUBITS: usize = 24;
/// Two lowest levels closer than this count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Lowest eigenpair plus gap information.
#[derive(Debug, Clone)]
pub struct GroundStateResult {
    /// Ground energy in units of `J`.
    pub energy: f64,
    /// A ground state (the first basis vector when degenerate).
    pub state: PureState,
    /// `E_1 - E_0`.
    pub gap: f64,
    pub degenerate: bool,
    /// Orthonormal basis of the (near-)degenerate ground space; a single
    /// state when the ground level is unique.
    pub basis: Vec<PureState>,
    /// `||H|gs> - E0|gs>||` actually achieved.
    pub residual: f64,
}

impl GroundStateResult {
    /// Fidelity of `psi` against the ground space: the squared norm of the
    /// projection, which reduces to `|<gs|psi>|^2` in the unique case.
    pub fn fidelity_of(&self, psi: &PureState) -> SimResult<f64> {
        let mut acc = 0.0;
        for b in &self.basis {
            acc += b.fidelity(psi)?;
        }
        Ok(acc)
    }
}

/// Ground state of `spec`, choosing dense or iterative diagonalization by
/// size.
pub fn ground_state(spec: &HamiltonianSpec) -> SimResult<GroundStateResult> {
    if spec.n_qubits() <= 10 {
        ground_state_dense(spec)
    } else if spec.n_qubits() <= ITERATIVE_ORACLE_MAX_QUBITS {
        ground_state_lanczos(spec)
    } else {
        Err(SimError::SizeLimit {
            what: "ground-state oracle",
            n: spec.n_qubits(),
            limit: ITERATIVE_ORACLE_MAX_QUBITS,
        })
    }
}

/// Dense symmetric eigendecomposition (all models are real symmetric).
pub fn ground_state_dense(spec: &HamiltonianSpec) -> SimResult<GroundStateResult> {
    let n = spec.n_qubits();
    if n > DENSE_ORACLE_MAX_QUBITS {
        return Err(SimError::SizeLimit {
            what: "dense ground-state oracle",
            n,
            limit: DENSE_ORACLE_MAX_QUBITS,
        });
    }
    let dim = spec.dim();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    let mut unit = vec![0.0; dim];
    let mut col = vec![0.0; dim];
    for c in 0..dim {
        unit[c] = 1.0;
        spec.matvec_real(&unit, &mut col);
        unit[c] = 0.0;
        for r in 0..dim {
            h[(r, c)] = col[r];
        }
    }
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let e0 = eig.eigenvalues[order[0]];
    let e1 = eig.eigenvalues[order[1]];
    let gap = e1 - e0;
    let degenerate = gap.abs() < DEGENERACY_TOL;

    let to_state = |idx: usize| -> PureState {
        let amps: Vec<Complex64> = eig
            .eigenvectors
            .column(idx)
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let mut s = PureState::from_amplitudes(amps).expect("power-of-two dimension");
        s.normalize();
        s
    };

    let state = to_state(order[0]);
    let mut basis = vec![state.clone()];
    if degenerate {
        // collect every level within the degeneracy window
        for &idx in order.iter().skip(1) {
            if (eig.eigenvalues[idx] - e0).abs() < DEGENERACY_TOL {
                basis.push(to_state(idx));
            } else {
                break;
            }
        }
    }
    let residual = residual_norm(spec, &state, e0)?;
    Ok(GroundStateResult {
        energy: e0,
        state,
        gap,
        degenerate,
        basis,
        residual,
    })
}

/// Matrix-free restarted Lanczos; the gap comes from a second, deflated run.
pub fn ground_state_lanczos(spec: &HamiltonianSpec) -> SimResult<GroundStateResult> {
    if spec.n_qubits() > ITERATIVE_ORACLE_MAX_QUBITS {
        return Err(SimError::SizeLimit {
            what: "iterative ground-state oracle",
            n: spec.n_qubits(),
            limit: ITERATIVE_ORACLE_MAX_QUBITS,
        });
    }
    let dim = spec.dim();
    let matvec = |x: &[f64]| {
        let mut out = vec![0.0; dim];
        spec.matvec_real(x, &mut out);
        out
    };
    let opts = LanczosOptions::default();
    let (e0, v0, _res) = lowest_eigenpair(dim, matvec, &[], &opts)?;
    let (e1, v1, _res1) = lowest_eigenpair(dim, matvec, &[&v0], &opts)?;
    let gap = e1 - e0;
    let degenerate = gap.abs() < DEGENERACY_TOL;

    let to_state = |v: &[f64]| {
        let amps: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut s = PureState::from_amplitudes(amps).expect("power-of-two dimension");
        s.normalize();
        s
    };
    let state = to_state(&v0);
    let mut basis = vec![state.clone()];
    if degenerate {
        basis.push(to_state(&v1));
    }
    let residual = residual_norm(spec, &state, e0)?;
    Ok(GroundStateResult {
        energy: e0,
        state,
        gap,
        degenerate,
        basis,
        residual,
    })
}

fn residual_norm(spec: &HamiltonianSpec, state: &PureState, energy: f64) -> SimResult<f64> {
    let h_psi = spec.apply(state)?;
    Ok(h_psi
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(h, s)| (h - s * energy).norm_sqr())
        .sum::<f64>()
        .sqrt())
}
