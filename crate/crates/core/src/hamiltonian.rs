//! Spin-chain Hamiltonians with matrix-free action.
//!
//! All models are sums of nearest-neighbour two-site terms
//! `jx XX + jy YY + jz ZZ` on an open chain, so a single bond kernel serves
//! the uniform Heisenberg chain, the anisotropic XYZ chain, the impurity
//! (Kondo-type) chain, and the interpolating dimerized Hamiltonian used by
//! the adiabatic ramp.

use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::seeding::rng_from_seed;
use crate::state::PureState;
use rand::Rng;

/// Which spin chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// `J sum_i sigma_i . sigma_{i+1}`, `J > 0`.
    Heisenberg { j: f64 },
    /// `sum_i Jx XX + Jy YY + Jz ZZ`.
    Xyz { jx: f64, jy: f64, jz: f64 },
    /// `J (J' sigma_1 . sigma_2 + sum_{i>=2} sigma_i . sigma_{i+1})`;
    /// `J' < 1` marks site 1 as the impurity.
    Kondo { j: f64, j_prime: f64 },
    /// `H_odd + s H_even` at schedule fraction `s = t/T_max`.
    AdiabaticInstant { j: f64, s: f64 },
}

/// A model bound to a chain length.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    model: Model,
    n_qubits: usize,
}

/// One nearest-neighbour term on sites `(left, left+1)`.
#[derive(Debug, Clone, Copy)]
pub struct Bond {
    pub left: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

/// Outcome of the numerical symmetry check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryReport {
    pub commutes_with_sz: bool,
    pub mirror_symmetric: bool,
}

impl HamiltonianSpec {
    pub fn new(model: Model, n_qubits: usize) -> SimResult<Self> {
        if n_qubits < 2 {
            return Err(SimError::TooFewQubits {
                n: n_qubits,
                min: 2,
            });
        }
        if n_qubits % 2 != 0 {
            return Err(SimError::OddQubitCount(n_qubits));
        }
        match model {
            Model::Heisenberg { j } if j <= 0.0 => {
                return Err(SimError::InvalidCoupling(format!(
                    "Heisenberg coupling must satisfy J > 0, got {j}"
                )));
            }
            Model::AdiabaticInstant { s, .. } if !(0.0..=1.0).contains(&s) => {
                return Err(SimError::InvalidCoupling(format!(
                    "schedule fraction must lie in [0,1], got {s}"
                )));
            }
            _ => {}
        }
        Ok(Self { model, n_qubits })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Soft validation findings (exploratory parameter ranges).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Model::Kondo { j_prime, .. } = self.model {
            if !(0.0..1.0).contains(&j_prime) || j_prime == 0.0 {
                out.push(format!(
                    "Kondo impurity coupling J' = {j_prime} is outside (0, 1); \
                     the first site no longer acts as a weakly coupled impurity"
                ));
            }
        }
        out
    }

    /// True when the model commutes with total `S_z`.
    pub fn conserves_sz(&self) -> bool {
        match self.model {
            Model::Xyz { jx, jy, .. } => jx == jy,
            _ => true,
        }
    }

    /// The per-bond couplings, bonds ordered left to right.
    pub fn bonds(&self) -> Vec<Bond> {
        let n = self.n_qubits;
        (0..n - 1)
            .map(|left| {
                let (jx, jy, jz) = match self.model {
                    Model::Heisenberg { j } => (j, j, j),
                    Model::Xyz { jx, jy, jz } => (jx, jy, jz),
                    Model::Kondo { j, j_prime } => {
                        if left == 0 {
                            (j * j_prime, j * j_prime, j * j_prime)
                        } else {
                            (j, j, j)
                        }
                    }
                    Model::AdiabaticInstant { j, s } => {
                        // odd bonds in 1-based site labels start at even 0-based sites
                        if left % 2 == 0 {
                            (j, j, j)
                        } else {
                            (j * s, j * s, j * s)
                        }
                    }
                };
                Bond { left, jx, jy, jz }
            })
            .collect()
    }

    /// `H |psi>` (unnormalized).
    pub fn apply(&self, state: &PureState) -> SimResult<PureState> {
        if state.n_qubits() != self.n_qubits {
            return Err(SimError::DimensionMismatch {
                left: self.dim(),
                right: state.dim(),
            });
        }
        let mut out = vec![Complex64::ZERO; state.dim()];
        for bond in self.bonds() {
            add_bond_action(&mut out, state.amplitudes(), self.n_qubits, &bond);
        }
        PureState::from_amplitudes(out)
    }

    /// Real-vector matvec for the eigensolvers (all models are real
    /// symmetric in the computational basis).
    pub(crate) fn matvec_real(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for bond in self.bonds() {
            add_bond_action(out, x, self.n_qubits, &bond);
        }
    }

    /// `<psi|H|psi>` for a normalized state.
    pub fn expectation(&self, state: &PureState) -> SimResult<f64> {
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(SimError::StateNotNormalized(norm));
        }
        let h_psi = self.apply(state)?;
        Ok(state.inner(&h_psi)?.re)
    }

    /// Numerically test `[H, S_z] = 0` and `[H, M] = 0` on random states.
    pub fn check_symmetries(&self) -> SymmetryReport {
        let mut rng = rng_from_seed(0x5157_u64);
        let mut sz_ok = true;
        let mut mirror_ok = true;
        for _ in 0..6 {
            let psi = random_state(self.n_qubits, &mut rng);
            // [H, Sz] psi
            let h_sz = self.apply(&apply_sz(&psi)).unwrap();
            let sz_h = apply_sz(&self.apply(&psi).unwrap());
            if diff_norm(&h_sz, &sz_h) > 1e-9 {
                sz_ok = false;
            }
            let h_m = self.apply(&psi.mirror_reversed()).unwrap();
            let m_h = self.apply(&psi).unwrap().mirror_reversed();
            if diff_norm(&h_m, &m_h) > 1e-9 {
                mirror_ok = false;
            }
        }
        SymmetryReport {
            commutes_with_sz: sz_ok,
            mirror_symmetric: mirror_ok,
        }
    }
}

/// Accumulate `(jx XX + jy YY + jz ZZ)_{(a,a+1)} x` into `out`.
///
/// Per index quadruple the action is
/// `|00>: +jz, pairs with |11> via (jx - jy); |01>: -jz, pairs with |10>
/// via (jx + jy)`.
pub(crate) fn add_bond_action<T>(out: &mut [T], x: &[T], n: usize, bond: &Bond)
where
    T: Copy
        + std::ops::AddAssign
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>,
{
    let a = bond.left;
    let sa = 1usize << (n - 1 - a);
    let sb = sa >> 1;
    let (flip_eq, flip_ne) = (bond.jx - bond.jy, bond.jx + bond.jy);
    let jz = bond.jz;
    let dim = out.len();
    // adjacent pair: enumerate blocks of 4 contiguous pair-offsets
    let mut base = 0;
    while base < dim {
        for off in 0..sb {
            let i00 = base + off;
            let i01 = i00 + sb;
            let i10 = i00 + sa;
            let i11 = i10 + sb;
            out[i00] += x[i00] * jz + x[i11] * flip_eq;
            out[i11] += x[i11] * jz + x[i00] * flip_eq;
            out[i01] += x[i10] * flip_ne - x[i01] * jz;
            out[i10] += x[i01] * flip_ne - x[i10] * jz;
        }
        base += 4 * sb;
    }
}

fn apply_sz(psi: &PureState) -> PureState {
    let n = psi.n_qubits() as i32;
    let amps = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| a * (n - 2 * i.count_ones() as i32) as f64)
        .collect();
    PureState::from_amplitudes(amps).expect("same dimension")
}

fn diff_norm(a: &PureState, b: &PureState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn random_state(n: usize, rng: &mut impl Rng) -> PureState {
    let dim = 1usize << n;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(rand_distr::StandardNormal),
                rng.sample::<f64, _>(rand_distr::StandardNormal),
            )
        })
        .collect();
    let mut s = PureState::from_amplitudes(amps).expect("power-of-two length");
    s.normalize();
    s
}
