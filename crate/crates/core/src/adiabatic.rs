//! Digitized adiabatic evolution: exact time integration of the dimerized
//! ramp, Suzuki-Trotter circuits, and minimal ramp-time / depth searches.
//!
//! The ramp `H(t) = H_odd + (t/T_max) H_even` starts from the singlet
//! product (the ground state at `t = 0`) and ends at the uniform chain.
//! Times are in units of `1/J`.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{SimError, SimResult};
use crate::gates::Gate;
use crate::ground::{ground_state, GroundStateResult};
use crate::hamiltonian::{Bond, HamiltonianSpec, Model};
use crate::state::PureState;

/// Suzuki-Trotter splitting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrotterOrder {
    St1,
    St2,
}

impl TrotterOrder {
    /// CNOTs per layer: `3(N-1)` for ST1, `3(3N/2-1)` for ST2.
    pub fn cnots_per_layer(self, n: usize) -> u64 {
        match self {
            TrotterOrder::St1 => 3 * (n as u64 - 1),
            TrotterOrder::St2 => 3 * (3 * n as u64 / 2 - 1),
        }
    }
}

/// Gate resources of a digitized evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceCount {
    pub layers: u64,
    pub cnots: u64,
}

/// Per-layer CNOT formula times depth.
pub fn resource_count(n: usize, m: u64, order: TrotterOrder) -> ResourceCount {
    ResourceCount {
        layers: m,
        cnots: order.cnots_per_layer(n) * m,
    }
}

/// One digitized adiabatic evolution.
#[derive(Debug, Clone, Copy)]
pub struct AdiabaticRun {
    pub n_qubits: usize,
    pub t_max: f64,
    pub m_steps: u32,
    pub order: TrotterOrder,
    pub threshold: f64,
}

impl AdiabaticRun {
    pub fn new(
        n_qubits: usize,
        t_max: f64,
        m_steps: u32,
        order: TrotterOrder,
        threshold: f64,
    ) -> SimResult<Self> {
        if n_qubits < 2 {
            return Err(SimError::TooFewQubits {
                n: n_qubits,
                min: 2,
            });
        }
        if n_qubits % 2 != 0 {
            return Err(SimError::OddQubitCount(n_qubits));
        }
        if m_steps == 0 || !(t_max > 0.0) {
            return Err(SimError::InvalidConfig(format!(
                "time step T_max/M must be positive, got T_max={t_max}, M={m_steps}"
            )));
        }
        if !(0.0 < threshold && threshold < 1.0) {
            return Err(SimError::InvalidThreshold(threshold));
        }
        Ok(Self {
            n_qubits,
            t_max,
            m_steps,
            order,
            threshold,
        })
    }

    pub fn dt(&self) -> f64 {
        self.t_max / self.m_steps as f64
    }
}

/// Search floor for the ramp time at the adiabatic scale `N^2/16`.
///
/// Final-state fidelity also crosses common thresholds at much shorter,
/// diabatic ramps, but only with vanishing margin, which makes the
/// downstream depth search diverge. The ramp-time search therefore never
/// probes below this scale.
pub fn ramp_time_floor(n: usize) -> f64 {
    (n * n) as f64 / 16.0
}

const RAMP_TIME_CAP: f64 = 1.0e4;
const DEPTH_CAP: u32 = 1 << 20;
/// L2 self-check target; keeps fidelity changes under halving below 1e-6.
const INTEGRATOR_TOL: f64 = 5e-7;

/// Integrate the Schroedinger equation under the ramp from the singlet
/// product to time `t_max` with RK4.
///
/// The step is halved until another halving moves the final state by less
/// than the built-in tolerance, so the result is integrator-converged.
pub fn exact_evolve(n: usize, t_max: f64, step_hint: f64) -> SimResult<PureState> {
    let psi0 = PureState::singlet_product(n)?;
    if t_max == 0.0 {
        return Ok(psi0);
    }
    if !(t_max > 0.0) || !(step_hint > 0.0) {
        return Err(SimError::InvalidConfig(format!(
            "evolution needs t_max >= 0 and step_hint > 0, got {t_max}, {step_hint}"
        )));
    }
    let ramp = RampMatvec::new(n);
    let mut dt = step_hint.min(t_max);
    let mut prev = rk4_run(&ramp, &psi0, t_max, dt);
    for _ in 0..16 {
        dt /= 2.0;
        let cur = rk4_run(&ramp, &psi0, t_max, dt);
        let diff: f64 = cur
            .amplitudes()
            .iter()
            .zip(prev.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if diff < INTEGRATOR_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(SimError::IntegratorSelfCheck)
}

struct RampMatvec {
    n: usize,
    odd: Vec<Bond>,
    even: Vec<Bond>,
}

impl RampMatvec {
    fn new(n: usize) -> Self {
        let all = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, n)
            .expect("validated by caller")
            .bonds();
        let (odd, even) = all.into_iter().partition(|b| b.left % 2 == 0);
        Self { n, odd, even }
    }

    /// `out = -i (H_odd + s H_even) psi`
    fn rhs(&self, s: f64, psi: &[Complex64], out: &mut [Complex64]) {
        out.fill(Complex64::ZERO);
        for b in &self.odd {
            add_bond(out, psi, self.n, b, 1.0);
        }
        for b in &self.even {
            add_bond(out, psi, self.n, b, s);
        }
        for x in out.iter_mut() {
            *x *= -Complex64::I;
        }
    }
}

fn add_bond(out: &mut [Complex64], x: &[Complex64], n: usize, bond: &Bond, scale: f64) {
    if scale == 0.0 {
        return;
    }
    let scaled = Bond {
        left: bond.left,
        jx: bond.jx * scale,
        jy: bond.jy * scale,
        jz: bond.jz * scale,
    };
    crate::hamiltonian::add_bond_action(out, x, n, &scaled);
}

fn rk4_run(ramp: &RampMatvec, psi0: &PureState, t_max: f64, dt: f64) -> PureState {
    let dim = psi0.dim();
    let steps = (t_max / dt).ceil().max(1.0) as usize;
    let h = t_max / steps as f64;
    let mut psi: Vec<Complex64> = psi0.amplitudes().to_vec();
    let mut k1 = vec![Complex64::ZERO; dim];
    let mut k2 = vec![Complex64::ZERO; dim];
    let mut k3 = vec![Complex64::ZERO; dim];
    let mut k4 = vec![Complex64::ZERO; dim];
    let mut tmp = vec![Complex64::ZERO; dim];
    for step in 0..steps {
        let t = step as f64 * h;
        ramp.rhs(t / t_max, &psi, &mut k1);
        for i in 0..dim {
            tmp[i] = psi[i] + k1[i] * (h / 2.0);
        }
        ramp.rhs((t + h / 2.0) / t_max, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = psi[i] + k2[i] * (h / 2.0);
        }
        ramp.rhs((t + h / 2.0) / t_max, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = psi[i] + k3[i] * h;
        }
        ramp.rhs((t + h) / t_max, &tmp, &mut k4);
        for i in 0..dim {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    let mut out = PureState::from_amplitudes(psi).expect("dimension preserved");
    out.normalize();
    out
}

/// Default integrator step hint for the searches.
pub const DEFAULT_STEP_HINT: f64 = 0.02;

/// Smallest ramp time on the geometric-then-bisection grid reaching the
/// threshold fidelity, starting from [`ramp_time_floor`], resolved to 1%.
pub fn min_tmax(n: usize, threshold: f64) -> SimResult<f64> {
    let gs = ground_state(&HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, n)?)?;
    min_tmax_with_target(n, threshold, &gs)
}

/// As [`min_tmax`] with a precomputed ground state.
pub fn min_tmax_with_target(
    n: usize,
    threshold: f64,
    gs: &GroundStateResult,
) -> SimResult<f64> {
    if !(0.0 < threshold && threshold < 1.0) {
        return Err(SimError::InvalidThreshold(threshold));
    }
    let fid = |t: f64| -> SimResult<f64> { gs.fidelity_of(&exact_evolve(n, t, DEFAULT_STEP_HINT)?) };
    let floor = ramp_time_floor(n);
    if fid(floor)? >= threshold {
        return Ok(floor);
    }
    let mut t_lo = floor;
    let mut t_hi = 2.0 * floor;
    while fid(t_hi)? < threshold {
        t_lo = t_hi;
        t_hi *= 2.0;
        if t_hi > RAMP_TIME_CAP {
            return Err(SimError::SearchCapExceeded("adiabatic ramp-time search"));
        }
    }
    while (t_hi - t_lo) / t_hi > 0.01 {
        let mid = 0.5 * (t_lo + t_hi);
        if fid(mid)? >= threshold {
            t_hi = mid;
        } else {
            t_lo = mid;
        }
    }
    Ok(t_hi)
}

/// The `k`-th Trotter layer (`k` in `1..=M`).
///
/// ST1 applies the odd-bond exponential for `dt` then the even-bond
/// exponential at the instantaneous coupling `k dt / T_max`; ST2 symmetrizes
/// with odd half-steps. Each two-site exponential is one entangler with
/// `theta_x = theta_y = theta_z = -J tau`.
pub fn build_trotter_step(run: &AdiabaticRun, k: u32) -> SimResult<Circuit> {
    if k == 0 || k > run.m_steps {
        return Err(SimError::InvalidConfig(format!(
            "step index {k} outside 1..={}",
            run.m_steps
        )));
    }
    let mut circuit = Circuit::new(run.n_qubits);
    push_trotter_step(&mut circuit, run, k)?;
    Ok(circuit)
}

fn push_trotter_step(circuit: &mut Circuit, run: &AdiabaticRun, k: u32) -> SimResult<()> {
    let n = run.n_qubits;
    let dt = run.dt();
    let theta_even = -(k as f64) * dt * dt / run.t_max;
    let push_bonds = |circuit: &mut Circuit, parity: usize, theta: f64| -> SimResult<()> {
        for left in (parity..n - 1).step_by(2) {
            circuit.push(Gate::Entangler {
                a: left,
                b: left + 1,
                theta: [theta; 3],
            })?;
        }
        Ok(())
    };
    match run.order {
        TrotterOrder::St1 => {
            push_bonds(circuit, 0, -dt)?;
            push_bonds(circuit, 1, theta_even)?;
        }
        TrotterOrder::St2 => {
            push_bonds(circuit, 0, -dt / 2.0)?;
            push_bonds(circuit, 1, theta_even)?;
            push_bonds(circuit, 0, -dt / 2.0)?;
        }
    }
    Ok(())
}

/// The full `M`-layer circuit, one layer mark per Trotter step.
pub fn build_adiabatic_circuit(run: &AdiabaticRun) -> SimResult<Circuit> {
    let mut circuit = Circuit::new(run.n_qubits);
    for k in 1..=run.m_steps {
        push_trotter_step(&mut circuit, run, k)?;
        circuit.mark_layer()?;
    }
    Ok(circuit)
}

/// Output of the digitized evolution applied to the singlet product.
pub fn trotter_state(run: &AdiabaticRun) -> SimResult<PureState> {
    let mut psi = PureState::singlet_product(run.n_qubits)?;
    psi.apply_circuit(&build_adiabatic_circuit(run)?)?;
    Ok(psi)
}

/// Smallest depth `M` whose circuit output reaches the threshold fidelity,
/// found by doubling then integer bisection.
pub fn min_layers_adiabatic(
    n: usize,
    threshold: f64,
    order: TrotterOrder,
    t_max: f64,
) -> SimResult<u32> {
    let gs = ground_state(&HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, n)?)?;
    min_layers_adiabatic_with_target(n, threshold, order, t_max, &gs)
}

/// As [`min_layers_adiabatic`] with a precomputed ground state.
pub fn min_layers_adiabatic_with_target(
    n: usize,
    threshold: f64,
    order: TrotterOrder,
    t_max: f64,
    gs: &GroundStateResult,
) -> SimResult<u32> {
    let fid = |m: u32| -> SimResult<f64> {
        let run = AdiabaticRun::new(n, t_max, m, order, threshold)?;
        gs.fidelity_of(&trotter_state(&run)?)
    };
    let mut hi = 1u32;
    while fid(hi)? < threshold {
        hi = hi
            .checked_mul(2)
            .filter(|&m| m <= DEPTH_CAP)
            .ok_or(SimError::SearchCapExceeded("Trotter depth search"))?;
    }
    let mut lo = hi / 2; // lo fails (or is 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fid(mid)? >= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_time_returns_the_singlet_product() {
        let psi = exact_evolve(4, 0.0, 0.02).unwrap();
        let singlet = PureState::singlet_product(4).unwrap();
        assert_abs_diff_eq!(psi.fidelity(&singlet).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn long_ramps_approach_the_ground_state() {
        let spec = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 4).unwrap();
        let gs = ground_state(&spec).unwrap();
        let f_short = gs
            .fidelity_of(&exact_evolve(4, 0.2, 0.02).unwrap())
            .unwrap();
        let f_long = gs
            .fidelity_of(&exact_evolve(4, 30.0, 0.02).unwrap())
            .unwrap();
        assert!(f_long > 0.999, "long-ramp fidelity {f_long}");
        assert!(f_long > f_short);
    }

    #[test]
    fn trotter_step_counts_per_layer() {
        // n=4: ST1 layer has 3 entanglers (9 CNOTs), ST2 has 5 (15 CNOTs)
        let st1 = AdiabaticRun::new(4, 1.0, 15, TrotterOrder::St1, 0.99).unwrap();
        let st2 = AdiabaticRun::new(4, 1.0, 3, TrotterOrder::St2, 0.99).unwrap();
        assert_eq!(build_trotter_step(&st1, 1).unwrap().cnot_count(), 9);
        assert_eq!(build_trotter_step(&st2, 1).unwrap().cnot_count(), 15);
        assert_eq!(build_adiabatic_circuit(&st1).unwrap().cnot_count(), 135);
        assert_eq!(build_adiabatic_circuit(&st2).unwrap().cnot_count(), 45);
    }

    #[test]
    fn vanishing_time_step_gives_identity_layer() {
        let run = AdiabaticRun::new(4, 1e-9, 1, TrotterOrder::St2, 0.99).unwrap();
        let out = trotter_state(&run).unwrap();
        let singlet = PureState::singlet_product(4).unwrap();
        assert_abs_diff_eq!(out.fidelity(&singlet).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn resource_formulas_match_hand_counts() {
        assert_eq!(
            resource_count(8, 113, TrotterOrder::St1),
            ResourceCount {
                layers: 113,
                cnots: 2373
            }
        );
        assert_eq!(
            resource_count(8, 18, TrotterOrder::St2),
            ResourceCount {
                layers: 18,
                cnots: 594
            }
        );
        assert_eq!(
            resource_count(20, 132, TrotterOrder::St2),
            ResourceCount {
                layers: 132,
                cnots: 11484
            }
        );
    }

    #[test]
    fn trotter_circuit_stays_in_the_sz_zero_sector() {
        let run = AdiabaticRun::new(4, 1.0, 7, TrotterOrder::St2, 0.99).unwrap();
        let out = trotter_state(&run).unwrap();
        assert!(out.sz_sector_leakage(0) < 1e-10);
    }

    #[test]
    fn threshold_monotonicity_of_min_tmax() {
        let t1 = min_tmax(4, 0.9).unwrap();
        let t2 = min_tmax(4, 0.99).unwrap();
        assert!(t1 <= t2);
    }
}
