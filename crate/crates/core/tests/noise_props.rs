//! Noise-channel properties: the Kraus form against direct Lindblad
//! integration, CPTP sanity, and monotone degradation.

use num_complex::Complex64;
use spinsim_core::{
    avg_noisy_fidelity, dephasing_channel, ground_state, noisy_layered_output, AnsatzSpec,
    HamiltonianSpec, MixedState, Model, PureState,
};

/// RK4 integration of `d rho/dt = gamma sum_k (Z_k rho Z_k - rho)` for two
/// qubits, dense and independent of the channel implementation.
fn lindblad_rk4(rho0: &[Complex64], gamma: f64, t: f64, steps: usize) -> Vec<Complex64> {
    let dim = 4usize;
    let zsign = |k: usize, i: usize| -> f64 {
        // qubit k in {0,1}, site 0 = most significant bit
        if i & (1 << (1 - k)) == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let rhs = |rho: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Complex64::ZERO;
                for k in 0..2 {
                    acc += rho[r * dim + c] * (zsign(k, r) * zsign(k, c) - 1.0);
                }
                out[r * dim + c] = acc * gamma;
            }
        }
        out
    };
    let h = t / steps as f64;
    let mut rho = rho0.to_vec();
    for _ in 0..steps {
        let k1 = rhs(&rho);
        let mut tmp: Vec<Complex64> = rho
            .iter()
            .zip(&k1)
            .map(|(r, k)| r + k * (h / 2.0))
            .collect();
        let k2 = rhs(&tmp);
        tmp = rho
            .iter()
            .zip(&k2)
            .map(|(r, k)| r + k * (h / 2.0))
            .collect();
        let k3 = rhs(&tmp);
        tmp = rho.iter().zip(&k3).map(|(r, k)| r + k * h).collect();
        let k4 = rhs(&tmp);
        for i in 0..rho.len() {
            rho[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    rho
}

#[test]
fn kraus_form_matches_lindblad_integration() {
    // an entangled two-qubit state with rich coherences
    let amps = vec![
        Complex64::new(0.6, 0.1),
        Complex64::new(-0.3, 0.4),
        Complex64::new(0.2, -0.5),
        Complex64::new(0.1, 0.3),
    ];
    let mut psi = PureState::from_amplitudes(amps).unwrap();
    psi.normalize();
    let mut rho = MixedState::from_pure(&psi);
    let gamma_dt = 0.17;
    let oracle = lindblad_rk4(rho.matrix(), 1.0, gamma_dt, 4000);
    dephasing_channel(&mut rho, gamma_dt).unwrap();
    let worst = rho
        .matrix()
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-8, "kraus vs lindblad deviation {worst}");
}

#[test]
fn dephasing_is_trace_preserving_hermitian_and_contractive() {
    let model = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 4).unwrap();
    let spec = AnsatzSpec::new(model, 2, true).unwrap();
    let theta: Vec<f64> = (0..spec.param_count()).map(|i| 0.11 * i as f64).collect();
    let mut prev_purity = 1.0;
    for gamma_dt in [0.0, 0.01, 0.05, 0.2] {
        let rho = noisy_layered_output(&spec, &theta, gamma_dt).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-10);
        assert!(rho.trace().im.abs() < 1e-12);
        assert!(rho.hermiticity_error() < 1e-10);
        assert!(rho.purity() <= prev_purity + 1e-10);
        prev_purity = rho.purity();
    }
}

#[test]
fn mean_fidelity_degrades_monotonically_with_noise_strength() {
    // small chain so the Monte-Carlo sweep stays cheap; 2-sigma slack
    let model = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 4).unwrap();
    let gs = ground_state(&model).unwrap();
    let spec = AnsatzSpec::new(model, 2, true).unwrap();
    let theta: Vec<f64> = (0..spec.param_count())
        .map(|i| 0.2 * ((i % 5) as f64 - 2.0))
        .collect();
    let mut prev = f64::INFINITY;
    let mut prev_std = 0.0;
    for h in [0.0, 0.05, 0.1, 0.2, 0.4] {
        let stats = avg_noisy_fidelity(&spec, &theta, h, 80, 5, &gs).unwrap();
        assert!(
            stats.mean <= prev + 2.0 * (stats.std + prev_std),
            "mean fidelity rose from {prev} to {} at h={h}",
            stats.mean
        );
        prev = stats.mean;
        prev_std = stats.std;
    }
}
