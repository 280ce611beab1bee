//! Variational-loop properties across all supported models.

use spinsim_core::seeding::rng_from_seed;
use spinsim_core::{
    energy, gradient, ground_state, init_random, optimize, output_state, AnsatzSpec, Gate,
    HamiltonianSpec, Model, OptimizeOptions,
};

fn models() -> Vec<(HamiltonianSpec, bool)> {
    vec![
        (
            HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 4).unwrap(),
            true,
        ),
        (
            HamiltonianSpec::new(
                Model::Xyz {
                    jx: 1.0,
                    jy: 0.5,
                    jz: 0.8,
                },
                4,
            )
            .unwrap(),
            true,
        ),
        (
            HamiltonianSpec::new(
                Model::Xyz {
                    jx: 0.7,
                    jy: -0.3,
                    jz: 1.2,
                },
                6,
            )
            .unwrap(),
            false,
        ),
        (
            HamiltonianSpec::new(
                Model::Kondo {
                    j: 1.0,
                    j_prime: 0.6,
                },
                4,
            )
            .unwrap(),
            false,
        ),
    ]
}

#[test]
fn adjoint_gradient_matches_finite_differences_across_models() {
    let mut rng = rng_from_seed(0xF1D);
    let mut checked = 0;
    for (model, tied) in models() {
        for layers in [1usize, 2] {
            let spec = AnsatzSpec::new(model.clone(), layers, tied).unwrap();
            for _ in 0..3 {
                let theta = init_random(spec.param_count(), &mut rng);
                let grad = gradient(&spec, &theta).unwrap();
                let h = 1e-5;
                for i in 0..theta.len() {
                    let mut tp = theta.clone();
                    let mut tm = theta.clone();
                    tp[i] += h;
                    tm[i] -= h;
                    let fd =
                        (energy(&spec, &tp).unwrap() - energy(&spec, &tm).unwrap()) / (2.0 * h);
                    let tol = (1e-6 * fd.abs()).max(1e-9);
                    assert!(
                        (grad[i] - fd).abs() < tol,
                        "model {:?} layers {layers} param {i}: {} vs {}",
                        model.model(),
                        grad[i],
                        fd
                    );
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "need at least 20 instances, got {checked}");
}

#[test]
fn bound_phase_angles_satisfy_the_tying_rule_exactly() {
    let model = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 8).unwrap();
    let spec = AnsatzSpec::new(model, 3, true).unwrap();
    let mut rng = rng_from_seed(3);
    let theta = init_random(spec.param_count(), &mut rng);
    let circuit = spec.bind(&theta).unwrap();
    for layer in circuit.layers() {
        let mut site_angle = [f64::NAN; 8];
        for g in layer {
            if let Gate::Phase { qubit, angle } = g {
                site_angle[*qubit] = *angle;
            }
        }
        for k in 0..4 {
            assert_eq!(
                site_angle[k], -site_angle[7 - k],
                "tied pair ({k},{}) must carry opposite angles",
                7 - k
            );
        }
    }
}

#[test]
fn sz_sector_confinement_for_conserving_ansaetze() {
    let mut rng = rng_from_seed(11);
    for (model, tied) in [
        (
            HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 6).unwrap(),
            true,
        ),
        (
            HamiltonianSpec::new(
                Model::Kondo {
                    j: 1.0,
                    j_prime: 0.6,
                },
                6,
            )
            .unwrap(),
            false,
        ),
    ] {
        let spec = AnsatzSpec::new(model, 2, tied).unwrap();
        assert!(spec.sz_conserving());
        for _ in 0..5 {
            let theta = init_random(spec.param_count(), &mut rng);
            let out = output_state(&spec, &theta).unwrap();
            assert!(out.sz_sector_leakage(0) < 1e-10);
        }
    }
}

#[test]
fn converged_small_chain_sits_near_the_exact_ground_energy() {
    // n=4, M=2: a converged 50L-budget run lands within 1e-2 J of the exact
    // ground energy (not every random start converges; take the best of a
    // small deterministic batch)
    let model = HamiltonianSpec::new(Model::Heisenberg { j: 1.0 }, 4).unwrap();
    let gs = ground_state(&model).unwrap();
    let spec = AnsatzSpec::new(model, 2, true).unwrap();
    let best = (1..=4)
        .map(|seed| {
            let mut rng = rng_from_seed(seed);
            let theta0 = init_random(spec.param_count(), &mut rng);
            optimize(
                &spec,
                theta0,
                50 * spec.param_count(),
                Some(&gs),
                &OptimizeOptions::default(),
            )
            .unwrap()
        })
        .min_by(|a, b| a.final_energy().total_cmp(&b.final_energy()))
        .unwrap();
    assert!(
        best.final_energy() - gs.energy < 1e-2,
        "best final energy {} vs exact {}",
        best.final_energy(),
        gs.energy
    );
    assert!(best.final_fidelity().unwrap() > 0.99);
}
