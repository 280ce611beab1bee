//! Restarted Lanczos with full reorthogonalization for the lowest eigenpair
//! of a real symmetric operator given only its matvec.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{SimError, SimResult};
use crate::seeding::rng_from_seed;
use rand::Rng;

pub(crate) struct LanczosOptions {
    pub window: usize,
    pub max_restarts: usize,
    /// Convergence on the explicit residual `||H v - theta v||`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            window: 120,
            max_restarts: 400,
            tol: 1e-9,
            seed: 0x4C41_4E43,
        }
    }
}

/// Lowest eigenpair of the operator restricted to the complement of
/// `deflate` (which must hold orthonormal, converged eigenvectors).
pub(crate) fn lowest_eigenpair<F>(
    dim: usize,
    matvec: F,
    deflate: &[&[f64]],
    opts: &LanczosOptions,
) -> SimResult<(f64, Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let window = opts.window.min(dim);
    let mut rng = rng_from_seed(opts.seed);
    let mut v: Vec<f64> = (0..dim)
        .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
        .collect();
    project_out(&mut v, deflate);
    normalize(&mut v)
        .ok_or(SimError::NoConvergence("lanczos start vector vanished"))?;

    for _restart in 0..opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![v.clone()];
        let mut alphas: Vec<f64> = Vec::with_capacity(window);
        let mut betas: Vec<f64> = Vec::with_capacity(window);
        for j in 0..window {
            let mut w = matvec(&basis[j]);
            project_out(&mut w, deflate);
            alphas.push(dot(&basis[j], &w));
            // full reorthogonalization, two passes
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    axpy(&mut w, -c, q);
                }
            }
            let beta = norm(&w);
            if beta < 1e-13 || j + 1 == window || basis.len() == dim {
                break;
            }
            betas.push(beta);
            scale(&mut w, 1.0 / beta);
            basis.push(w);
        }

        let m = alphas.len();
        let mut tri = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            tri[(i, i)] = alphas[i];
            if i + 1 < m {
                tri[(i, i + 1)] = betas[i];
                tri[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(tri);
        let mut best = 0;
        for i in 1..m {
            if eig.eigenvalues[i] < eig.eigenvalues[best] {
                best = i;
            }
        }
        let theta = eig.eigenvalues[best];
        let y = eig.eigenvectors.column(best);
        let mut ritz = vec![0.0; dim];
        for (i, q) in basis.iter().enumerate() {
            axpy(&mut ritz, y[i], q);
        }
        project_out(&mut ritz, deflate);
        normalize(&mut ritz).ok_or(SimError::NoConvergence("lanczos ritz vector vanished"))?;

        let mut res = matvec(&ritz);
        project_out(&mut res, deflate);
        axpy(&mut res, -theta, &ritz);
        let residual = norm(&res);
        if residual < opts.tol {
            return Ok((theta, ritz, residual));
        }
        v = ritz;
    }
    Err(SimError::NoConvergence(
        "lanczos restarts exhausted before reaching the residual tolerance",
    ))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &mut [f64], c: f64) {
    for x in a {
        *x *= c;
    }
}

fn axpy(y: &mut [f64], c: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

fn normalize(a: &mut [f64]) -> Option<f64> {
    let n = norm(a);
    if n < 1e-300 {
        return None;
    }
    scale(a, 1.0 / n);
    Some(n)
}

fn project_out(v: &mut [f64], basis: &[&[f64]]) {
    for q in basis {
        let c = dot(q, v);
        axpy(v, -c, q);
    }
}
