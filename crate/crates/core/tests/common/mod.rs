//! Dense brute-force oracles shared by the integration tests.
//!
//! Everything here builds explicit `2^n x 2^n` matrices from Pauli
//! definitions and Kronecker products, independent of the library's
//! stride kernels, so agreement between the two is a real cross-check.

#![allow(dead_code)]

use num_complex::Complex64;
use spinsim_core::{Gate, PureState};

pub type CMat = Vec<Vec<Complex64>>;

pub fn zeros(n: usize) -> CMat {
    vec![vec![Complex64::ZERO; n]; n]
}

pub fn eye(n: usize) -> CMat {
    let mut m = zeros(n);
    for i in 0..n {
        m[i][i] = Complex64::ONE;
    }
    m
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let p = b[0].len();
    let k = b.len();
    let mut out = zeros(n);
    for i in 0..n {
        out[i] = (0..p)
            .map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum())
            .collect();
    }
    out
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = zeros(ra * rb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn pauli(which: char) -> CMat {
    let (o, z, i) = (Complex64::ONE, Complex64::ZERO, Complex64::I);
    match which {
        'i' => vec![vec![o, z], vec![z, o]],
        'x' => vec![vec![z, o], vec![o, z]],
        'y' => vec![vec![z, -i], vec![i, z]],
        'z' => vec![vec![o, z], vec![z, -o]],
        _ => panic!("unknown pauli"),
    }
}

/// Embed a single-site operator at `site` in an `n`-site register.
pub fn embed1(n: usize, site: usize, op: &CMat) -> CMat {
    let mut m = eye(1 << site);
    m = kron(&m, op);
    kron(&m, &eye(1 << (n - site - 1)))
}

/// `sum_bonds jx XX + jy YY + jz ZZ` as a dense matrix.
pub fn dense_hamiltonian(n: usize, bonds: &[(usize, f64, f64, f64)]) -> CMat {
    let mut h = zeros(1 << n);
    for &(left, jx, jy, jz) in bonds {
        for (j, p) in [(jx, 'x'), (jy, 'y'), (jz, 'z')] {
            if j == 0.0 {
                continue;
            }
            let term = matmul(&embed1(n, left, &pauli(p)), &embed1(n, left + 1, &pauli(p)));
            for r in 0..h.len() {
                for c in 0..h.len() {
                    h[r][c] += term[r][c] * j;
                }
            }
        }
    }
    h
}

/// Dense matrix of one gate from the textbook definitions.
pub fn dense_gate(n: usize, gate: &Gate) -> CMat {
    match gate {
        Gate::Phase { qubit, angle } => {
            let p = vec![
                vec![Complex64::ONE, Complex64::ZERO],
                vec![Complex64::ZERO, Complex64::from_polar(1.0, *angle)],
            ];
            embed1(n, *qubit, &p)
        }
        Gate::RotX { qubit, angle } => embed1(n, *qubit, &expi(&pauli('x'), angle / 2.0)),
        Gate::RotY { qubit, angle } => embed1(n, *qubit, &expi(&pauli('y'), angle / 2.0)),
        Gate::RotZ { qubit, angle } => embed1(n, *qubit, &expi(&pauli('z'), angle / 2.0)),
        Gate::Cnot { control, target } => {
            // |0><0|_c (x) I + |1><1|_c (x) X_t
            let p0 = vec![
                vec![Complex64::ONE, Complex64::ZERO],
                vec![Complex64::ZERO, Complex64::ZERO],
            ];
            let p1 = vec![
                vec![Complex64::ZERO, Complex64::ZERO],
                vec![Complex64::ZERO, Complex64::ONE],
            ];
            let a = embed1(n, *control, &p0);
            let b = matmul(
                &embed1(n, *control, &p1),
                &embed1(n, *target, &pauli('x')),
            );
            let mut m = a;
            for r in 0..m.len() {
                for c in 0..m.len() {
                    m[r][c] += b[r][c];
                }
            }
            m
        }
        Gate::Entangler { a, b, theta } => {
            // exp(i (tx XX + ty YY + tz ZZ)) via series on the 4x4, embedded
            let mut h4 = zeros(4);
            for (t, p) in [(theta[0], 'x'), (theta[1], 'y'), (theta[2], 'z')] {
                let pp = kron(&pauli(p), &pauli(p));
                for r in 0..4 {
                    for c in 0..4 {
                        h4[r][c] += pp[r][c] * t;
                    }
                }
            }
            let u4 = exp_series(&h4);
            embed2(n, *a, *b, &u4)
        }
        Gate::FixedUnitary2Q {
            a, b, matrix: m, ..
        } => {
            let mut u4 = zeros(4);
            for r in 0..4 {
                for c in 0..4 {
                    u4[r][c] = m[r][c];
                }
            }
            embed2(n, *a, *b, &u4)
        }
    }
}

/// `exp(i angle P)` for an involutory matrix `P`.
fn expi(p: &CMat, angle: f64) -> CMat {
    let n = p.len();
    let mut out = eye(n);
    let (c, s) = (angle.cos(), angle.sin());
    for r in 0..n {
        for cc in 0..n {
            out[r][cc] = out[r][cc] * c + p[r][cc] * Complex64::new(0.0, s);
        }
    }
    out
}

/// `exp(i H)` by scaled Taylor series (test-only use, small matrices).
pub fn exp_series(h: &CMat) -> CMat {
    let n = h.len();
    let norm: f64 = h
        .iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    let squarings = (norm.max(1.0)).log2().ceil().max(0.0) as u32 + 2;
    let scale = 1.0 / f64::powi(2.0, squarings as i32);
    let mut term = eye(n);
    let mut acc = eye(n);
    for k in 1..=24 {
        let mut next = zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut val = Complex64::ZERO;
                for l in 0..n {
                    val += term[r][l] * h[l][c];
                }
                next[r][c] = val * Complex64::new(0.0, scale / k as f64);
            }
        }
        term = next;
        for r in 0..n {
            for c in 0..n {
                acc[r][c] += term[r][c];
            }
        }
    }
    let mut out = acc;
    for _ in 0..squarings {
        out = matmul(&out, &out);
    }
    out
}

/// Embed a two-site operator on (possibly nonadjacent) `a < b` or `a > b`.
pub fn embed2(n: usize, a: usize, b: usize, u4: &CMat) -> CMat {
    let dim = 1 << n;
    let mut out = zeros(dim);
    let (sa, sb) = (1usize << (n - 1 - a), 1usize << (n - 1 - b));
    for col in 0..dim {
        let ca = usize::from(col & sa != 0);
        let cb = usize::from(col & sb != 0);
        let base = col & !(sa | sb);
        for ra in 0..2 {
            for rb in 0..2 {
                let row = base | (ra * sa) | (rb * sb);
                out[row][col] += u4[2 * ra + rb][2 * ca + cb];
            }
        }
    }
    out
}

pub fn apply_dense(m: &CMat, psi: &PureState) -> Vec<Complex64> {
    let a = psi.amplitudes();
    m.iter()
        .map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Distance between two matrices after dividing out a global phase fixed by
/// the largest-magnitude element of `reference`.
pub fn phase_quotient_distance(candidate: &CMat, reference: &CMat) -> f64 {
    let n = reference.len();
    let mut best = (0usize, 0usize);
    let mut mag = 0.0;
    for r in 0..n {
        for c in 0..n {
            if reference[r][c].norm() > mag {
                mag = reference[r][c].norm();
                best = (r, c);
            }
        }
    }
    let mut phase = candidate[best.0][best.1] / reference[best.0][best.1];
    phase /= Complex64::new(phase.norm(), 0.0);
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            worst = worst.max((candidate[r][c] - phase * reference[r][c]).norm());
        }
    }
    worst
}
