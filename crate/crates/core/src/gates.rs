//! Gate descriptors and matrix-free application kernels.
//!
//! Gates act on a [`PureState`] in `O(2^n)` time without ever materializing
//! a `2^n x 2^n` matrix. Conventions follow the usual digital gate set:
//! `P(theta) = diag(1, e^{i theta})`, `R_alpha(theta) = exp(i theta/2 sigma_alpha)`,
//! and the symmetric entangler `N(tx,ty,tz) = exp(i(tx XX + ty YY + tz ZZ))`,
//! which decomposes into three CNOTs and five y/z rotations.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{SimError, SimResult};
use crate::state::{MixedState, PureState};

/// A 4x4 complex matrix in the basis `|00>,|01>,|10>,|11>` of the gate's
/// qubit pair (first listed qubit = more significant bit).
pub type Matrix4 = [[Complex64; 4]; 4];

/// A single gate acting on one or two sites.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `diag(1, e^{i angle})`.
    Phase { qubit: usize, angle: f64 },
    /// `exp(i angle/2 sigma_x)`.
    RotX { qubit: usize, angle: f64 },
    /// `exp(i angle/2 sigma_y)`.
    RotY { qubit: usize, angle: f64 },
    /// `exp(i angle/2 sigma_z)`.
    RotZ { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    /// `exp(i(tx XX + ty YY + tz ZZ))` on sites `(a, b)`.
    Entangler {
        a: usize,
        b: usize,
        theta: [f64; 3],
    },
    /// An explicit two-qubit unitary with a declared CNOT cost.
    FixedUnitary2Q {
        a: usize,
        b: usize,
        matrix: Box<Matrix4>,
        cnot_cost: u32,
    },
}

impl Gate {
    /// Build a `FixedUnitary2Q`, checking unitarity to 1e-10.
    pub fn fixed_unitary_2q(a: usize, b: usize, matrix: Matrix4, cnot_cost: u32) -> SimResult<Self> {
        let dev = unitarity_deviation(&matrix);
        if dev > 1e-10 {
            return Err(SimError::NotUnitary(dev));
        }
        Ok(Gate::FixedUnitary2Q {
            a,
            b,
            matrix: Box::new(matrix),
            cnot_cost,
        })
    }

    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Phase { qubit, .. }
            | Gate::RotX { qubit, .. }
            | Gate::RotY { qubit, .. }
            | Gate::RotZ { qubit, .. } => (qubit, None),
            Gate::Cnot { control, target } => (control, Some(target)),
            Gate::Entangler { a, b, .. } => (a, Some(b)),
            Gate::FixedUnitary2Q { a, b, .. } => (a, Some(b)),
        }
    }

    pub fn validate(&self, n: usize) -> SimResult<()> {
        let (q0, q1) = self.qubits();
        if q0 >= n {
            return Err(SimError::QubitOutOfRange { qubit: q0, n });
        }
        if let Some(q1) = q1 {
            if q1 >= n {
                return Err(SimError::QubitOutOfRange { qubit: q1, n });
            }
            if q1 == q0 {
                return Err(SimError::DuplicateQubit(q0));
            }
        }
        Ok(())
    }

    /// CNOTs this gate stands for once compiled to the native gate set.
    pub fn cnot_cost(&self) -> u64 {
        match self {
            Gate::Cnot { .. } => 1,
            Gate::Entangler { .. } => 3,
            Gate::FixedUnitary2Q { cnot_cost, .. } => *cnot_cost as u64,
            _ => 0,
        }
    }

    /// The inverse gate.
    pub fn dagger(&self) -> Gate {
        match self {
            Gate::Phase { qubit, angle } => Gate::Phase {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::RotX { qubit, angle } => Gate::RotX {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::RotY { qubit, angle } => Gate::RotY {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::RotZ { qubit, angle } => Gate::RotZ {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::Cnot { .. } => self.clone(),
            Gate::Entangler { a, b, theta } => Gate::Entangler {
                a: *a,
                b: *b,
                theta: [-theta[0], -theta[1], -theta[2]],
            },
            Gate::FixedUnitary2Q {
                a,
                b,
                matrix,
                cnot_cost,
            } => {
                let mut adj = [[Complex64::ZERO; 4]; 4];
                for r in 0..4 {
                    for c in 0..4 {
                        adj[r][c] = matrix[c][r].conj();
                    }
                }
                Gate::FixedUnitary2Q {
                    a: *a,
                    b: *b,
                    matrix: Box::new(adj),
                    cnot_cost: *cnot_cost,
                }
            }
        }
    }
}

/// `exp(i(tx XX + ty YY + tz ZZ))` evaluated in closed form.
///
/// The exponent is block diagonal: `{|00>,|11>}` sees `tz` plus an `XX`-type
/// coupling of strength `tx - ty`, while `{|01>,|10>}` sees `-tz` and
/// `tx + ty`.
pub fn entangler_unitary(tx: f64, ty: f64, tz: f64) -> Matrix4 {
    let zero = Complex64::ZERO;
    let ep = Complex64::from_polar(1.0, tz);
    let em = Complex64::from_polar(1.0, -tz);
    let (dm, dp) = (tx - ty, tx + ty);
    let (cm, sm) = (dm.cos(), dm.sin());
    let (cp, sp) = (dp.cos(), dp.sin());
    let i = Complex64::I;
    [
        [ep * cm, zero, zero, ep * i * sm],
        [zero, em * cp, em * i * sp, zero],
        [zero, em * i * sp, em * cp, zero],
        [ep * i * sm, zero, zero, ep * cm],
    ]
}

/// Three-CNOT realization of the entangler on sites `(a, b)`.
///
/// Equals [`entangler_unitary`] up to the constant global phase `e^{-i pi/4}`.
pub fn decompose_entangler(a: usize, b: usize, tx: f64, ty: f64, tz: f64) -> Vec<Gate> {
    vec![
        Gate::RotZ {
            qubit: b,
            angle: FRAC_PI_2,
        },
        Gate::Cnot {
            control: b,
            target: a,
        },
        Gate::RotZ {
            qubit: a,
            angle: 2.0 * tz - FRAC_PI_2,
        },
        Gate::RotY {
            qubit: b,
            angle: FRAC_PI_2 - 2.0 * tx,
        },
        Gate::Cnot {
            control: a,
            target: b,
        },
        Gate::RotY {
            qubit: b,
            angle: 2.0 * ty - FRAC_PI_2,
        },
        Gate::Cnot {
            control: b,
            target: a,
        },
        Gate::RotZ {
            qubit: a,
            angle: -FRAC_PI_2,
        },
    ]
}

fn unitarity_deviation(m: &Matrix4) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = Complex64::ZERO;
            for k in 0..4 {
                acc += m[k][r].conj() * m[k][c];
            }
            let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
            worst = worst.max((acc - expect).norm());
        }
    }
    worst
}

pub(crate) fn rot_matrix_x(angle: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let i = Complex64::I;
    [
        [Complex64::new(c, 0.0), i * s],
        [i * s, Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn rot_matrix_y(angle: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn rot_matrix_z(angle: f64) -> [[Complex64; 2]; 2] {
    [
        [Complex64::from_polar(1.0, angle / 2.0), Complex64::ZERO],
        [Complex64::ZERO, Complex64::from_polar(1.0, -angle / 2.0)],
    ]
}

/// One- or two-qubit local unitary of a gate, for generic kernels.
pub(crate) enum LocalUnitary {
    One(usize, [[Complex64; 2]; 2]),
    Two(usize, usize, Matrix4),
}

pub(crate) fn local_unitary(gate: &Gate) -> LocalUnitary {
    match gate {
        Gate::Phase { qubit, angle } => LocalUnitary::One(
            *qubit,
            [
                [Complex64::ONE, Complex64::ZERO],
                [Complex64::ZERO, Complex64::from_polar(1.0, *angle)],
            ],
        ),
        Gate::RotX { qubit, angle } => LocalUnitary::One(*qubit, rot_matrix_x(*angle)),
        Gate::RotY { qubit, angle } => LocalUnitary::One(*qubit, rot_matrix_y(*angle)),
        Gate::RotZ { qubit, angle } => LocalUnitary::One(*qubit, rot_matrix_z(*angle)),
        Gate::Cnot { control, target } => {
            let (o, l) = (Complex64::ONE, Complex64::ZERO);
            LocalUnitary::Two(
                *control,
                *target,
                [[o, l, l, l], [l, o, l, l], [l, l, l, o], [l, l, o, l]],
            )
        }
        Gate::Entangler { a, b, theta } => {
            LocalUnitary::Two(*a, *b, entangler_unitary(theta[0], theta[1], theta[2]))
        }
        Gate::FixedUnitary2Q { a, b, matrix, .. } => LocalUnitary::Two(*a, *b, **matrix),
    }
}

// ---------------------------------------------------------------------------
// Pure-state kernels
// ---------------------------------------------------------------------------

fn apply_1q(amps: &mut [Complex64], n: usize, qubit: usize, u: &[[Complex64; 2]; 2]) {
    let stride = 1usize << (n - 1 - qubit);
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for i0 in base..base + stride {
            let i1 = i0 + stride;
            let a0 = amps[i0];
            let a1 = amps[i1];
            amps[i0] = u[0][0] * a0 + u[0][1] * a1;
            amps[i1] = u[1][0] * a0 + u[1][1] * a1;
        }
        base += 2 * stride;
    }
}

fn apply_phase(amps: &mut [Complex64], n: usize, qubit: usize, angle: f64) {
    let stride = 1usize << (n - 1 - qubit);
    let phase = Complex64::from_polar(1.0, angle);
    let dim = amps.len();
    let mut base = stride;
    while base < dim {
        for i in base..base + stride {
            amps[i] *= phase;
        }
        base += 2 * stride;
    }
}

fn apply_cnot(amps: &mut [Complex64], n: usize, control: usize, target: usize) {
    let sc = 1usize << (n - 1 - control);
    let st = 1usize << (n - 1 - target);
    let dim = amps.len();
    // iterate indices with control bit set and target bit clear, swap with +st
    for i in 0..dim {
        if i & sc != 0 && i & st == 0 {
            amps.swap(i, i + st);
        }
    }
}

/// The `k`-th index quadruple `(00,01,10,11)` of a qubit pair with bit
/// strides `sa`, `sb` (first listed qubit = more significant).
fn quad_indices(k: usize, sa: usize, sb: usize) -> [usize; 4] {
    let (lo, hi) = if sa < sb { (sa, sb) } else { (sb, sa) };
    let low = k & (lo - 1);
    let mid = (k >> lo.trailing_zeros()) & ((hi >> (lo.trailing_zeros() + 1)) - 1);
    let high = k >> (hi.trailing_zeros() - 1);
    let i00 = (high << (hi.trailing_zeros() + 1)) | (mid << (lo.trailing_zeros() + 1)) | low;
    [i00, i00 | sb, i00 | sa, i00 | sa | sb]
}

fn apply_2q(amps: &mut [Complex64], n: usize, a: usize, b: usize, u: &Matrix4) {
    let sa = 1usize << (n - 1 - a);
    let sb = 1usize << (n - 1 - b);
    let dim = amps.len();
    for k in 0..dim / 4 {
        let idx = quad_indices(k, sa, sb);
        let v = [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]];
        for r in 0..4 {
            amps[idx[r]] = u[r][0] * v[0] + u[r][1] * v[1] + u[r][2] * v[2] + u[r][3] * v[3];
        }
    }
}

impl PureState {
    /// Apply one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> SimResult<()> {
        let n = self.n_qubits();
        gate.validate(n)?;
        let amps = self.amplitudes_mut();
        match gate {
            Gate::Phase { qubit, angle } => apply_phase(amps, n, *qubit, *angle),
            Gate::RotX { qubit, angle } => apply_1q(amps, n, *qubit, &rot_matrix_x(*angle)),
            Gate::RotY { qubit, angle } => apply_1q(amps, n, *qubit, &rot_matrix_y(*angle)),
            Gate::RotZ { qubit, angle } => apply_1q(amps, n, *qubit, &rot_matrix_z(*angle)),
            Gate::Cnot { control, target } => apply_cnot(amps, n, *control, *target),
            Gate::Entangler { a, b, theta } => {
                let u = entangler_unitary(theta[0], theta[1], theta[2]);
                apply_2q(amps, n, *a, *b, &u);
            }
            Gate::FixedUnitary2Q { a, b, matrix, .. } => apply_2q(amps, n, *a, *b, matrix),
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Density-matrix kernels: rho -> G rho G^dagger
// ---------------------------------------------------------------------------

fn rows_1q(mat: &mut [Complex64], dim: usize, n: usize, q: usize, u: &[[Complex64; 2]; 2]) {
    let stride = 1usize << (n - 1 - q);
    let mut base = 0;
    while base < dim {
        for r0 in base..base + stride {
            let r1 = r0 + stride;
            for c in 0..dim {
                let x0 = mat[r0 * dim + c];
                let x1 = mat[r1 * dim + c];
                mat[r0 * dim + c] = u[0][0] * x0 + u[0][1] * x1;
                mat[r1 * dim + c] = u[1][0] * x0 + u[1][1] * x1;
            }
        }
        base += 2 * stride;
    }
}

fn cols_1q_dag(mat: &mut [Complex64], dim: usize, n: usize, q: usize, u: &[[Complex64; 2]; 2]) {
    let stride = 1usize << (n - 1 - q);
    for r in 0..dim {
        let row = &mut mat[r * dim..(r + 1) * dim];
        let mut base = 0;
        while base < dim {
            for c0 in base..base + stride {
                let c1 = c0 + stride;
                let x0 = row[c0];
                let x1 = row[c1];
                // (rho U^dag)[r,c] = sum_b rho[r,b] conj(U[c,b])
                row[c0] = x0 * u[0][0].conj() + x1 * u[0][1].conj();
                row[c1] = x0 * u[1][0].conj() + x1 * u[1][1].conj();
            }
            base += 2 * stride;
        }
    }
}

fn rows_2q(mat: &mut [Complex64], dim: usize, n: usize, a: usize, b: usize, u: &Matrix4) {
    let sa = 1usize << (n - 1 - a);
    let sb = 1usize << (n - 1 - b);
    for k in 0..dim / 4 {
        let rs = quad_indices(k, sa, sb);
        for c in 0..dim {
            let v = [
                mat[rs[0] * dim + c],
                mat[rs[1] * dim + c],
                mat[rs[2] * dim + c],
                mat[rs[3] * dim + c],
            ];
            for r in 0..4 {
                mat[rs[r] * dim + c] =
                    u[r][0] * v[0] + u[r][1] * v[1] + u[r][2] * v[2] + u[r][3] * v[3];
            }
        }
    }
}

fn cols_2q_dag(mat: &mut [Complex64], dim: usize, n: usize, a: usize, b: usize, u: &Matrix4) {
    let sa = 1usize << (n - 1 - a);
    let sb = 1usize << (n - 1 - b);
    for r in 0..dim {
        let row = &mut mat[r * dim..(r + 1) * dim];
        for k in 0..dim / 4 {
            let cs = quad_indices(k, sa, sb);
            let v = [row[cs[0]], row[cs[1]], row[cs[2]], row[cs[3]]];
            for c in 0..4 {
                row[cs[c]] = v[0] * u[c][0].conj()
                    + v[1] * u[c][1].conj()
                    + v[2] * u[c][2].conj()
                    + v[3] * u[c][3].conj();
            }
        }
    }
}

impl MixedState {
    /// Conjugate by one gate: `rho -> G rho G^dagger`.
    pub fn apply_gate(&mut self, gate: &Gate) -> SimResult<()> {
        let n = self.n_qubits();
        gate.validate(n)?;
        let dim = self.dim();
        match local_unitary(gate) {
            LocalUnitary::One(q, u) => {
                rows_1q(self.matrix_mut(), dim, n, q, &u);
                cols_1q_dag(self.matrix_mut(), dim, n, q, &u);
            }
            LocalUnitary::Two(a, b, u) => {
                rows_2q(self.matrix_mut(), dim, n, a, b, &u);
                cols_2q_dag(self.matrix_mut(), dim, n, a, b, &u);
            }
        }
        Ok(())
    }
}
