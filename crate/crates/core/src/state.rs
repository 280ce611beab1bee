//! Pure state vectors and density matrices over a register of qubits.
//!
//! Site 0 is the leftmost chain site and the most significant bit of the
//! basis index: `|b0 b1 .. b_{n-1}>` lives at index `sum_i b_i 2^{n-1-i}`.

use num_complex::Complex64;

use crate::error::{SimError, SimResult};

/// A normalized amplitude vector over `2^n` computational basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// `|00..0>` on `n` qubits.
    pub fn zero(n: usize) -> SimResult<Self> {
        Self::basis_index(n, 0)
    }

    /// Computational basis state from a bitstring, e.g. `basis(2, "01")`.
    pub fn basis(n: usize, bits: &str) -> SimResult<Self> {
        if bits.len() != n {
            return Err(SimError::BitstringLength {
                expected: n,
                got: bits.len(),
            });
        }
        let mut idx = 0usize;
        for ch in bits.chars() {
            idx <<= 1;
            match ch {
                '0' => {}
                '1' => idx |= 1,
                other => return Err(SimError::InvalidBitstring(other)),
            }
        }
        Self::basis_index(n, idx)
    }

    /// Basis state `|idx>` with site 0 as the most significant bit.
    pub fn basis_index(n: usize, idx: usize) -> SimResult<Self> {
        if n == 0 {
            return Err(SimError::TooFewQubits { n, min: 1 });
        }
        let dim = 1usize << n;
        if idx >= dim {
            return Err(SimError::QubitOutOfRange { qubit: idx, n });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[idx] = Complex64::ONE;
        Ok(Self { n_qubits: n, amps })
    }

    /// Product of singlets `(|01> - |10>)/sqrt(2)` on pairs (0,1), (2,3), ...
    pub fn singlet_product(n: usize) -> SimResult<Self> {
        if n == 0 {
            return Err(SimError::TooFewQubits { n, min: 2 });
        }
        if n % 2 != 0 {
            return Err(SimError::OddQubitCount(n));
        }
        let inv = 1.0 / std::f64::consts::SQRT_2;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..n / 2 {
            let mut next = vec![Complex64::ZERO; amps.len() * 4];
            for (i, &a) in amps.iter().enumerate() {
                next[4 * i + 1] = a * inv;
                next[4 * i + 2] = -a * inv;
            }
            amps = next;
        }
        Ok(Self { n_qubits: n, amps })
    }

    /// Wrap an amplitude vector; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> SimResult<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(SimError::DimensionMismatch { left: dim, right: 0 });
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> SimResult<Complex64> {
        if self.dim() != other.dim() {
            return Err(SimError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> SimResult<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Expectation of the total spin `S_z = sum_i sigma_z^i`.
    pub fn sz_expectation(&self) -> f64 {
        let n = self.n_qubits as i32;
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (n - 2 * (i.count_ones() as i32)) as f64 * a.norm_sqr())
            .sum()
    }

    /// Probability weight outside the sector with `S_z` eigenvalue `sz`.
    pub fn sz_sector_leakage(&self, sz: i32) -> f64 {
        let n = self.n_qubits as i32;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| n - 2 * (i.count_ones() as i32) != sz)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// The state with the site order reversed (mirror inversion `i <-> n-1-i`).
    pub fn mirror_reversed(&self) -> Self {
        let n = self.n_qubits;
        let dim = self.dim();
        let mut amps = vec![Complex64::ZERO; dim];
        for (i, &a) in self.amps.iter().enumerate() {
            let rev = (i.reverse_bits() >> (usize::BITS as usize - n)) & (dim - 1);
            amps[rev] = a;
        }
        Self { n_qubits: n, amps }
    }
}

/// A density matrix over `2^n` basis states, stored dense row-major.
#[derive(Debug, Clone)]
pub struct MixedState {
    n_qubits: usize,
    dim: usize,
    mat: Vec<Complex64>,
}

impl MixedState {
    /// The projector `|psi><psi|`.
    pub fn from_pure(psi: &PureState) -> Self {
        let dim = psi.dim();
        let a = psi.amplitudes();
        let mut mat = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                mat[r * dim + c] = a[r] * a[c].conj();
            }
        }
        Self {
            n_qubits: psi.n_qubits(),
            dim,
            mat,
        }
    }

    /// The maximally mixed state `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> SimResult<Self> {
        if n == 0 {
            return Err(SimError::TooFewQubits { n, min: 1 });
        }
        let dim = 1usize << n;
        let mut mat = vec![Complex64::ZERO; dim * dim];
        let p = 1.0 / dim as f64;
        for r in 0..dim {
            mat[r * dim + r] = Complex64::new(p, 0.0);
        }
        Ok(Self {
            n_qubits: n,
            dim,
            mat,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major matrix elements.
    pub fn matrix(&self) -> &[Complex64] {
        &self.mat
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut [Complex64] {
        &mut self.mat
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|r| self.mat[r * self.dim + r]).sum()
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // tr(rho^2) = sum_{rc} rho_rc * rho_cr = sum |rho_rc|^2 for Hermitian rho
        self.mat.iter().map(|x| x.norm_sqr()).sum()
    }

    /// Largest deviation `|rho_rc - conj(rho_cr)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..=r {
                let d = (self.mat[r * self.dim + c] - self.mat[c * self.dim + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `<psi|rho|psi>` as a real number.
    pub fn fidelity_to_pure(&self, psi: &PureState) -> SimResult<f64> {
        if self.dim != psi.dim() {
            return Err(SimError::DimensionMismatch {
                left: self.dim,
                right: psi.dim(),
            });
        }
        let a = psi.amplitudes();
        let mut acc = Complex64::ZERO;
        for r in 0..self.dim {
            let row = &self.mat[r * self.dim..(r + 1) * self.dim];
            let mut rho_psi = Complex64::ZERO;
            for c in 0..self.dim {
                rho_psi += row[c] * a[c];
            }
            acc += a[r].conj() * rho_psi;
        }
        Ok(acc.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_states_match_definition() {
        let s = PureState::basis(2, "00").unwrap();
        assert_eq!(s.amplitudes()[0], Complex64::ONE);
        let s = PureState::basis(2, "01").unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::ONE);
        let s = PureState::basis(1, "1").unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::ONE);
    }

    #[test]
    fn basis_rejects_bad_input() {
        assert!(matches!(
            PureState::basis(2, "0"),
            Err(SimError::BitstringLength { .. })
        ));
        assert!(matches!(
            PureState::basis(2, "0x"),
            Err(SimError::InvalidBitstring('x'))
        ));
    }

    #[test]
    fn singlet_pair_is_the_textbook_state() {
        let s = PureState::singlet_product(2).unwrap();
        let inv = 1.0 / std::f64::consts::SQRT_2;
        assert_abs_diff_eq!(s.amplitudes()[1].re, inv, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[2].re, -inv, epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-15);
        assert!(PureState::singlet_product(3).is_err());
    }

    #[test]
    fn singlet_product_has_zero_total_sz() {
        let s = PureState::singlet_product(4).unwrap();
        assert_abs_diff_eq!(s.sz_expectation(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.sz_sector_leakage(0), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_edges() {
        let a = PureState::basis(2, "00").unwrap();
        let b = PureState::basis(2, "11").unwrap();
        assert_abs_diff_eq!(a.fidelity(&a).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.fidelity(&b).unwrap(), 0.0, epsilon = 1e-15);
        let c = PureState::basis(1, "0").unwrap();
        assert!(a.fidelity(&c).is_err());
    }

    #[test]
    fn maximally_mixed_fidelity_is_uniform() {
        let rho = MixedState::maximally_mixed(2).unwrap();
        let psi = PureState::singlet_product(2).unwrap();
        assert_abs_diff_eq!(rho.fidelity_to_pure(&psi).unwrap(), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn mirror_reverses_site_order() {
        let s = PureState::basis(3, "110").unwrap();
        let m = s.mirror_reversed();
        let expect = PureState::basis(3, "011").unwrap();
        assert_abs_diff_eq!(m.fidelity(&expect).unwrap(), 1.0, epsilon = 1e-15);
    }
}
