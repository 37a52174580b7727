//! Small dense complex matrices and a cyclic Jacobi eigensolver.
//!
//! Hermitian `H = S + iT` is diagonalized through the real symmetric embedding
//! `[[S, -T], [T, S]]`, whose spectrum is that of `H` with every eigenvalue doubled.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const JACOBI_TOLERANCE: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for d in 0..dim {
            m[(d, d)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim * other.dim;
        let mut out = Self::zeros(n);
        for (r1, c1) in iproduct(self.dim) {
            let a = self[(r1, c1)];
            for (r2, c2) in iproduct(other.dim) {
                out[(r1 * other.dim + r2, c1 * other.dim + c2)] = a * other[(r2, c2)];
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part is read.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let mut emb = vec![0.0; 4 * n * n];
        let w = 2 * n;
        for (r, c) in iproduct(n) {
            let h = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
            emb[r * w + c] = h.re;
            emb[(r + n) * w + (c + n)] = h.re;
            emb[r * w + (c + n)] = -h.im;
            emb[(r + n) * w + c] = h.im;
        }
        let mut all = symmetric_eigenvalues(&mut emb, w);
        all.sort_by(f64::total_cmp);
        // Each eigenvalue of H appears twice in the embedding.
        all.into_iter().step_by(2).collect()
    }

    /// Spectral norm of a Hermitian (or anti-Hermitian, via `i·M`) matrix.
    pub fn hermitian_norm(&self) -> f64 {
        self.hermitian_eigenvalues()
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }

    /// Spectral norm of an arbitrary matrix: `sqrt(λ_max(M†M))`.
    pub fn spectral_norm(&self) -> f64 {
        let gram = &self.adjoint() * self;
        gram.hermitian_eigenvalues()
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0)
            .sqrt()
    }
}

fn iproduct(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |r| (0..n).map(move |c| (r, c)))
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Eigenvalues (unsorted) of a real symmetric `n×n` row-major matrix by cyclic Jacobi
/// rotations. `a` is overwritten.
pub fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let scale = a
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = iproduct(n)
            .filter(|(r, c)| r < c)
            .map(|(r, c)| a[r * n + c].powi(2))
            .sum();
        if off.sqrt() <= JACOBI_TOLERANCE * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A ← Jᵀ A J with J the (p, q) plane rotation.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|d| a[d * n + d]).collect()
}

/// Pauli matrices `[X, Y, Z]`.
pub fn pauli_matrices() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    [
        CMatrix::from_rows([[z, one], [one, z]]),
        CMatrix::from_rows([[z, -i], [i, z]]),
        CMatrix::from_rows([[one, z], [z, -one]]),
    ]
}

/// `v·σ` for a real 3-vector `v`.
pub fn bloch_operator(v: [f64; 3]) -> CMatrix {
    let [x, y, z] = pauli_matrices();
    let sx = x.scale_re(v[0]);
    let sy = y.scale_re(v[1]);
    let sz = z.scale_re(v[2]);
    &(&sx + &sy) + &sz
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_spectrum() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let mut a = vec![2.0, 1.0, 1.0, 2.0];
        let mut ev = symmetric_eigenvalues(&mut a, 2);
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_spectra() {
        for p in pauli_matrices() {
            let ev = p.hermitian_eigenvalues();
            assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn commutator_of_x_and_y() {
        let [x, y, z] = pauli_matrices();
        let c = x.commutator(&y);
        assert!(c.max_abs_diff(&z.scale(Complex64::new(0.0, 2.0))) < 1e-15);
        assert!((c.spectral_norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kron_dimensions_and_identity() {
        let [x, _, z] = pauli_matrices();
        let xz = x.kron(&z);
        assert_eq!(xz.dim(), 4);
        let sq = &xz * &xz;
        assert!(sq.max_abs_diff(&CMatrix::identity(4)) < 1e-15);
    }
}
