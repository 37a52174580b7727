//! Independent oracles: explicit dense matrices built with nalgebra, no shared code paths
//! with the library beyond the public input types.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli(sym: char) -> DMatrix<C> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match sym {
        'I' => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        'X' => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        'Y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        other => panic!("bad pauli {other}"),
    }
}

pub fn kron_all(ms: &[DMatrix<C>]) -> DMatrix<C> {
    ms.iter()
        .skip(1)
        .fold(ms[0].clone(), |acc, m| acc.kronecker(m))
}

pub fn pauli_string(s: &str) -> DMatrix<C> {
    kron_all(&s.chars().map(pauli).collect::<Vec<_>>())
}

/// `⟨ψ|M|ψ⟩` by explicit matrix-vector contraction.
pub fn dense_expectation(m: &DMatrix<C>, psi: &[C]) -> C {
    let v = DVector::from_column_slice(psi);
    (v.adjoint() * m * &v)[(0, 0)]
}

/// `cos θ|+++⟩_y + sin θ|−−−⟩_y` from explicit single-qubit kets.
pub fn weighted_ghz_oracle(theta: f64) -> Vec<C> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DVector::from_column_slice(&[c(r, 0.0), c(0.0, r)]);
    let minus = DVector::from_column_slice(&[c(r, 0.0), c(0.0, -r)]);
    let ppp = plus.kronecker(&plus).kronecker(&plus);
    let mmm = minus.kronecker(&minus).kronecker(&minus);
    (ppp * c(theta.cos(), 0.0) + mmm * c(theta.sin(), 0.0))
        .iter()
        .copied()
        .collect()
}

/// Projector onto the `s = ±1` eigenspace of a Pauli axis.
pub fn projector(axis: char, s: i8) -> DMatrix<C> {
    (pauli('I') + pauli(axis) * c(f64::from(s), 0.0)) * c(0.5, 0.0)
}

/// Eight-entry Born table for a three-letter setting, mixed with uniform noise.
/// Index order: location 0 most significant, bit set ⇔ outcome −1.
pub fn born_table(psi: &[C], setting: &str, visibility: f64) -> [f64; 8] {
    let axes: Vec<char> = setting.chars().collect();
    let mut out = [0.0; 8];
    for (idx, slot) in out.iter_mut().enumerate() {
        let s = |q: usize| if idx & (1 << (2 - q)) == 0 { 1 } else { -1 };
        let proj = kron_all(&[
            projector(axes[0], s(0)),
            projector(axes[1], s(1)),
            projector(axes[2], s(2)),
        ]);
        let p = dense_expectation(&proj, psi).re;
        *slot = visibility * p + (1.0 - visibility) / 8.0;
    }
    out
}

pub fn outcome(idx: usize, q: usize) -> f64 {
    if idx & (1 << (2 - q)) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Reduced density matrix of the two locations other than `traced`, by enumeration.
pub fn reduced_two_qubit(psi: &[C], traced: usize) -> DMatrix<C> {
    let keep: Vec<usize> = (0..3).filter(|&q| q != traced).collect();
    let bit = |idx: usize, q: usize| (idx >> (2 - q)) & 1;
    let mut rho = DMatrix::from_element(4, 4, c(0.0, 0.0));
    for a in 0..8 {
        for b in 0..8 {
            if bit(a, traced) != bit(b, traced) {
                continue;
            }
            let ra = bit(a, keep[0]) * 2 + bit(a, keep[1]);
            let rb = bit(b, keep[0]) * 2 + bit(b, keep[1]);
            rho[(ra, rb)] += psi[a] * psi[b].conj();
        }
    }
    rho
}

/// Largest |eigenvalue| of a Hermitian matrix via nalgebra's symmetric eigensolver on the
/// real embedding.
pub fn hermitian_norm_oracle(m: &DMatrix<C>) -> f64 {
    let n = m.nrows();
    let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for r in 0..n {
        for col in 0..n {
            let h = m[(r, col)];
            emb[(r, col)] = h.re;
            emb[(r + n, col + n)] = h.re;
            emb[(r, col + n)] = -h.im;
            emb[(r + n, col)] = h.im;
        }
    }
    emb.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
}

pub fn bloch_matrix(v: [f64; 3]) -> DMatrix<C> {
    pauli('X') * c(v[0], 0.0) + pauli('Y') * c(v[1], 0.0) + pauli('Z') * c(v[2], 0.0)
}

/// Exact correlation terms of the operational CHSH combination under the outcome-based
/// labeling, written out case by case over the eight patterns.
pub fn outcome_based_terms(psi: &[C], visibility: f64) -> [f64; 4] {
    let zzz = born_table(psi, "ZZZ", visibility);
    // Two −1 or none: the labeled pair agrees. One −1: both maximal pairs hold that −1
    // and a +1. Three −1: every pair agrees.
    let zz: f64 = (0..8)
        .map(|i| {
            let minus = (0..3).filter(|&q| outcome(i, q) < 0.0).count();
            let v = if minus == 1 { -1.0 } else { 1.0 };
            zzz[i] * v
        })
        .sum();
    let triple = |setting: &str| -> f64 {
        let t = born_table(psi, setting, visibility);
        (0..8)
            .map(|i| t[i] * outcome(i, 0) * outcome(i, 1) * outcome(i, 2))
            .sum()
    };
    let xxz = born_table(psi, "XXZ", visibility);
    let (mut num, mut den) = (0.0, 0.0);
    for (i, p) in xxz.iter().enumerate() {
        if outcome(i, 2) > 0.0 {
            num += p * outcome(i, 0) * outcome(i, 1);
            den += p;
        }
    }
    [zz, triple("ZXX"), triple("XZX"), num / den]
}

/// CH-form probabilities straight from the Born tables.
pub fn ch_terms_oracle(psi: &[C], visibility: f64) -> [f64; 4] {
    let zzz = born_table(psi, "ZZZ", visibility);
    let p_zz: f64 = (0..8)
        .filter(|&i| (0..3).filter(|&q| outcome(i, q) < 0.0).count() >= 2)
        .map(|i| zzz[i])
        .sum();
    let mixed = |setting: &str, zloc: usize| -> f64 {
        let t = born_table(psi, setting, visibility);
        let xs: Vec<usize> = (0..3).filter(|&q| q != zloc).collect();
        (0..8)
            .filter(|&i| outcome(i, zloc) < 0.0 && outcome(i, xs[0]) != outcome(i, xs[1]))
            .map(|i| t[i])
            .sum()
    };
    let xxx = born_table(psi, "XXX", visibility);
    [p_zz, mixed("ZXX", 0), mixed("XZX", 1), xxx[0] + xxx[7]]
}
