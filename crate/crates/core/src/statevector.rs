//! Dense pure states over the computational basis and Pauli-string expectation values.
//!
//! Qubit 0 is the leftmost tensor factor, so it maps to the most significant bit of a
//! basis index. The y-spin eigenstates are expanded as `|±⟩_y = (|0⟩ ± i|1⟩)/√2`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 12;

/// Tolerance on `Σ|amp|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Imaginary parts of an expectation value above this indicate a non-Hermitian evaluation.
pub const IMAG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("a GHZ state needs at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("register of {0} qubits exceeds the dense limit of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("amplitude vector of length {0} is not a power of two")]
    BadLength(usize),
    #[error("state norm² is {0}, expected 1")]
    NotNormalized(f64),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("operator acts on {operator} qubits but the state has {state}")]
    LengthMismatch { operator: usize, state: usize },
    #[error("expectation value has imaginary part {0:e}")]
    NonReal(f64),
    #[error("unknown Pauli symbol {0:?}")]
    BadPauli(char),
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self, StateError> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(StateError::BadPauli(other)),
        }
    }
}

/// Tensor product of single-qubit Paulis, leftmost factor acting on qubit 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self { ops }
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self {
            ops: vec![Pauli::I; num_qubits],
        }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }
}

impl FromStr for PauliString {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(Pauli::from_symbol)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ops
            .iter()
            .try_for_each(|p| write!(f, "{}", p.symbol()))
    }
}

/// Normalized pure state of `num_qubits` qubits. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps an already normalized amplitude vector.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(StateError::NotNormalized(norm_sqr));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(StateError::ZeroVector);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `e^{iφ}|ψ⟩`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let phase = Complex64::from_polar(1.0, phi);
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    /// Bit mask selecting qubit `q` inside a basis index.
    pub fn qubit_mask(&self, q: usize) -> usize {
        1 << (self.num_qubits - 1 - q)
    }

    /// `⟨ψ|P|ψ⟩` for a Pauli string `P`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, StateError> {
        if p.len() != self.num_qubits {
            return Err(StateError::LengthMismatch {
                operator: p.len(),
                state: self.num_qubits,
            });
        }
        let mut flip = 0usize;
        let mut z_mask = 0usize;
        let mut y_count = 0u32;
        for (q, op) in p.ops().iter().enumerate() {
            let bit = self.qubit_mask(q);
            match op {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    z_mask |= bit;
                    y_count += 1;
                }
                Pauli::Z => z_mask |= bit,
            }
        }
        // Y = i·X·Z, so P|b⟩ = i^{#Y} (-1)^{popcount(b & z_mask)} |b ^ flip⟩.
        let y_phase = Complex64::i().powu(y_count);
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, amp) in self.amplitudes.iter().enumerate() {
            let sign = if (b & z_mask).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            acc += self.amplitudes[b ^ flip].conj() * amp * sign;
        }
        acc *= y_phase;
        if acc.im.abs() > IMAG_TOLERANCE {
            return Err(StateError::NonReal(acc.im));
        }
        Ok(acc.re)
    }
}

fn qubits_for_len(len: usize) -> Result<usize, StateError> {
    if len < 2 || !len.is_power_of_two() {
        return Err(StateError::BadLength(len));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(StateError::TooManyQubits(n));
    }
    Ok(n)
}

/// Amplitude of `|±…±⟩_y` on basis index `b`: `2^{-n/2}·(±i)^{popcount(b)}`.
fn y_product_amplitude(num_qubits: usize, b: usize, plus: bool) -> Complex64 {
    let unit = if plus {
        Complex64::i()
    } else {
        -Complex64::i()
    };
    unit.powu(b.count_ones()) * 0.5f64.powf(num_qubits as f64 / 2.0)
}

fn y_superposition(num_qubits: usize, w_plus: f64, w_minus: f64) -> Vec<Complex64> {
    (0..1usize << num_qubits)
        .map(|b| {
            y_product_amplitude(num_qubits, b, true) * w_plus
                + y_product_amplitude(num_qubits, b, false) * w_minus
        })
        .collect()
}

/// `(|+…+⟩_y + |−…−⟩_y)/√2` on `num_qubits` qubits.
pub fn make_ghz(num_qubits: usize) -> Result<StateVector, StateError> {
    if num_qubits < 2 {
        return Err(StateError::TooFewQubits(num_qubits));
    }
    if num_qubits > MAX_QUBITS {
        return Err(StateError::TooManyQubits(num_qubits));
    }
    let w = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_amplitudes(y_superposition(num_qubits, w, w))
}

/// `cos θ|+++⟩_y + sin θ|−−−⟩_y`. `θ = π/4` is the three-qubit GHZ state.
pub fn make_weighted_ghz(theta: f64) -> StateVector {
    // The two branches are orthogonal so the result is normalized for every θ.
    let amplitudes = y_superposition(3, theta.cos(), theta.sin());
    StateVector {
        num_qubits: 3,
        amplitudes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn ev(state: &StateVector, p: &str) -> f64 {
        state.expectation(&p.parse().unwrap()).unwrap()
    }

    #[test]
    fn ghz_stabilizers() {
        let ghz = make_ghz(3).unwrap();
        assert!((ev(&ghz, "ZZZ") - 1.0).abs() < 1e-12);
        for p in ["ZXX", "XZX", "XXZ"] {
            assert!((ev(&ghz, p) + 1.0).abs() < 1e-12, "{p}");
        }
        assert!((ghz.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_is_one() {
        let ghz = make_ghz(3).unwrap();
        assert!((ev(&ghz, "III") - 1.0).abs() < 1e-12);
        let w = make_weighted_ghz(0.3);
        assert!((ev(&w, "III") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_ghz_limits() {
        let a = make_weighted_ghz(FRAC_PI_4);
        let b = make_ghz(3).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
        assert!(ev(&make_weighted_ghz(0.0), "ZXX").abs() < 1e-12);
        assert!((ev(&a, "XXZ") + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(make_ghz(1), Err(StateError::TooFewQubits(1)));
        assert!(matches!(make_ghz(13), Err(StateError::TooManyQubits(13))));
        let ghz = make_ghz(3).unwrap();
        assert!(matches!(
            ghz.expectation(&"ZZ".parse().unwrap()),
            Err(StateError::LengthMismatch {
                operator: 2,
                state: 3
            })
        ));
        assert!(StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 3]).is_err());
        assert!(matches!(
            StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2]),
            Err(StateError::NotNormalized(_))
        ));
        assert!("ZQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn larger_ghz_parity() {
        for n in 2..=6 {
            let ghz = make_ghz(n).unwrap();
            let all_z = PauliString::new(vec![Pauli::Z; n]);
            let zz = ghz.expectation(&all_z).unwrap();
            assert!((zz.abs() - 1.0).abs() < 1e-12);
        }
    }
}
