//! CHSH and CH-form combinations, their reference bounds, the local-realistic bound by
//! enumeration of deterministic strategies, and the quantum bound by operator norm.

use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{bloch_operator, CMatrix};

/// Correlations may exceed `[-1, 1]` by this much from rounding.
pub const RANGE_TOLERANCE: f64 = 1e-12;

pub const LHV_BOUND: f64 = 2.0;
pub const CIRELSON_BOUND: f64 = 2.0 * SQRT_2;
pub const ALGEBRAIC_MAX: f64 = 4.0;

/// Lower edge of the local-realistic band for the CH form.
pub const CH_LOWER_EDGE: f64 = -1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error("sign parameter {0} is not -1 or +1")]
    BadSign(i8),
    #[error("correlation {name} = {value} outside [-1, 1]")]
    CorrelationOutOfRange { name: &'static str, value: f64 },
    #[error("probability {name} = {value} outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("Bloch vector {0:?} is not unit norm")]
    NotUnit([f64; 3]),
}

/// The sign parameters `m`, `n` of the CHSH combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CHSHParams {
    m: i8,
    n: i8,
}

impl CHSHParams {
    pub fn new(m: i8, n: i8) -> Result<Self, InequalityError> {
        for s in [m, n] {
            if s != 1 && s != -1 {
                return Err(InequalityError::BadSign(s));
            }
        }
        Ok(Self { m, n })
    }

    /// `m = n = 1`.
    pub fn plus() -> Self {
        Self { m: 1, n: 1 }
    }

    pub fn all() -> [Self; 4] {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(m, n)| Self { m, n })
    }

    pub fn m(&self) -> i8 {
        self.m
    }

    pub fn n(&self) -> i8 {
        self.n
    }
}

/// `|C(A,B) − m·C(A,b) − n·C(a,B) − m·n·C(a,b)|`.
pub fn chsh_value(
    c_ab: f64,
    c_a_lower_b: f64,
    c_lower_a_b: f64,
    c_lower_ab: f64,
    params: CHSHParams,
) -> Result<f64, InequalityError> {
    for (name, value) in [
        ("C(A,B)", c_ab),
        ("C(A,b)", c_a_lower_b),
        ("C(a,B)", c_lower_a_b),
        ("C(a,b)", c_lower_ab),
    ] {
        if value.is_nan() || value.abs() > 1.0 + RANGE_TOLERANCE {
            return Err(InequalityError::CorrelationOutOfRange { name, value });
        }
    }
    let (m, n) = (f64::from(params.m), f64::from(params.n));
    Ok((c_ab - m * c_a_lower_b - n * c_lower_a_b - m * n * c_lower_ab).abs())
}

/// Signed CH-form combination `p_zz − p_zx − p_xz − p_xx`.
pub fn ch_value(p_zz: f64, p_zx: f64, p_xz: f64, p_xx: f64) -> Result<f64, InequalityError> {
    for (name, value) in [
        ("p_zz", p_zz),
        ("p_zx", p_zx),
        ("p_xz", p_xz),
        ("p_xx", p_xx),
    ] {
        if !(-RANGE_TOLERANCE..=1.0 + RANGE_TOLERANCE).contains(&value) {
            return Err(InequalityError::ProbabilityOutOfRange { name, value });
        }
    }
    Ok(p_zz - p_zx - p_xz - p_xx)
}

/// Maps a CHSH-form bound `l` onto the CH form: `(l − 2)/4`.
pub fn bound_transform(l: f64) -> f64 {
    (l - 2.0) / 4.0
}

/// Predefined `±1` values of the four observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LHVAssignment {
    pub v_upper_a: i8,
    pub v_lower_a: i8,
    pub v_upper_b: i8,
    pub v_lower_b: i8,
}

impl LHVAssignment {
    /// All 16 deterministic strategies.
    pub fn all() -> impl Iterator<Item = Self> {
        (0u8..16).map(|bits| {
            let v = |k: u8| if bits & (1 << (3 - k)) == 0 { 1 } else { -1 };
            Self {
                v_upper_a: v(0),
                v_lower_a: v(1),
                v_upper_b: v(2),
                v_lower_b: v(3),
            }
        })
    }

    /// `v_B (v_A − n v_a) − m v_b (v_A + n v_a)`.
    pub fn chsh_term(&self, params: CHSHParams) -> i32 {
        let [a, la, b, lb, m, n] = [
            self.v_upper_a,
            self.v_lower_a,
            self.v_upper_b,
            self.v_lower_b,
            params.m,
            params.n,
        ]
        .map(i32::from);
        b * (a - n * la) - m * lb * (a + n * la)
    }
}

impl fmt::Display for LHVAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v_A={:+} v_a={:+} v_B={:+} v_b={:+}",
            self.v_upper_a, self.v_lower_a, self.v_upper_b, self.v_lower_b
        )
    }
}

/// Outcome of the deterministic-strategy enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhvResult {
    pub params: CHSHParams,
    /// `max |term|` over all 16 strategies.
    pub max_abs: i32,
    /// Every strategy with its term value.
    pub evaluations: Vec<(LHVAssignment, i32)>,
    /// Strategies attaining the signed maximum.
    pub extremal: Vec<LHVAssignment>,
}

/// Enumerates all deterministic strategies for the given signs.
pub fn lhv_max(params: CHSHParams) -> LhvResult {
    let evaluations: Vec<_> = LHVAssignment::all()
        .map(|a| (a, a.chsh_term(params)))
        .collect();
    let max_abs = evaluations.iter().map(|(_, v)| v.abs()).max().unwrap_or(0);
    let signed_max = evaluations.iter().map(|(_, v)| *v).max().unwrap_or(0);
    let extremal = evaluations
        .iter()
        .filter(|(_, v)| *v == signed_max)
        .map(|(a, _)| *a)
        .collect();
    LhvResult {
        params,
        max_abs,
        evaluations,
        extremal,
    }
}

/// A `±1` spin observable along a unit Bloch direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DichotomicObservable {
    bloch: [f64; 3],
}

impl DichotomicObservable {
    pub fn new(bloch: [f64; 3]) -> Result<Self, InequalityError> {
        let norm = bloch.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(InequalityError::NotUnit(bloch));
        }
        Ok(Self { bloch })
    }

    /// Direction from polar angle `theta` (from +z) and azimuth `phi` (from +x).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            bloch: [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ],
        }
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    pub fn matrix(&self) -> CMatrix {
        bloch_operator(self.bloch)
    }
}

/// The four local observables of a two-party CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshObservables {
    pub upper_a: DichotomicObservable,
    pub lower_a: DichotomicObservable,
    pub upper_b: DichotomicObservable,
    pub lower_b: DichotomicObservable,
}

impl ChshObservables {
    /// `A = z`, `a = x`, `B = (z+x)/√2`, `b = (z−x)/√2`.
    pub fn canonical() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            upper_a: DichotomicObservable {
                bloch: [0.0, 0.0, 1.0],
            },
            lower_a: DichotomicObservable {
                bloch: [1.0, 0.0, 0.0],
            },
            upper_b: DichotomicObservable { bloch: [r, 0.0, r] },
            lower_b: DichotomicObservable {
                bloch: [-r, 0.0, r],
            },
        }
    }

    /// The two-qubit operator `Ĉ = ÂB̂ − m Âb̂ − n âB̂ − mn âb̂`.
    pub fn chsh_operator(&self, params: CHSHParams) -> CMatrix {
        let (a, la) = (self.upper_a.matrix(), self.lower_a.matrix());
        let (b, lb) = (self.upper_b.matrix(), self.lower_b.matrix());
        let (m, n) = (f64::from(params.m), f64::from(params.n));
        let t1 = a.kron(&b);
        let t2 = a.kron(&lb).scale_re(m);
        let t3 = la.kron(&b).scale_re(n);
        let t4 = la.kron(&lb).scale_re(m * n);
        &(&(&t1 - &t2) - &t3) - &t4
    }

    /// `4·I − mn·[Â,â] ⊗ [B̂,b̂]`, which equals `Ĉ²` for `±1` observables.
    pub fn squared_identity(&self, params: CHSHParams) -> CMatrix {
        let ca = self.upper_a.matrix().commutator(&self.lower_a.matrix());
        let cb = self.upper_b.matrix().commutator(&self.lower_b.matrix());
        let mn = f64::from(params.m * params.n);
        &CMatrix::identity(4).scale_re(4.0) - &ca.kron(&cb).scale_re(mn)
    }
}

/// Operator norm of `Ĉ`, computed two independent ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CirelsonCheck {
    /// Largest `|λ|` of `Ĉ`.
    pub direct: f64,
    /// `sqrt(λ_max(4·I − mn[Â,â]⊗[B̂,b̂]))`.
    pub via_square: f64,
}

impl CirelsonCheck {
    pub fn agreement(&self) -> f64 {
        (self.direct - self.via_square).abs()
    }
}

/// Spectral norm of the CHSH operator for the given observables.
pub fn cirelson_norm(obs: &ChshObservables, params: CHSHParams) -> CirelsonCheck {
    let direct = obs.chsh_operator(params).hermitian_norm();
    let square = obs.squared_identity(params);
    let top = square
        .hermitian_eigenvalues()
        .last()
        .copied()
        .unwrap_or(0.0);
    CirelsonCheck {
        direct,
        via_square: top.max(0.0).sqrt(),
    }
}

/// Same as [`cirelson_norm`] but validates raw Bloch vectors first.
pub fn cirelson_norm_from_bloch(
    vectors: [[f64; 3]; 4],
    params: CHSHParams,
) -> Result<CirelsonCheck, InequalityError> {
    let [a, la, b, lb] = vectors.map(DichotomicObservable::new);
    let obs = ChshObservables {
        upper_a: a?,
        lower_a: la?,
        upper_b: b?,
        lower_b: lb?,
    };
    Ok(cirelson_norm(&obs, params))
}

/// Which combination a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum InequalityForm {
    Chsh,
    Ch,
}

/// Reference bounds of one inequality form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub lhv: f64,
    pub cirelson: f64,
    pub max: f64,
    /// Lower edge of the local-realistic band (CH form only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhv_lower: Option<f64>,
}

impl Bounds {
    pub fn chsh() -> Self {
        Self {
            lhv: LHV_BOUND,
            cirelson: CIRELSON_BOUND,
            max: ALGEBRAIC_MAX,
            lhv_lower: None,
        }
    }

    pub fn ch() -> Self {
        Self {
            lhv: bound_transform(LHV_BOUND),
            cirelson: bound_transform(CIRELSON_BOUND),
            max: bound_transform(ALGEBRAIC_MAX),
            lhv_lower: Some(CH_LOWER_EDGE),
        }
    }

    pub fn for_form(form: InequalityForm) -> Self {
        match form {
            InequalityForm::Chsh => Self::chsh(),
            InequalityForm::Ch => Self::ch(),
        }
    }
}

/// A combination value with its four inputs and reference bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub form: InequalityForm,
    pub terms: Vec<(String, f64)>,
    pub combination_value: f64,
    pub bounds: Bounds,
}

impl InequalityReport {
    pub fn new(form: InequalityForm, terms: Vec<(String, f64)>, combination_value: f64) -> Self {
        Self {
            form,
            terms,
            combination_value,
            bounds: Bounds::for_form(form),
        }
    }

    pub fn violates_lhv(&self) -> bool {
        self.combination_value > self.bounds.lhv
            || self
                .bounds
                .lhv_lower
                .is_some_and(|lo| self.combination_value < lo)
    }

    pub fn exceeds_cirelson(&self) -> bool {
        self.combination_value > self.bounds.cirelson
    }
}

/// `⟨ψ|Ĉ|ψ⟩` helper used by tests and the CLI random checker.
pub fn operator_expectation(op: &CMatrix, psi: &[Complex64]) -> Complex64 {
    let n = op.dim();
    (0..n)
        .map(|r| psi[r].conj() * (0..n).map(|c| op[(r, c)] * psi[c]).sum::<Complex64>())
        .sum()
}
