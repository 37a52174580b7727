//! Born-rule outcome distributions for local Pauli measurements and seeded sampling.
//!
//! Outcome patterns are packed into a `u16`: the bit belonging to location `q` sits at
//! position `n-1-q` (location 0 is most significant) and a set bit means the result `-1`.
//!
//! Sampling draws from [`ChaCha8Rng`] seeded with `seed_from_u64`, which is portable and
//! stable across platforms, so a given `(state, setting, shots, visibility, seed)` always
//! produces the same event list.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::statevector::{StateVector, MAX_QUBITS};

/// Probabilities below this are treated as floating-point dust and set to zero.
pub const CLAMP_THRESHOLD: f64 = 1e-15;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasurementError {
    #[error("setting {setting} measures {setting_len} locations but the state has {state} qubits")]
    LengthMismatch {
        setting: String,
        setting_len: usize,
        state: usize,
    },
    #[error("visibility {0} outside [0, 1]")]
    BadVisibility(f64),
    #[error("shots must be at least 1")]
    NoShots,
    #[error("invalid setting label {0:?}")]
    BadLabel(String),
    #[error("outcome {0} is not -1 or +1")]
    BadOutcome(i64),
}

/// Measurement axis at one location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn symbol(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    /// Local unitary taking this axis' `+1` eigenstate to `|0⟩`.
    fn to_z_basis(self) -> Option<[[Complex64; 2]; 2]> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re * r, im * r);
        match self {
            Axis::Z => None,
            // Hadamard
            Axis::X => Some([[c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(-1.0, 0.0)]]),
            // H·S†
            Axis::Y => Some([[c(1.0, 0.0), c(0.0, -1.0)], [c(1.0, 0.0), c(0.0, 1.0)]]),
        }
    }
}

/// Axis assignment per location, e.g. `ZXX`. `Copy` so events can carry it inline.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementSetting {
    axes: [Axis; MAX_QUBITS],
    len: u8,
}

impl MeasurementSetting {
    pub fn new(axes: &[Axis]) -> Result<Self, MeasurementError> {
        if axes.is_empty() || axes.len() > MAX_QUBITS {
            return Err(MeasurementError::BadLabel(
                axes.iter().map(|a| a.symbol()).collect(),
            ));
        }
        let mut buf = [Axis::Z; MAX_QUBITS];
        buf[..axes.len()].copy_from_slice(axes);
        Ok(Self {
            axes: buf,
            len: axes.len() as u8,
        })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn label(&self) -> String {
        self.axes().iter().map(|a| a.symbol()).collect()
    }

    /// Locations measured along `axis`.
    pub fn locations_of(&self, axis: Axis) -> Vec<usize> {
        self.axes()
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == axis)
            .map(|(q, _)| q)
            .collect()
    }

    /// Number of distinct outcome patterns, `2^len`.
    pub fn num_outcomes(&self) -> usize {
        1 << self.len
    }

    fn bit(&self, location: usize) -> u16 {
        1 << (self.len() - 1 - location)
    }

    /// Packs `±1` outcomes (indexed by location) into a pattern.
    pub fn pattern_of(&self, outcomes: &[i8]) -> Result<u16, MeasurementError> {
        if outcomes.len() != self.len() {
            return Err(MeasurementError::LengthMismatch {
                setting: self.label(),
                setting_len: self.len(),
                state: outcomes.len(),
            });
        }
        let mut pattern = 0u16;
        for (q, &o) in outcomes.iter().enumerate() {
            match o {
                1 => {}
                -1 => pattern |= self.bit(q),
                other => return Err(MeasurementError::BadOutcome(other as i64)),
            }
        }
        Ok(pattern)
    }

    /// `±1` result of `location` within `pattern`.
    pub fn outcome_at(&self, pattern: u16, location: usize) -> i8 {
        if pattern & self.bit(location) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn outcomes_of(&self, pattern: u16) -> Vec<i8> {
        (0..self.len())
            .map(|q| self.outcome_at(pattern, q))
            .collect()
    }
}

impl fmt::Debug for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MeasurementSetting({})", self.label())
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Ord for MeasurementSetting {
    fn cmp(&self, other: &Self) -> Ordering {
        self.axes().cmp(other.axes())
    }
}

impl PartialOrd for MeasurementSetting {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for MeasurementSetting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl FromStr for MeasurementSetting {
    type Err = MeasurementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let axes = s
            .chars()
            .map(|c| match c {
                'X' => Ok(Axis::X),
                'Y' => Ok(Axis::Y),
                'Z' => Ok(Axis::Z),
                _ => Err(MeasurementError::BadLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&axes).map_err(|_| MeasurementError::BadLabel(s.to_string()))
    }
}

/// Joint distribution over all `±1` patterns of one setting.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    setting: MeasurementSetting,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Uniform distribution over all patterns (the `V = 0` limit).
    pub fn uniform(setting: MeasurementSetting) -> Self {
        let k = setting.num_outcomes();
        Self {
            setting,
            probabilities: vec![1.0 / k as f64; k],
        }
    }

    pub fn setting(&self) -> MeasurementSetting {
        self.setting
    }

    /// Probabilities indexed by pattern.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, outcomes: &[i8]) -> Result<f64, MeasurementError> {
        Ok(self.probabilities[self.setting.pattern_of(outcomes)? as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(b, &p)| (b as u16, p))
    }

    /// Weighted events, one per pattern, for feeding exact distributions to estimators.
    pub fn weighted_events(&self) -> impl Iterator<Item = (OutcomeEvent, f64)> + '_ {
        self.iter().map(move |(pattern, p)| {
            (
                OutcomeEvent {
                    setting: self.setting,
                    pattern,
                },
                p,
            )
        })
    }

    fn mixed(mut self, visibility: f64) -> Self {
        let noise = (1.0 - visibility) / self.probabilities.len() as f64;
        for p in self.probabilities.iter_mut() {
            *p = visibility * *p + noise;
        }
        self
    }
}

/// One coincidence: a `±1` result per location under a fixed setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeEvent {
    setting: MeasurementSetting,
    pattern: u16,
}

impl OutcomeEvent {
    pub fn new(setting: MeasurementSetting, outcomes: &[i8]) -> Result<Self, MeasurementError> {
        Ok(Self {
            setting,
            pattern: setting.pattern_of(outcomes)?,
        })
    }

    pub fn from_pattern(setting: MeasurementSetting, pattern: u16) -> Self {
        debug_assert!((pattern as usize) < setting.num_outcomes());
        Self { setting, pattern }
    }

    pub fn setting(&self) -> MeasurementSetting {
        self.setting
    }

    pub fn pattern(&self) -> u16 {
        self.pattern
    }

    pub fn outcome(&self, location: usize) -> i8 {
        self.setting.outcome_at(self.pattern, location)
    }

    pub fn outcomes(&self) -> Vec<i8> {
        self.setting.outcomes_of(self.pattern)
    }

    /// Product of all outcomes.
    pub fn product(&self) -> i8 {
        if self.pattern.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn check_visibility(visibility: f64) -> Result<(), MeasurementError> {
    if (0.0..=1.0).contains(&visibility) {
        Ok(())
    } else {
        Err(MeasurementError::BadVisibility(visibility))
    }
}

/// Noiseless Born-rule distribution, clamped and renormalized.
fn born_distribution(
    state: &StateVector,
    setting: MeasurementSetting,
) -> Result<OutcomeDistribution, MeasurementError> {
    let n = state.num_qubits();
    if setting.len() != n {
        return Err(MeasurementError::LengthMismatch {
            setting: setting.label(),
            setting_len: setting.len(),
            state: n,
        });
    }
    let mut amps = state.amplitudes().to_vec();
    for (q, axis) in setting.axes().iter().enumerate() {
        let Some(u) = axis.to_z_basis() else { continue };
        let bit = state.qubit_mask(q);
        for b in 0..amps.len() {
            if b & bit != 0 {
                continue;
            }
            let (a0, a1) = (amps[b], amps[b | bit]);
            amps[b] = u[0][0] * a0 + u[0][1] * a1;
            amps[b | bit] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
    let mut probabilities: Vec<f64> = amps
        .iter()
        .map(|a| {
            let p = a.norm_sqr();
            if p < CLAMP_THRESHOLD {
                0.0
            } else {
                p
            }
        })
        .collect();
    let total: f64 = probabilities.iter().sum();
    probabilities.iter_mut().for_each(|p| *p /= total);
    Ok(OutcomeDistribution {
        setting,
        probabilities,
    })
}

/// `V·Born + (1-V)·uniform` for a projective measurement of each qubit along its axis.
pub fn joint_distribution(
    state: &StateVector,
    setting: MeasurementSetting,
    visibility: f64,
) -> Result<OutcomeDistribution, MeasurementError> {
    check_visibility(visibility)?;
    Ok(born_distribution(state, setting)?.mixed(visibility))
}

/// Inverse-CDF sampler over a fixed outcome table.
#[derive(Debug, Clone)]
pub struct OutcomeSampler {
    setting: MeasurementSetting,
    cumulative: Vec<f64>,
    last_supported: u16,
}

impl OutcomeSampler {
    pub fn new(dist: &OutcomeDistribution) -> Self {
        let mut acc = 0.0;
        let cumulative = dist
            .probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        let last_supported = dist
            .probabilities
            .iter()
            .rposition(|&p| p > 0.0)
            .unwrap_or(0) as u16;
        Self {
            setting: dist.setting,
            cumulative,
            last_supported,
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> OutcomeEvent {
        let u: f64 = rng.random();
        let pattern = self
            .cumulative
            .iter()
            .position(|&c| u < c)
            .map(|b| b as u16)
            .unwrap_or(self.last_supported);
        OutcomeEvent {
            setting: self.setting,
            pattern,
        }
    }
}

/// Draws `shots` i.i.d. events from [`joint_distribution`].
pub fn sample(
    state: &StateVector,
    setting: MeasurementSetting,
    shots: usize,
    visibility: f64,
    seed: u64,
) -> Result<Vec<OutcomeEvent>, MeasurementError> {
    if shots == 0 {
        return Err(MeasurementError::NoShots);
    }
    let dist = joint_distribution(state, setting, visibility)?;
    Ok(sample_from(&dist, shots, seed))
}

/// Draws `shots` events from an already computed distribution.
pub fn sample_from(dist: &OutcomeDistribution, shots: usize, seed: u64) -> Vec<OutcomeEvent> {
    let sampler = OutcomeSampler::new(dist);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..shots).map(|_| sampler.draw(&mut rng)).collect()
}

/// Splits `shots` over `partitions` workers seeded `seed + index`, concatenated in
/// partition order. Reproducible for a fixed partition count, but not equal to [`sample`].
pub fn sample_partitioned(
    state: &StateVector,
    setting: MeasurementSetting,
    shots: usize,
    visibility: f64,
    seed: u64,
    partitions: usize,
) -> Result<Vec<OutcomeEvent>, MeasurementError> {
    if shots == 0 {
        return Err(MeasurementError::NoShots);
    }
    let dist = joint_distribution(state, setting, visibility)?;
    let partitions = partitions.clamp(1, shots);
    let (base, extra) = (shots / partitions, shots % partitions);
    let chunks: Vec<Vec<OutcomeEvent>> = (0..partitions)
        .into_par_iter()
        .map(|idx| {
            let n = base + usize::from(idx < extra);
            sample_from(&dist, n, seed.wrapping_add(idx as u64))
        })
        .collect();
    Ok(chunks.concat())
}
