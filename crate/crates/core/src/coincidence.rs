//! Triple-coincidence counts and the reconstruction of the pair probabilities entering the
//! CH-form inequality from probabilities at the three fixed locations.
//!
//! # Counts file
//!
//! Plain text, one record per line:
//!
//! ```text
//! # comment
//! ZXX -1 1 -1 532
//! ```
//!
//! Fields are whitespace separated: a three-letter setting label over `X`, `Y`, `Z`, three
//! outcomes each written `1` or `-1` (location 1, 2, 3 in order), and a non-negative
//! integer count. `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. Triples that do not appear count as zero; a triple may appear at most once per
//! setting. [`save_counts`] writes a two-line comment header followed by all eight triples
//! of every setting, settings in lexicographic order and triples in the order
//! `(1,1,1), (1,1,-1), (1,-1,1), …, (-1,-1,-1)`.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::measurement::{
    joint_distribution, Axis, MeasurementError, MeasurementSetting, OutcomeDistribution,
    OutcomeEvent,
};
use crate::statevector::StateVector;

/// The five settings one experiment run measures.
pub const EXPERIMENT_SETTINGS: [&str; 5] = ["ZZZ", "ZXX", "XZX", "XXZ", "XXX"];

pub fn experiment_settings() -> [MeasurementSetting; 5] {
    EXPERIMENT_SETTINGS.map(|l| l.parse().expect("static label"))
}

#[derive(Debug, Error)]
pub enum CoincidenceError {
    #[error("setting {0} is missing")]
    MissingSetting(String),
    #[error("setting {0} has zero shots")]
    ZeroShots(String),
    #[error("setting {setting} does not have exactly one Z and two X axes")]
    ShapeMismatch { setting: String },
    #[error("setting {0} is not a three-location setting")]
    NotThreeLocations(String),
    #[error("line {line}: {field}: {message}")]
    Parse {
        line: usize,
        field: &'static str,
        message: String,
    },
    #[error(transparent)]
    Measurement(#[from] MeasurementError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn label(setting: MeasurementSetting) -> String {
    setting.label()
}

/// Anything that yields joint probabilities `P_ABC(a, b, c)` per setting.
pub trait JointProbabilities {
    /// Estimated probability of `outcomes` under `setting`.
    fn probability(
        &self,
        setting: MeasurementSetting,
        outcomes: [i8; 3],
    ) -> Result<f64, CoincidenceError>;

    /// Number of shots behind the estimates of `setting`; `None` for exact sources.
    fn shots(&self, setting: MeasurementSetting) -> Option<u64>;
}

/// `N_ABC(a, b, c)` per setting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoincidenceTable {
    counts: BTreeMap<MeasurementSetting, [u64; 8]>,
}

impl CoincidenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_events(events: &[OutcomeEvent]) -> Result<Self, CoincidenceError> {
        let mut t = Self::new();
        t.add_events(events)?;
        Ok(t)
    }

    pub fn add_events(&mut self, events: &[OutcomeEvent]) -> Result<(), CoincidenceError> {
        for e in events {
            if e.setting().len() != 3 {
                return Err(CoincidenceError::NotThreeLocations(label(e.setting())));
            }
            self.counts.entry(e.setting()).or_insert([0; 8])[e.pattern() as usize] += 1;
        }
        Ok(())
    }

    /// Adds `count` coincidences for `outcomes` under `setting`.
    pub fn add_count(
        &mut self,
        setting: MeasurementSetting,
        outcomes: [i8; 3],
        count: u64,
    ) -> Result<(), CoincidenceError> {
        if setting.len() != 3 {
            return Err(CoincidenceError::NotThreeLocations(label(setting)));
        }
        let pattern = setting.pattern_of(&outcomes)?;
        self.counts.entry(setting).or_insert([0; 8])[pattern as usize] += count;
        Ok(())
    }

    /// Merges per-partition tables by addition.
    pub fn merge(&mut self, other: &CoincidenceTable) {
        for (s, c) in &other.counts {
            let slot = self.counts.entry(*s).or_insert([0; 8]);
            slot.iter_mut().zip(c).for_each(|(a, b)| *a += b);
        }
    }

    pub fn settings(&self) -> impl Iterator<Item = MeasurementSetting> + '_ {
        self.counts.keys().copied()
    }

    /// Counts indexed by outcome pattern.
    pub fn counts(&self, setting: MeasurementSetting) -> Option<&[u64; 8]> {
        self.counts.get(&setting)
    }

    pub fn count(&self, setting: MeasurementSetting, outcomes: [i8; 3]) -> u64 {
        let Ok(p) = setting.pattern_of(&outcomes) else {
            return 0;
        };
        self.counts.get(&setting).map_or(0, |c| c[p as usize])
    }

    pub fn total_shots(&self, setting: MeasurementSetting) -> u64 {
        self.counts.get(&setting).map_or(0, |c| c.iter().sum())
    }

    /// `(event, count)` pairs for one setting, for the correlation estimators.
    pub fn event_counts(
        &self,
        setting: MeasurementSetting,
    ) -> Result<Vec<(OutcomeEvent, u64)>, CoincidenceError> {
        let c = self
            .counts
            .get(&setting)
            .ok_or_else(|| CoincidenceError::MissingSetting(label(setting)))?;
        Ok(c.iter()
            .enumerate()
            .map(|(p, &n)| (OutcomeEvent::from_pattern(setting, p as u16), n))
            .collect())
    }
}

impl JointProbabilities for CoincidenceTable {
    fn probability(
        &self,
        setting: MeasurementSetting,
        outcomes: [i8; 3],
    ) -> Result<f64, CoincidenceError> {
        let counts = self
            .counts
            .get(&setting)
            .ok_or_else(|| CoincidenceError::MissingSetting(label(setting)))?;
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(CoincidenceError::ZeroShots(label(setting)));
        }
        let p = setting.pattern_of(&outcomes)?;
        Ok(counts[p as usize] as f64 / total as f64)
    }

    fn shots(&self, setting: MeasurementSetting) -> Option<u64> {
        Some(self.total_shots(setting))
    }
}

/// Exact distributions standing in for measured frequencies.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactTable {
    dists: BTreeMap<MeasurementSetting, OutcomeDistribution>,
}

impl ExactTable {
    pub fn from_state(
        state: &StateVector,
        visibility: f64,
        settings: &[MeasurementSetting],
    ) -> Result<Self, CoincidenceError> {
        let mut dists = BTreeMap::new();
        for &s in settings {
            dists.insert(s, joint_distribution(state, s, visibility)?);
        }
        Ok(Self { dists })
    }

    pub fn insert(&mut self, dist: OutcomeDistribution) {
        self.dists.insert(dist.setting(), dist);
    }

    pub fn distribution(&self, setting: MeasurementSetting) -> Option<&OutcomeDistribution> {
        self.dists.get(&setting)
    }

    /// Rounds `p·shots` to integer counts; exact when every `p·shots` is an integer.
    pub fn to_counts(&self, shots: u64) -> CoincidenceTable {
        let counts = self
            .dists
            .iter()
            .filter(|(s, _)| s.len() == 3)
            .map(|(s, d)| {
                let mut c = [0u64; 8];
                for (pattern, p) in d.iter() {
                    c[pattern as usize] = (p * shots as f64).round() as u64;
                }
                (*s, c)
            })
            .collect();
        CoincidenceTable { counts }
    }
}

impl JointProbabilities for ExactTable {
    fn probability(
        &self,
        setting: MeasurementSetting,
        outcomes: [i8; 3],
    ) -> Result<f64, CoincidenceError> {
        let d = self
            .dists
            .get(&setting)
            .ok_or_else(|| CoincidenceError::MissingSetting(label(setting)))?;
        Ok(d.probability(&outcomes)?)
    }

    fn shots(&self, _setting: MeasurementSetting) -> Option<u64> {
        None
    }
}

fn setting(l: &str) -> MeasurementSetting {
    l.parse().expect("static label")
}

/// The four triple probabilities whose sum is `P_{Z_iZ_j}(−1,−1)`, in the order
/// `(1,−1,−1), (−1,1,−1), (−1,−1,1), (−1,−1,−1)`.
pub fn p_zz_terms<S: JointProbabilities + ?Sized>(src: &S) -> Result<[f64; 4], CoincidenceError> {
    let zzz = setting("ZZZ");
    Ok([
        src.probability(zzz, [1, -1, -1])?,
        src.probability(zzz, [-1, 1, -1])?,
        src.probability(zzz, [-1, -1, 1])?,
        src.probability(zzz, [-1, -1, -1])?,
    ])
}

/// `P_{Z_iZ_j}(−1,−1)`: at least two of the three Z results are `−1`.
pub fn reconstruct_p_zz<S: JointProbabilities + ?Sized>(src: &S) -> Result<f64, CoincidenceError> {
    Ok(p_zz_terms(src)?.iter().sum())
}

/// The six triple probabilities bounding both `P_{Z_iX_j}(−1,−x_k)` and `P_{X_iZ_j}(−x_k,−1)`.
pub fn six_terms<S: JointProbabilities + ?Sized>(src: &S) -> Result<[f64; 6], CoincidenceError> {
    let (zxx, xzx, xxz) = (setting("ZXX"), setting("XZX"), setting("XXZ"));
    Ok([
        src.probability(zxx, [-1, 1, -1])?,
        src.probability(zxx, [-1, -1, 1])?,
        src.probability(xzx, [1, -1, -1])?,
        src.probability(xzx, [-1, -1, 1])?,
        src.probability(xxz, [1, -1, -1])?,
        src.probability(xxz, [-1, 1, -1])?,
    ])
}

/// Common upper bound on the two mixed Z/X probabilities.
pub fn six_term_bound<S: JointProbabilities + ?Sized>(src: &S) -> Result<f64, CoincidenceError> {
    Ok(six_terms(src)?.iter().sum())
}

/// Probability that the Z location reads `−1` while the two X locations disagree.
pub fn per_setting_p_zx<S: JointProbabilities + ?Sized>(
    src: &S,
    one_z: MeasurementSetting,
) -> Result<f64, CoincidenceError> {
    let zs = one_z.locations_of(Axis::Z);
    let xs = one_z.locations_of(Axis::X);
    if one_z.len() != 3 || zs.len() != 1 || xs.len() != 2 {
        return Err(CoincidenceError::ShapeMismatch {
            setting: label(one_z),
        });
    }
    let mut total = 0.0;
    for x_first in [1i8, -1] {
        let mut o = [0i8; 3];
        o[zs[0]] = -1;
        o[xs[0]] = x_first;
        o[xs[1]] = -x_first;
        total += src.probability(one_z, o)?;
    }
    Ok(total)
}

/// `P_XXX(1,1,1)` and `P_XXX(−1,−1,−1)`.
pub fn p_xx_terms<S: JointProbabilities + ?Sized>(src: &S) -> Result<[f64; 2], CoincidenceError> {
    let xxx = setting("XXX");
    Ok([
        src.probability(xxx, [1, 1, 1])?,
        src.probability(xxx, [-1, -1, -1])?,
    ])
}

/// `P_{X_iX_j}(x_k, x_k)`: all three X results equal.
pub fn reconstruct_p_xx<S: JointProbabilities + ?Sized>(src: &S) -> Result<f64, CoincidenceError> {
    Ok(p_xx_terms(src)?.iter().sum())
}

/// Where the mixed Z/X probabilities of a [`CHProbabilities`] come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedTermSource {
    /// Estimated per setting from ZXX and XZX.
    PerSetting,
    /// Both set to the shared six-term upper bound.
    SixTermBound,
}

/// The four probabilities entering the CH-form combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CHProbabilities {
    pub p_zz: f64,
    pub p_zx: f64,
    pub p_xz: f64,
    pub p_xx: f64,
    pub six_term_bound: f64,
    pub mixed_source: MixedTermSource,
}

impl CHProbabilities {
    /// Per-setting mixed terms, with the six-term bound alongside.
    pub fn reconstruct<S: JointProbabilities + ?Sized>(src: &S) -> Result<Self, CoincidenceError> {
        Ok(Self {
            p_zz: reconstruct_p_zz(src)?,
            p_zx: per_setting_p_zx(src, setting("ZXX"))?,
            p_xz: per_setting_p_zx(src, setting("XZX"))?,
            p_xx: reconstruct_p_xx(src)?,
            six_term_bound: six_term_bound(src)?,
            mixed_source: MixedTermSource::PerSetting,
        })
    }

    /// Replaces both mixed terms by the six-term bound.
    pub fn with_six_term_bound(self) -> Self {
        Self {
            p_zx: self.six_term_bound.min(1.0),
            p_xz: self.six_term_bound.min(1.0),
            mixed_source: MixedTermSource::SixTermBound,
            ..self
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p_zz, self.p_zx, self.p_xz, self.p_xx]
    }
}

/// Binomial standard errors of the four CH probabilities; zeros for exact sources.
pub fn ch_standard_errors<S: JointProbabilities + ?Sized>(
    src: &S,
    probs: &CHProbabilities,
) -> [f64; 4] {
    let se = |label: &str, p: f64| match src.shots(setting(label)) {
        Some(n) if n > 0 => (p * (1.0 - p) / n as f64).max(0.0).sqrt(),
        _ => 0.0,
    };
    [
        se("ZZZ", probs.p_zz),
        se("ZXX", probs.p_zx),
        se("XZX", probs.p_xz),
        se("XXX", probs.p_xx),
    ]
}

fn parse_err(line: usize, field: &'static str, message: impl Into<String>) -> CoincidenceError {
    CoincidenceError::Parse {
        line,
        field,
        message: message.into(),
    }
}

/// Reads a counts file.
pub fn load_counts<R: BufRead>(source: R) -> Result<CoincidenceTable, CoincidenceError> {
    let mut counts: BTreeMap<MeasurementSetting, [u64; 8]> = BTreeMap::new();
    let mut seen: BTreeMap<(MeasurementSetting, u16), usize> = BTreeMap::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(parse_err(
                lineno,
                "record",
                format!(
                    "expected 5 fields `SETTING a b c count`, found {}",
                    fields.len()
                ),
            ));
        }
        let s: MeasurementSetting = fields[0]
            .parse()
            .ok()
            .filter(|s: &MeasurementSetting| s.len() == 3)
            .ok_or_else(|| {
                parse_err(
                    lineno,
                    "setting",
                    format!("unknown setting label {:?}", fields[0]),
                )
            })?;
        let mut outcomes = [0i8; 3];
        for (q, (name, raw)) in ["outcome a", "outcome b", "outcome c"]
            .iter()
            .zip(&fields[1..4])
            .enumerate()
        {
            outcomes[q] = match *raw {
                "1" | "+1" => 1,
                "-1" => -1,
                other => return Err(parse_err(lineno, name, format!("{other:?} is not -1 or 1"))),
            };
        }
        let raw_count = fields[4];
        let count: u64 = if raw_count.starts_with('-') {
            return Err(parse_err(
                lineno,
                "count",
                format!("negative count {raw_count}"),
            ));
        } else {
            raw_count.parse().map_err(|_| {
                parse_err(
                    lineno,
                    "count",
                    format!("{raw_count:?} is not a non-negative integer"),
                )
            })?
        };
        let pattern = s.pattern_of(&outcomes)?;
        if let Some(first) = seen.insert((s, pattern), lineno) {
            return Err(parse_err(
                lineno,
                "record",
                format!(
                    "duplicate record for {} {} {} {} (first on line {first})",
                    s, outcomes[0], outcomes[1], outcomes[2]
                ),
            ));
        }
        counts.entry(s).or_insert([0; 8])[pattern as usize] = count;
    }
    Ok(CoincidenceTable { counts })
}

/// Writes a counts file in the canonical layout.
pub fn save_counts<W: Write>(
    table: &CoincidenceTable,
    mut sink: W,
) -> Result<(), CoincidenceError> {
    writeln!(sink, "# ghzbell coincidence counts")?;
    writeln!(sink, "# setting a b c count")?;
    for (s, c) in &table.counts {
        for (pattern, n) in c.iter().enumerate() {
            let o = s.outcomes_of(pattern as u16);
            writeln!(sink, "{} {} {} {} {}", s, o[0], o[1], o[2], n)?;
        }
    }
    Ok(())
}
