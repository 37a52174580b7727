//! Role assignment (which two locations are the correlated pair `i`, `j` and which one is
//! the spectator `k`) and the postselected two-party correlation estimators.
//!
//! Two labeling strategies are supported:
//!
//! * [`LabelingStrategy::OutcomeBased`] picks `i`, `j` per event as the locations whose
//!   Z result is `-1`. When all three give `+1` any pair qualifies, and the estimators average
//!   over the three pairs rather than choosing one at random. Patterns that cannot occur on
//!   the ideal state (one or three `-1`) get the same treatment: the pairs with the most
//!   `-1` results are averaged.
//! * [`LabelingStrategy::LocationFixed`] pins `k` to one location and keeps only events in
//!   which a Z measurement at `k` returned the required value.
//!
//! Every estimator accepts exact distributions (weighted patterns), pattern counts, or
//! raw event lists. They share one accumulation path.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::measurement::{Axis, MeasurementSetting, OutcomeDistribution, OutcomeEvent};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PostselectError {
    #[error("spectator location {0} is not one of 0, 1, 2")]
    BadLocation(usize),
    #[error("required z value {0} is not -1 or +1")]
    BadRequiredValue(i8),
    #[error("setting {setting} has no labeling rule under {strategy}")]
    NoRule { setting: String, strategy: String },
    #[error("{estimator} needs {expected} events, got {found}")]
    WrongSetting {
        estimator: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("events mix settings {0} and {1}")]
    MixedSettings(String, String),
    #[error("no accepted events for {0}")]
    NoAcceptedEvents(&'static str),
    #[error("invalid strategy {0:?}; expected `outcome` or `fixed:<0|1|2>`")]
    BadStrategy(String),
}

/// How the roles `i`, `j`, `k` are attached to the three locations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum LabelingStrategy {
    #[default]
    OutcomeBased,
    LocationFixed {
        k_location: usize,
        required_z: i8,
    },
}

impl LabelingStrategy {
    /// Spectator pinned to `k_location`, postselected on `z_k = +1`.
    pub fn fixed(k_location: usize) -> Result<Self, PostselectError> {
        Self::fixed_with(k_location, 1)
    }

    pub fn fixed_with(k_location: usize, required_z: i8) -> Result<Self, PostselectError> {
        if k_location > 2 {
            return Err(PostselectError::BadLocation(k_location));
        }
        if required_z != 1 && required_z != -1 {
            return Err(PostselectError::BadRequiredValue(required_z));
        }
        Ok(Self::LocationFixed {
            k_location,
            required_z,
        })
    }
}

impl fmt::Display for LabelingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutcomeBased => f.write_str("outcome"),
            Self::LocationFixed {
                k_location,
                required_z: 1,
            } => write!(f, "fixed:{k_location}"),
            Self::LocationFixed {
                k_location,
                required_z,
            } => {
                write!(f, "fixed:{k_location}:{required_z}")
            }
        }
    }
}

impl FromStr for LabelingStrategy {
    type Err = PostselectError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PostselectError::BadStrategy(s.to_string());
        if s == "outcome" {
            return Ok(Self::OutcomeBased);
        }
        let rest = s.strip_prefix("fixed:").ok_or_else(bad)?;
        let mut parts = rest.split(':');
        let k = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let z = match parts.next() {
            None => 1,
            Some(p) => p.parse().map_err(|_| bad())?,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::fixed_with(k, z)
    }
}

/// One permutation of the locations into roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Roles {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Roles {
    fn new(i: usize, j: usize, k: usize) -> Self {
        Self { i, j, k }
    }

    fn with_pair(i: usize, j: usize) -> Self {
        Self { i, j, k: 3 - i - j }
    }
}

/// Which labeling rule produced an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventClass {
    /// Exactly two `-1` results on ZZZ: roles are unambiguous.
    Ideal,
    /// All `+1` on ZZZ: every pair qualifies.
    Tie,
    /// One or three `-1` on ZZZ. Impossible on the ideal state.
    NoiseOnly,
    /// One-Z setting: the Z location is fixed, the two X locations are interchangeable.
    Symmetrized,
    /// Roles pinned by configuration.
    Fixed,
}

/// Candidate role permutations for one event. Estimators average over the candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleAssignment {
    candidates: Vec<Roles>,
    accepted: bool,
    class: EventClass,
}

impl RoleAssignment {
    pub fn candidates(&self) -> &[Roles] {
        &self.candidates
    }

    pub fn accepted(&self) -> bool {
        self.accepted
    }

    pub fn class(&self) -> EventClass {
        self.class
    }

    pub fn is_noise_only(&self) -> bool {
        self.class == EventClass::NoiseOnly
    }

    /// The unique role permutation, if the assignment has one.
    pub fn roles(&self) -> Option<Roles> {
        match self.candidates.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    fn mean_over<F: Fn(Roles) -> f64>(&self, f: F) -> f64 {
        self.candidates.iter().map(|r| f(*r)).sum::<f64>() / self.candidates.len() as f64
    }
}

fn no_rule(setting: MeasurementSetting, strategy: LabelingStrategy) -> PostselectError {
    PostselectError::NoRule {
        setting: setting.label(),
        strategy: strategy.to_string(),
    }
}

/// All pairs `(i, j)` with `i < j` whose count of `-1` outcomes is maximal.
fn pairs_with_most_minus(event: &OutcomeEvent) -> Vec<Roles> {
    const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
    let minus = |q| usize::from(event.outcome(q) == -1);
    let best = PAIRS
        .iter()
        .map(|&(i, j)| minus(i) + minus(j))
        .max()
        .unwrap_or(0);
    PAIRS
        .iter()
        .filter(|&&(i, j)| minus(i) + minus(j) == best)
        .map(|&(i, j)| Roles::with_pair(i, j))
        .collect()
}

/// Attaches the roles `i`, `j`, `k` to the locations of one three-location event.
pub fn label_event(
    event: &OutcomeEvent,
    strategy: LabelingStrategy,
) -> Result<RoleAssignment, PostselectError> {
    let setting = event.setting();
    if setting.len() != 3 || setting.axes().contains(&Axis::Y) {
        return Err(no_rule(setting, strategy));
    }
    match strategy {
        LabelingStrategy::OutcomeBased => {
            let z_locations = setting.locations_of(Axis::Z);
            match z_locations.as_slice() {
                [_, _, _] => {
                    let minus = (0..3).filter(|&q| event.outcome(q) == -1).count();
                    let class = match minus {
                        2 => EventClass::Ideal,
                        0 => EventClass::Tie,
                        _ => EventClass::NoiseOnly,
                    };
                    Ok(RoleAssignment {
                        candidates: pairs_with_most_minus(event),
                        accepted: true,
                        class,
                    })
                }
                [z] => {
                    let x = setting.locations_of(Axis::X);
                    Ok(RoleAssignment {
                        candidates: vec![Roles::new(*z, x[0], x[1]), Roles::new(*z, x[1], x[0])],
                        accepted: true,
                        class: EventClass::Symmetrized,
                    })
                }
                _ => Err(no_rule(setting, strategy)),
            }
        }
        LabelingStrategy::LocationFixed {
            k_location,
            required_z,
        } => {
            let mut pair = (0..3).filter(|&q| q != k_location);
            let (i, j) = (pair.next().unwrap(), pair.next().unwrap());
            let accepted =
                setting.axes()[k_location] != Axis::Z || event.outcome(k_location) == required_z;
            Ok(RoleAssignment {
                candidates: vec![Roles::new(i, j, k_location)],
                accepted,
                class: EventClass::Fixed,
            })
        }
    }
}

/// Estimate of a two-party correlation from a finite sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub value: f64,
    pub num_events_used: u64,
    pub num_events_total: u64,
    /// Sample standard deviation of the per-event statistic over `sqrt(num_events_used)`.
    /// Zero when fewer than two events were used; see [`Self::is_degenerate`].
    pub standard_error: f64,
}

impl CorrelationEstimate {
    pub fn accepted_fraction(&self) -> f64 {
        self.num_events_used as f64 / self.num_events_total as f64
    }

    /// Fewer than two events: no spread estimate exists.
    pub fn is_degenerate(&self) -> bool {
        self.num_events_used < 2
    }
}

/// Correlation evaluated on an exact outcome distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCorrelation {
    pub value: f64,
    /// Probability that an event survives postselection.
    pub acceptance_probability: f64,
}

/// The three postselected correlation estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correlator {
    /// `z_i·z_j` on ZZZ events.
    Zz,
    /// Full triple product on a one-Z setting; the per-event form of `−x_k`-signed terms.
    ZxxProduct,
    /// `x_i·x_j` on a one-Z setting, keeping only events whose spectator gave `z_k = +1`.
    XxPostselected,
}

impl Correlator {
    pub fn name(self) -> &'static str {
        match self {
            Correlator::Zz => "corr_zz",
            Correlator::ZxxProduct => "corr_zxx_product",
            Correlator::XxPostselected => "corr_xx_postselected",
        }
    }

    fn check_setting(
        self,
        setting: MeasurementSetting,
        strategy: LabelingStrategy,
    ) -> Result<(), PostselectError> {
        let wrong = |expected| PostselectError::WrongSetting {
            estimator: self.name(),
            expected,
            found: setting.label(),
        };
        let zs = setting.locations_of(Axis::Z);
        let xs = setting.locations_of(Axis::X);
        match self {
            Correlator::Zz if zs.len() != 3 => Err(wrong("ZZZ")),
            Correlator::ZxxProduct | Correlator::XxPostselected
                if setting.len() != 3 || zs.len() != 1 || xs.len() != 2 =>
            {
                Err(wrong("one-Z (ZXX, XZX or XXZ)"))
            }
            Correlator::XxPostselected => match strategy {
                LabelingStrategy::LocationFixed { k_location, .. } if k_location != zs[0] => {
                    Err(no_rule(setting, strategy))
                }
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Per-event statistic, or `None` when the event is postselected out.
    fn statistic(
        self,
        event: &OutcomeEvent,
        strategy: LabelingStrategy,
    ) -> Result<Option<f64>, PostselectError> {
        let o = |q: usize| f64::from(event.outcome(q));
        match self {
            Correlator::Zz => {
                let roles = label_event(event, strategy)?;
                Ok(roles
                    .accepted()
                    .then(|| roles.mean_over(|r| o(r.i) * o(r.j))))
            }
            Correlator::ZxxProduct => {
                let roles = label_event(event, strategy)?;
                Ok(roles.accepted().then(|| f64::from(event.product())))
            }
            Correlator::XxPostselected => {
                // The Z location is the spectator k by definition here; only z_k = +1 counts.
                let setting = event.setting();
                let k = setting.locations_of(Axis::Z)[0];
                let required = match strategy {
                    LabelingStrategy::OutcomeBased => 1,
                    LabelingStrategy::LocationFixed { required_z, .. } => required_z,
                };
                if event.outcome(k) != required {
                    return Ok(None);
                }
                let x = setting.locations_of(Axis::X);
                Ok(Some(o(x[0]) * o(x[1])))
            }
        }
    }

    fn accumulate<I>(
        self,
        weighted: I,
        strategy: LabelingStrategy,
    ) -> Result<Moments, PostselectError>
    where
        I: IntoIterator<Item = (OutcomeEvent, f64)>,
    {
        let mut moments = Moments::default();
        let mut first: Option<MeasurementSetting> = None;
        for (event, w) in weighted {
            match first {
                None => {
                    self.check_setting(event.setting(), strategy)?;
                    first = Some(event.setting());
                }
                Some(s) if s != event.setting() => {
                    return Err(PostselectError::MixedSettings(
                        s.label(),
                        event.setting().label(),
                    ))
                }
                Some(_) => {}
            }
            moments.total += w;
            if let Some(s) = self.statistic(&event, strategy)? {
                moments.push(s, w);
            }
        }
        if moments.weight <= 0.0 {
            return Err(PostselectError::NoAcceptedEvents(self.name()));
        }
        Ok(moments)
    }

    /// Estimate from `(event, count)` pairs.
    pub fn estimate_counts<I>(
        self,
        counts: I,
        strategy: LabelingStrategy,
    ) -> Result<CorrelationEstimate, PostselectError>
    where
        I: IntoIterator<Item = (OutcomeEvent, u64)>,
    {
        let m = self.accumulate(counts.into_iter().map(|(e, c)| (e, c as f64)), strategy)?;
        let n = m.weight;
        let mean = m.mean();
        let standard_error = if n >= 2.0 {
            let var = (m.sum_sq - n * mean * mean).max(0.0) / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Ok(CorrelationEstimate {
            value: mean,
            num_events_used: n as u64,
            num_events_total: m.total as u64,
            standard_error,
        })
    }

    /// Estimate from a list of sampled events.
    pub fn estimate(
        self,
        events: &[OutcomeEvent],
        strategy: LabelingStrategy,
    ) -> Result<CorrelationEstimate, PostselectError> {
        self.estimate_counts(tally(events), strategy)
    }

    /// Value on an exact outcome distribution.
    pub fn exact(
        self,
        dist: &OutcomeDistribution,
        strategy: LabelingStrategy,
    ) -> Result<ExactCorrelation, PostselectError> {
        let m = self.accumulate(dist.weighted_events(), strategy)?;
        Ok(ExactCorrelation {
            value: m.mean(),
            acceptance_probability: m.weight / m.total,
        })
    }
}

/// Collapses an event list into per-pattern counts, preserving first-seen setting order.
fn tally(events: &[OutcomeEvent]) -> Vec<(OutcomeEvent, u64)> {
    let mut out: Vec<(OutcomeEvent, u64)> = Vec::new();
    for e in events {
        match out.iter_mut().find(|(seen, _)| seen == e) {
            Some((_, c)) => *c += 1,
            None => out.push((*e, 1)),
        }
    }
    out
}

#[derive(Debug, Default)]
struct Moments {
    weight: f64,
    sum: f64,
    sum_sq: f64,
    total: f64,
}

impl Moments {
    fn push(&mut self, s: f64, w: f64) {
        self.weight += w;
        self.sum += w * s;
        self.sum_sq += w * s * s;
    }

    fn mean(&self) -> f64 {
        self.sum / self.weight
    }
}

/// `C(Z_i, Z_j)` from ZZZ events.
pub fn corr_zz(
    events: &[OutcomeEvent],
    strategy: LabelingStrategy,
) -> Result<CorrelationEstimate, PostselectError> {
    Correlator::Zz.estimate(events, strategy)
}

/// Mean triple product on ZXX / XZX (or XXZ) events.
pub fn corr_zxx_product(
    events: &[OutcomeEvent],
    strategy: LabelingStrategy,
) -> Result<CorrelationEstimate, PostselectError> {
    Correlator::ZxxProduct.estimate(events, strategy)
}

/// `C(X_i, X_j)` over events whose Z-measured spectator gave `+1`.
pub fn corr_xx_postselected(
    events: &[OutcomeEvent],
    strategy: LabelingStrategy,
) -> Result<CorrelationEstimate, PostselectError> {
    Correlator::XxPostselected.estimate(events, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::joint_distribution;
    use crate::statevector::{make_ghz, make_weighted_ghz};

    fn ev(label: &str, outcomes: [i8; 3]) -> OutcomeEvent {
        OutcomeEvent::new(label.parse().unwrap(), &outcomes).unwrap()
    }

    fn all_patterns(label: &str) -> Vec<OutcomeEvent> {
        let s: MeasurementSetting = label.parse().unwrap();
        (0..8).map(|p| OutcomeEvent::from_pattern(s, p)).collect()
    }

    #[test]
    fn ideal_zzz_labels() {
        let a = label_event(&ev("ZZZ", [1, -1, -1]), LabelingStrategy::OutcomeBased).unwrap();
        assert!(a.accepted());
        assert_eq!(a.class(), EventClass::Ideal);
        assert_eq!(a.roles(), Some(Roles { i: 1, j: 2, k: 0 }));
    }

    #[test]
    fn tie_averages_all_pairs() {
        let a = label_event(&ev("ZZZ", [1, 1, 1]), LabelingStrategy::OutcomeBased).unwrap();
        assert!(a.accepted());
        assert_eq!(a.class(), EventClass::Tie);
        assert_eq!(a.candidates().len(), 3);
        let ks: Vec<_> = a.candidates().iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![2, 1, 0]);
    }

    #[test]
    fn noise_only_classes() {
        let a = label_event(&ev("ZZZ", [-1, 1, 1]), LabelingStrategy::OutcomeBased).unwrap();
        assert!(a.is_noise_only());
        assert_eq!(a.candidates(), &[Roles::new(0, 1, 2), Roles::new(0, 2, 1)]);
        let b = label_event(&ev("ZZZ", [-1, -1, -1]), LabelingStrategy::OutcomeBased).unwrap();
        assert!(b.is_noise_only());
        assert_eq!(b.candidates().len(), 3);

        // These patterns carry zero weight on the ideal state.
        let ghz = make_ghz(3).unwrap();
        let d = joint_distribution(&ghz, "ZZZ".parse().unwrap(), 1.0).unwrap();
        assert_eq!(d.probability(&[-1, 1, 1]).unwrap(), 0.0);
        assert_eq!(d.probability(&[-1, -1, -1]).unwrap(), 0.0);
    }

    #[test]
    fn one_z_settings_are_symmetrized() {
        let a = label_event(&ev("XZX", [1, -1, 1]), LabelingStrategy::OutcomeBased).unwrap();
        assert_eq!(a.class(), EventClass::Symmetrized);
        assert_eq!(a.roles(), None);
        assert!(a.candidates().iter().all(|r| r.i == 1));
    }

    #[test]
    fn location_fixed_rules() {
        let s = LabelingStrategy::fixed(2).unwrap();
        let a = label_event(&ev("ZZZ", [1, 1, -1]), s).unwrap();
        assert!(!a.accepted());
        let b = label_event(&ev("ZZZ", [-1, -1, 1]), s).unwrap();
        assert!(b.accepted());
        assert_eq!(b.roles(), Some(Roles::new(0, 1, 2)));
        // X-measured spectator: nothing to condition on.
        let c = label_event(&ev("ZXX", [1, 1, -1]), s).unwrap();
        assert!(c.accepted());
    }

    #[test]
    fn rejects_undefined_combinations() {
        assert!(matches!(
            label_event(&ev("XXX", [1, 1, 1]), LabelingStrategy::OutcomeBased),
            Err(PostselectError::NoRule { .. })
        ));
        assert!(label_event(&ev("ZZX", [1, 1, 1]), LabelingStrategy::OutcomeBased).is_err());
        assert!(label_event(&ev("ZYX", [1, 1, 1]), LabelingStrategy::fixed(0).unwrap()).is_err());
        // Spectator at 0 is X-measured in XXZ; the postselected xx estimator needs z_k.
        let events = vec![ev("XXZ", [1, -1, 1])];
        assert!(matches!(
            corr_xx_postselected(&events, LabelingStrategy::fixed(0).unwrap()),
            Err(PostselectError::NoRule { .. })
        ));
        assert_eq!(
            LabelingStrategy::fixed(3),
            Err(PostselectError::BadLocation(3))
        );
    }

    #[test]
    fn estimator_errors() {
        let s = LabelingStrategy::OutcomeBased;
        assert_eq!(
            corr_zz(&[], s),
            Err(PostselectError::NoAcceptedEvents("corr_zz"))
        );
        assert!(matches!(
            corr_zz(&[ev("ZXX", [1, 1, 1])], s),
            Err(PostselectError::WrongSetting { .. })
        ));
        assert!(matches!(
            corr_zxx_product(&[ev("ZXX", [1, 1, 1]), ev("XZX", [1, 1, 1])], s),
            Err(PostselectError::MixedSettings(..))
        ));
        // Only z_k = -1 events: everything postselected away.
        assert!(matches!(
            corr_xx_postselected(&[ev("XXZ", [1, 1, -1])], s),
            Err(PostselectError::NoAcceptedEvents(_))
        ));
    }

    #[test]
    fn exact_ghz_correlations() {
        let ghz = make_ghz(3).unwrap();
        let dist = |l: &str| joint_distribution(&ghz, l.parse().unwrap(), 1.0).unwrap();
        for s in [
            LabelingStrategy::OutcomeBased,
            LabelingStrategy::fixed(2).unwrap(),
        ] {
            let zz = Correlator::Zz.exact(&dist("ZZZ"), s).unwrap();
            assert!((zz.value - 1.0).abs() < 1e-12, "{s}");
        }
        let s = LabelingStrategy::OutcomeBased;
        for l in ["ZXX", "XZX"] {
            assert!((Correlator::ZxxProduct.exact(&dist(l), s).unwrap().value + 1.0).abs() < 1e-12);
        }
        let xx = Correlator::XxPostselected.exact(&dist("XXZ"), s).unwrap();
        assert!((xx.value + 1.0).abs() < 1e-12);
        assert!((xx.acceptance_probability - 0.5).abs() < 1e-12);
    }

    #[test]
    fn uniform_zz_matches_hand_enumeration() {
        // (+,+,+) → +1; two −1 (×3) → +1; one −1 (×3) → −1 on both max pairs; (−,−,−) → +1.
        let expected = (1.0 + 3.0 - 3.0 + 1.0) / 8.0;
        let counts: Vec<_> = all_patterns("ZZZ").into_iter().map(|e| (e, 1)).collect();
        let est = Correlator::Zz
            .estimate_counts(counts, LabelingStrategy::OutcomeBased)
            .unwrap();
        assert!((est.value - expected).abs() < 1e-15);
        assert_eq!(est.num_events_used, 8);
    }

    #[test]
    fn product_is_minus_visibility() {
        let ghz = make_ghz(3).unwrap();
        for v in [0.0, 0.25, 0.8, 1.0] {
            let d = joint_distribution(&ghz, "ZXX".parse().unwrap(), v).unwrap();
            let c = Correlator::ZxxProduct
                .exact(&d, LabelingStrategy::OutcomeBased)
                .unwrap();
            assert!((c.value + v).abs() < 1e-12, "V={v}");
        }
    }

    #[test]
    fn xx_postselected_mixed_conditional_mean() {
        // Conditional-mean oracle written straight from the 8 pattern probabilities.
        let state = make_weighted_ghz(std::f64::consts::FRAC_PI_4);
        let d = joint_distribution(&state, "XXZ".parse().unwrap(), 0.8).unwrap();
        let (mut num, mut den) = (0.0, 0.0);
        for (pattern, p) in d.iter() {
            let bits = [(pattern >> 2) & 1, (pattern >> 1) & 1, pattern & 1];
            let o: Vec<f64> = bits
                .iter()
                .map(|&b| if b == 1 { -1.0 } else { 1.0 })
                .collect();
            if o[2] == 1.0 {
                num += p * o[0] * o[1];
                den += p;
            }
        }
        let c = Correlator::XxPostselected
            .exact(&d, LabelingStrategy::OutcomeBased)
            .unwrap();
        assert!((c.value - num / den).abs() < 1e-12);
        assert!((c.value + 0.8).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_at_full_visibility() {
        let ghz = make_ghz(3).unwrap();
        let events =
            crate::measurement::sample(&ghz, "ZXX".parse().unwrap(), 5000, 1.0, 7).unwrap();
        let est = corr_zxx_product(&events, LabelingStrategy::OutcomeBased).unwrap();
        assert_eq!(est.value, -1.0);
        assert_eq!(est.standard_error, 0.0);
        assert_eq!(est.num_events_used, 5000);
    }

    #[test]
    fn single_event_is_degenerate() {
        let est = corr_zz(&[ev("ZZZ", [1, -1, -1])], LabelingStrategy::OutcomeBased).unwrap();
        assert!(est.is_degenerate());
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("outcome".parse(), Ok(LabelingStrategy::OutcomeBased));
        assert_eq!("fixed:2".parse(), LabelingStrategy::fixed(2));
        assert_eq!("fixed:1:-1".parse(), LabelingStrategy::fixed_with(1, -1));
        assert!("fixed:5".parse::<LabelingStrategy>().is_err());
        assert!("fixed".parse::<LabelingStrategy>().is_err());
        assert_eq!(LabelingStrategy::fixed(2).unwrap().to_string(), "fixed:2");
    }
}
