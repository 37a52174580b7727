//! End-to-end pipelines behind the command-line front end.
//!
//! Every command is a plain function over a [`RunConfig`] so the binary only parses flags
//! and renders output.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coincidence::{
    ch_standard_errors, experiment_settings, p_xx_terms, p_zz_terms, six_terms, CHProbabilities,
    CoincidenceError, CoincidenceTable, ExactTable,
};
use crate::inequalities::{
    ch_value, chsh_value, cirelson_norm, lhv_max, Bounds, CHSHParams, ChshObservables,
    CirelsonCheck, DichotomicObservable, InequalityError, InequalityForm, InequalityReport,
    LhvResult, CIRELSON_BOUND,
};
use crate::measurement::{
    joint_distribution, sample_partitioned, MeasurementError, MeasurementSetting,
};
use crate::postselect::{CorrelationEstimate, Correlator, LabelingStrategy, PostselectError};
use crate::statevector::make_weighted_ghz;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Measurement(#[from] MeasurementError),
    #[error(transparent)]
    Postselect(#[from] PostselectError),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
    #[error(transparent)]
    Coincidence(#[from] CoincidenceError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Stable machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::InvalidConfig(_) => "invalid_config",
            CliError::Measurement(_) => "measurement",
            CliError::Postselect(PostselectError::NoAcceptedEvents(_)) => "no_accepted_events",
            CliError::Postselect(_) => "postselect",
            CliError::Inequality(_) => "inequality",
            CliError::Coincidence(CoincidenceError::Parse { .. }) => "parse",
            CliError::Coincidence(_) => "coincidence",
            CliError::Io(_) => "io",
            CliError::Json(_) => "serialization",
        }
    }
}

/// Output rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Shared run parameters. The defaults are the ideal GHZ scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub theta: f64,
    pub visibility: f64,
    pub shots: usize,
    pub seed: u64,
    pub strategy: LabelingStrategy,
    /// Sampling workers per setting.
    pub partitions: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            visibility: 1.0,
            shots: 100_000,
            seed: 0,
            strategy: LabelingStrategy::OutcomeBased,
            partitions: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.theta.is_finite() {
            return Err(CliError::InvalidConfig(format!(
                "theta {} is not finite",
                self.theta
            )));
        }
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(CliError::InvalidConfig(format!(
                "visibility {} outside [0, 1]",
                self.visibility
            )));
        }
        if self.shots == 0 {
            return Err(CliError::InvalidConfig("shots must be at least 1".into()));
        }
        if self.partitions == 0 {
            return Err(CliError::InvalidConfig(
                "partitions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Settings feeding the four correlation terms `(zz, zx, xz, xx)` under a strategy.
pub fn term_settings(strategy: LabelingStrategy) -> [MeasurementSetting; 4] {
    let one_z = |z: usize| {
        let mut label = ['X'; 3];
        label[z] = 'Z';
        label
            .iter()
            .collect::<String>()
            .parse()
            .expect("static label")
    };
    let zzz = "ZZZ".parse().expect("static label");
    match strategy {
        LabelingStrategy::OutcomeBased => [zzz, one_z(0), one_z(1), one_z(2)],
        LabelingStrategy::LocationFixed { k_location, .. } => {
            let mut pair = (0..3).filter(|&q| q != k_location);
            let (i, j) = (pair.next().unwrap(), pair.next().unwrap());
            [zzz, one_z(i), one_z(j), one_z(k_location)]
        }
    }
}

/// One correlation term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermValue {
    pub setting: MeasurementSetting,
    pub value: f64,
    pub standard_error: f64,
    /// Fraction of events (or probability mass) surviving postselection.
    pub accepted_fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub events_used: Option<u64>,
    /// Fewer than two events contributed; the standard error is meaningless.
    pub degenerate: bool,
}

impl TermValue {
    fn from_estimate(setting: MeasurementSetting, e: CorrelationEstimate) -> Self {
        Self {
            setting,
            value: e.value,
            standard_error: e.standard_error,
            accepted_fraction: e.accepted_fraction(),
            events_used: Some(e.num_events_used),
            degenerate: e.is_degenerate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlations {
    pub zz: TermValue,
    pub zx: TermValue,
    pub xz: TermValue,
    pub xx: TermValue,
}

impl Correlations {
    pub fn values(&self) -> [f64; 4] {
        [self.zz.value, self.zx.value, self.xz.value, self.xx.value]
    }
}

/// Individual triple probabilities behind the reconstructed pair probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionTerms {
    pub p_zz_terms: [f64; 4],
    pub six_terms: [f64; 6],
    pub p_xx_terms: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probabilities {
    #[serde(flatten)]
    pub ch: CHProbabilities,
    pub standard_errors: [f64; 4],
    pub reconstruction: ReconstructionTerms,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Terms {
    pub correlations: Correlations,
    pub probabilities: Probabilities,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateParams {
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportBounds {
    pub chsh: Bounds,
    pub ch: Bounds,
}

/// Full result of one exact or sampled run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub mode: &'static str,
    pub state_params: StateParams,
    pub visibility: Option<f64>,
    pub strategy: String,
    pub terms: Terms,
    pub ch_value: f64,
    pub ch_standard_error: f64,
    pub chsh_value: f64,
    pub chsh_standard_error: f64,
    pub bounds: ReportBounds,
    /// Shots per setting; `None` on the exact path.
    pub shots: Option<BTreeMap<String, u64>>,
    pub seed: Option<u64>,
}

impl ExperimentReport {
    pub fn chsh_report(&self) -> InequalityReport {
        let c = &self.terms.correlations;
        InequalityReport::new(
            InequalityForm::Chsh,
            vec![
                ("C(Z_i,Z_j)".into(), c.zz.value),
                ("x_k·C(Z_i,X_j)".into(), c.zx.value),
                ("x_k·C(X_i,Z_j)".into(), c.xz.value),
                ("C(X_i,X_j)|z_k=+1".into(), c.xx.value),
            ],
            self.chsh_value,
        )
    }

    pub fn ch_report(&self) -> InequalityReport {
        let p = &self.terms.probabilities.ch;
        InequalityReport::new(
            InequalityForm::Ch,
            vec![
                ("P_ZiZj(-1,-1)".into(), p.p_zz),
                ("P_ZiXj(-1,-x_k)".into(), p.p_zx),
                ("P_XiZj(-x_k,-1)".into(), p.p_xz),
                ("P_XiXj(x_k,x_k)".into(), p.p_xx),
            ],
            self.ch_value,
        )
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.terms.correlations;
        let p = &self.terms.probabilities;
        let _ = writeln!(s, "mode        {}", self.mode);
        let _ = writeln!(s, "theta       {}", self.state_params.theta);
        if let Some(v) = self.visibility {
            let _ = writeln!(s, "visibility  {v}");
        }
        let _ = writeln!(s, "strategy    {}", self.strategy);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed        {seed}");
        }
        if let Some(shots) = &self.shots {
            let parts: Vec<String> = shots.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "shots       {}", parts.join(" "));
        }
        let _ = writeln!(s, "\ncorrelations (setting, value, standard error)");
        for (name, t) in [("zz", c.zz), ("zx", c.zx), ("xz", c.xz), ("xx", c.xx)] {
            let flag = if t.degenerate && self.mode == "sampled" {
                "  (degenerate)"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "  {name}  {}  {:>22}  {:<22}{flag}",
                t.setting, t.value, t.standard_error
            );
        }
        let _ = writeln!(s, "\nCH probabilities");
        for (name, v, se) in [
            ("p_zz", p.ch.p_zz, p.standard_errors[0]),
            ("p_zx", p.ch.p_zx, p.standard_errors[1]),
            ("p_xz", p.ch.p_xz, p.standard_errors[2]),
            ("p_xx", p.ch.p_xx, p.standard_errors[3]),
        ] {
            let _ = writeln!(s, "  {name}  {v:>22}  {se:<22}");
        }
        let _ = writeln!(s, "  six-term bound  {}", p.ch.six_term_bound);
        let b = &self.bounds;
        let _ = writeln!(
            s,
            "\nCHSH  {} ± {}   (lhv {}, cirelson {}, max {})",
            self.chsh_value, self.chsh_standard_error, b.chsh.lhv, b.chsh.cirelson, b.chsh.max
        );
        let _ = writeln!(
            s,
            "CH    {} ± {}   (lhv band [{}, {}], cirelson {}, max {})",
            self.ch_value,
            self.ch_standard_error,
            b.ch.lhv_lower.unwrap_or(f64::NEG_INFINITY),
            b.ch.lhv,
            b.ch.cirelson,
            b.ch.max
        );
        s
    }
}

fn quadrature(errors: impl IntoIterator<Item = f64>) -> f64 {
    errors.into_iter().map(|e| e * e).sum::<f64>().sqrt()
}

fn assemble(
    mode: &'static str,
    config: &RunConfig,
    correlations: Correlations,
    ch_source: &dyn crate::coincidence::JointProbabilities,
    shots: Option<BTreeMap<String, u64>>,
    seed: Option<u64>,
    visibility: Option<f64>,
) -> Result<ExperimentReport, CliError> {
    let ch = CHProbabilities::reconstruct(ch_source)?;
    let standard_errors = ch_standard_errors(ch_source, &ch);
    let reconstruction = ReconstructionTerms {
        p_zz_terms: p_zz_terms(ch_source)?,
        six_terms: six_terms(ch_source)?,
        p_xx_terms: p_xx_terms(ch_source)?,
    };
    let [zz, zx, xz, xx] = correlations.values();
    let chsh = chsh_value(zz, zx, xz, xx, CHSHParams::plus())?;
    let [p_zz, p_zx, p_xz, p_xx] = ch.as_array();
    let ch_val = ch_value(p_zz, p_zx, p_xz, p_xx)?;
    let c = &correlations;
    Ok(ExperimentReport {
        mode,
        state_params: StateParams {
            theta: config.theta,
        },
        visibility,
        strategy: config.strategy.to_string(),
        terms: Terms {
            correlations,
            probabilities: Probabilities {
                ch,
                standard_errors,
                reconstruction,
            },
        },
        ch_value: ch_val,
        ch_standard_error: quadrature(standard_errors),
        chsh_value: chsh,
        chsh_standard_error: quadrature([c.zz, c.zx, c.xz, c.xx].iter().map(|t| t.standard_error)),
        bounds: ReportBounds {
            chsh: Bounds::chsh(),
            ch: Bounds::ch(),
        },
        shots,
        seed,
    })
}

/// All quantities from exact distributions.
pub fn cmd_exact(config: &RunConfig) -> Result<ExperimentReport, CliError> {
    config.validate()?;
    let state = make_weighted_ghz(config.theta);
    let [zz_s, zx_s, xz_s, xx_s] = term_settings(config.strategy);
    let exact = |setting: MeasurementSetting, c: Correlator| -> Result<TermValue, CliError> {
        let dist = joint_distribution(&state, setting, config.visibility)?;
        let e = c.exact(&dist, config.strategy)?;
        Ok(TermValue {
            setting,
            value: e.value,
            standard_error: 0.0,
            accepted_fraction: e.acceptance_probability,
            events_used: None,
            degenerate: false,
        })
    };
    let correlations = Correlations {
        zz: exact(zz_s, Correlator::Zz)?,
        zx: exact(zx_s, Correlator::ZxxProduct)?,
        xz: exact(xz_s, Correlator::ZxxProduct)?,
        xx: exact(xx_s, Correlator::XxPostselected)?,
    };
    let table = ExactTable::from_state(&state, config.visibility, &experiment_settings())?;
    assemble(
        "exact",
        config,
        correlations,
        &table,
        None,
        None,
        Some(config.visibility),
    )
}

/// Base seed for the `index`-th experiment setting; partitions add their index on top.
pub fn setting_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64) << 32)
}

/// Samples all five settings into a coincidence table.
pub fn sample_table(config: &RunConfig) -> Result<CoincidenceTable, CliError> {
    config.validate()?;
    let state = make_weighted_ghz(config.theta);
    let mut table = CoincidenceTable::new();
    for (idx, setting) in experiment_settings().into_iter().enumerate() {
        let events = sample_partitioned(
            &state,
            setting,
            config.shots,
            config.visibility,
            setting_seed(config.seed, idx),
            config.partitions,
        )?;
        table.add_events(&events)?;
    }
    Ok(table)
}

/// Correlation and CH pipelines over a coincidence table.
pub fn analyze_table(
    config: &RunConfig,
    table: &CoincidenceTable,
    mode: &'static str,
    seed: Option<u64>,
    visibility: Option<f64>,
) -> Result<ExperimentReport, CliError> {
    let [zz_s, zx_s, xz_s, xx_s] = term_settings(config.strategy);
    let est = |setting: MeasurementSetting, c: Correlator| -> Result<TermValue, CliError> {
        let e = c.estimate_counts(table.event_counts(setting)?, config.strategy)?;
        Ok(TermValue::from_estimate(setting, e))
    };
    let correlations = Correlations {
        zz: est(zz_s, Correlator::Zz)?,
        zx: est(zx_s, Correlator::ZxxProduct)?,
        xz: est(xz_s, Correlator::ZxxProduct)?,
        xx: est(xx_s, Correlator::XxPostselected)?,
    };
    let shots = table
        .settings()
        .map(|s| (s.label(), table.total_shots(s)))
        .collect();
    assemble(
        mode,
        config,
        correlations,
        table,
        Some(shots),
        seed,
        visibility,
    )
}

/// Samples every setting and analyzes the resulting counts.
pub fn cmd_sample(config: &RunConfig) -> Result<(ExperimentReport, CoincidenceTable), CliError> {
    let table = sample_table(config)?;
    let report = analyze_table(
        config,
        &table,
        "sampled",
        Some(config.seed),
        Some(config.visibility),
    )?;
    Ok((report, table))
}

/// Parameter swept by [`cmd_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Visibility,
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Visibility => "visibility",
            SweepParam::Theta => "theta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: f64,
    pub chsh: f64,
    pub ch: f64,
    pub bound_lhv: f64,
    pub bound_cirelson: f64,
    pub bound_max: f64,
}

pub const SWEEP_HEADER: &str = "param,value,chsh,ch,bound_lhv,bound_cirelson,bound_max";

/// Exact CHSH/CH values over an evenly spaced grid of `steps` points.
pub fn cmd_sweep(
    config: &RunConfig,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<SweepRow>, CliError> {
    if steps < 2 {
        return Err(CliError::InvalidConfig(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if !(from.is_finite() && to.is_finite()) || from >= to {
        return Err(CliError::InvalidConfig(format!(
            "invalid range {from}..{to}"
        )));
    }
    if param == SweepParam::Visibility && (from < 0.0 || to > 1.0) {
        return Err(CliError::InvalidConfig(format!(
            "visibility range {from}..{to} outside [0, 1]"
        )));
    }
    let bounds = Bounds::chsh();
    (0..steps)
        .map(|i| {
            let value = from + (to - from) * i as f64 / (steps - 1) as f64;
            let mut point = config.clone();
            match param {
                SweepParam::Visibility => point.visibility = value,
                SweepParam::Theta => point.theta = value,
            }
            let r = cmd_exact(&point)?;
            Ok(SweepRow {
                param: param.name(),
                value,
                chsh: r.chsh_value,
                ch: r.ch_value,
                bound_lhv: bounds.lhv,
                bound_cirelson: bounds.cirelson,
                bound_max: bounds.max,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.param, r.value, r.chsh, r.ch, r.bound_lhv, r.bound_cirelson, r.bound_max
        );
    }
    s
}

pub fn cmd_lhv(params: CHSHParams) -> LhvResult {
    lhv_max(params)
}

/// Result of the quantum-bound checker.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CirelsonReport {
    pub params: CHSHParams,
    /// The explicitly supplied (or canonical) observables.
    pub observables: ChshObservables,
    pub norm: CirelsonCheck,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomCirelson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomCirelson {
    pub samples: usize,
    pub seed: u64,
    pub max_norm: f64,
    pub max_disagreement: f64,
    pub violations: usize,
}

/// Parses `θ,φ` pairs for `A, a, B, b` (eight comma-separated numbers).
pub fn parse_angles(s: &str) -> Result<ChshObservables, CliError> {
    let bad = || {
        CliError::InvalidConfig(format!(
            "malformed angles {s:?}: expected 8 comma-separated numbers"
        ))
    };
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    if v.len() != 8 {
        return Err(bad());
    }
    let o = |k: usize| DichotomicObservable::from_angles(v[2 * k], v[2 * k + 1]);
    Ok(ChshObservables {
        upper_a: o(0),
        lower_a: o(1),
        upper_b: o(2),
        lower_b: o(3),
    })
}

/// Uniformly distributed unit vector.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> DichotomicObservable {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    DichotomicObservable::from_angles(z.acos(), phi)
}

pub fn random_observables<R: Rng + ?Sized>(rng: &mut R) -> ChshObservables {
    ChshObservables {
        upper_a: random_direction(rng),
        lower_a: random_direction(rng),
        upper_b: random_direction(rng),
        lower_b: random_direction(rng),
    }
}

/// Tolerance above `2√2` before a random sample counts as a violation.
pub const CIRELSON_TOLERANCE: f64 = 1e-9;

pub fn cmd_cirelson(
    observables: Option<ChshObservables>,
    params: CHSHParams,
    random: Option<usize>,
    seed: u64,
) -> CirelsonReport {
    let observables = observables.unwrap_or_else(ChshObservables::canonical);
    let norm = cirelson_norm(&observables, params);
    let random = random.map(|samples| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = RandomCirelson {
            samples,
            seed,
            max_norm: 0.0,
            max_disagreement: 0.0,
            violations: 0,
        };
        for _ in 0..samples {
            let c = cirelson_norm(&random_observables(&mut rng), params);
            out.max_norm = out.max_norm.max(c.direct);
            out.max_disagreement = out.max_disagreement.max(c.agreement());
            if c.direct > CIRELSON_BOUND + CIRELSON_TOLERANCE {
                out.violations += 1;
            }
        }
        out
    });
    CirelsonReport {
        params,
        observables,
        norm,
        bound: CIRELSON_BOUND,
        random,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_exact_is_ideal() {
        let r = cmd_exact(&RunConfig::default()).unwrap();
        assert!((r.chsh_value - 4.0).abs() < 1e-12);
        assert!((r.ch_value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn term_settings_per_strategy() {
        let labels = |s| term_settings(s).map(|x| x.label());
        assert_eq!(
            labels(LabelingStrategy::OutcomeBased),
            ["ZZZ", "ZXX", "XZX", "XXZ"]
        );
        assert_eq!(
            labels(LabelingStrategy::fixed(0).unwrap()),
            ["ZZZ", "XZX", "XXZ", "ZXX"]
        );
        assert_eq!(
            labels(LabelingStrategy::fixed(2).unwrap()),
            ["ZZZ", "ZXX", "XZX", "XXZ"]
        );
    }

    #[test]
    fn validation() {
        let bad = RunConfig {
            visibility: 1.2,
            ..RunConfig::default()
        };
        assert!(matches!(cmd_exact(&bad), Err(CliError::InvalidConfig(_))));
        let bad = RunConfig {
            shots: 0,
            ..RunConfig::default()
        };
        assert!(matches!(cmd_sample(&bad), Err(CliError::InvalidConfig(_))));
        assert!(cmd_sweep(&RunConfig::default(), SweepParam::Visibility, 0.0, 1.0, 1).is_err());
        assert!(cmd_sweep(&RunConfig::default(), SweepParam::Visibility, 0.0, 1.5, 3).is_err());
        assert!(cmd_sweep(&RunConfig::default(), SweepParam::Theta, 1.0, 0.0, 3).is_err());
        assert!(parse_angles("1,2,3").is_err());
        assert!(parse_angles("1,2,3,4,5,6,7,x").is_err());
    }

    #[test]
    fn fixed_strategy_exact() {
        for k in 0..3 {
            let cfg = RunConfig {
                strategy: LabelingStrategy::fixed(k).unwrap(),
                ..RunConfig::default()
            };
            let r = cmd_exact(&cfg).unwrap();
            assert!((r.chsh_value - 4.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn canonical_angles_parse() {
        let q = std::f64::consts::FRAC_PI_4;
        let s = format!("0,0,{},0,{},0,{},{}", 2.0 * q, q, q, std::f64::consts::PI);
        let obs = parse_angles(&s).unwrap();
        let r = cmd_cirelson(Some(obs), CHSHParams::plus(), None, 0);
        assert!((r.norm.direct - CIRELSON_BOUND).abs() < 1e-9);
    }
}
