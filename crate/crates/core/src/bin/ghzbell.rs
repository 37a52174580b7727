use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ghzbell::cli::{
    analyze_table, cmd_cirelson, cmd_exact, cmd_lhv, cmd_sample, cmd_sweep, parse_angles,
    sweep_csv, CliError, ExperimentReport, OutputFormat, RunConfig, SweepParam, SweepRow,
};
use ghzbell::coincidence::{load_counts, save_counts};
use ghzbell::inequalities::CHSHParams;
use ghzbell::postselect::LabelingStrategy;

/// Postselected CHSH experiments on three-qubit GHZ states.
#[derive(Debug, Parser)]
#[command(name = "ghzbell", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// State angle: cos θ|+++⟩_y + sin θ|−−−⟩_y.
    #[arg(long, global = true, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    theta: f64,
    /// Visibility V in [0, 1].
    #[arg(long, global = true, default_value_t = 1.0)]
    visibility: f64,
    /// Shots per setting.
    #[arg(long, global = true, default_value_t = 100_000)]
    shots: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// `outcome` or `fixed:<location>`.
    #[arg(long, global = true, default_value = "outcome")]
    strategy: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Analyze this counts file instead of sampling.
    #[arg(long, global = true)]
    counts_in: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact correlations, CH probabilities and bounds.
    Exact,
    /// Sample all five settings and estimate everything from the counts.
    Sample {
        /// Write the sampled coincidence counts here.
        #[arg(long)]
        counts_out: Option<PathBuf>,
        /// Sampling workers per setting.
        #[arg(long, default_value_t = 1)]
        partitions: usize,
    },
    /// Exact values over a parameter grid.
    Sweep {
        #[arg(long, value_enum, default_value_t = Param::Visibility)]
        param: Param,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Enumerate deterministic local strategies.
    Lhv {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        m: i8,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i8,
    },
    /// Operator norm of the two-qubit CHSH operator.
    Cirelson {
        /// θ,φ for A, a, B, b (eight numbers). Defaults to the canonical optimum.
        #[arg(long, allow_hyphen_values = true)]
        angles: Option<String>,
        /// Also check this many seeded random settings.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        m: i8,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i8,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Param {
    Visibility,
    Theta,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", &e.to_string()),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let err = serde_json::json!({ "error": { "kind": kind, "message": message.trim() } });
    eprintln!("{err}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let strategy: LabelingStrategy = g.strategy.parse()?;
    let format = OutputFormat::from(g.format);
    let mut config = RunConfig {
        theta: g.theta,
        visibility: g.visibility,
        shots: g.shots,
        seed: g.seed,
        strategy,
        ..RunConfig::default()
    };
    let output = match cli.command {
        Command::Exact => {
            if g.counts_in.is_some() {
                return Err(CliError::InvalidConfig(
                    "--counts-in is only valid with `sample`".into(),
                ));
            }
            render_report(&cmd_exact(&config)?, format)?
        }
        Command::Sample {
            counts_out,
            partitions,
        } => {
            config.partitions = partitions;
            let (report, table) = match &g.counts_in {
                Some(path) => {
                    config.validate()?;
                    let table = load_counts(BufReader::new(File::open(path)?))?;
                    (analyze_table(&config, &table, "counts", None, None)?, table)
                }
                None => cmd_sample(&config)?,
            };
            if let Some(path) = counts_out {
                save_counts(&table, io::BufWriter::new(File::create(path)?))?;
            }
            render_report(&report, format)?
        }
        Command::Sweep {
            param,
            from,
            to,
            steps,
        } => {
            let param = match param {
                Param::Visibility => SweepParam::Visibility,
                Param::Theta => SweepParam::Theta,
            };
            let rows = cmd_sweep(&config, param, from, to, steps)?;
            render_sweep(&rows, format)?
        }
        Command::Lhv { m, n } => {
            let r = cmd_lhv(CHSHParams::new(m, n)?);
            match format {
                OutputFormat::Json => serde_json::to_string_pretty(&r)? + "\n",
                OutputFormat::Csv => return Err(csv_unsupported("lhv")),
                OutputFormat::Text => {
                    let mut s = format!(
                        "max |CHSH| over {} deterministic strategies (m={}, n={}): {}\n",
                        r.evaluations.len(),
                        m,
                        n,
                        r.max_abs
                    );
                    s += &format!("{} strategies attain +{}:\n", r.extremal.len(), r.max_abs);
                    for a in &r.extremal {
                        s += &format!("  {a}\n");
                    }
                    s
                }
            }
        }
        Command::Cirelson {
            angles,
            random,
            m,
            n,
        } => {
            let obs = angles.as_deref().map(parse_angles).transpose()?;
            let r = cmd_cirelson(obs, CHSHParams::new(m, n)?, random, g.seed);
            match format {
                OutputFormat::Json => serde_json::to_string_pretty(&r)? + "\n",
                OutputFormat::Csv => return Err(csv_unsupported("cirelson")),
                OutputFormat::Text => {
                    let mut s = format!(
                        "norm {} (via C² identity {}), bound 2√2 = {}\n",
                        r.norm.direct, r.norm.via_square, r.bound
                    );
                    if let Some(rnd) = r.random {
                        s += &format!(
                            "random: {} settings (seed {}), max norm {}, max disagreement {:e}, above bound {}\n",
                            rnd.samples, rnd.seed, rnd.max_norm, rnd.max_disagreement, rnd.violations
                        );
                    }
                    s
                }
            }
        }
    };
    match &g.out {
        Some(path) => File::create(path)?.write_all(output.as_bytes())?,
        None => io::stdout().lock().write_all(output.as_bytes())?,
    }
    Ok(())
}

fn csv_unsupported(cmd: &str) -> CliError {
    CliError::InvalidConfig(format!("--format csv is not available for `{cmd}`"))
}

fn render_report(r: &ExperimentReport, format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Text => r.to_text(),
        OutputFormat::Json => r.to_json()?,
        OutputFormat::Csv => sweep_csv(&[SweepRow {
            param: "visibility",
            value: r.visibility.unwrap_or(f64::NAN),
            chsh: r.chsh_value,
            ch: r.ch_value,
            bound_lhv: r.bounds.chsh.lhv,
            bound_cirelson: r.bounds.chsh.cirelson,
            bound_max: r.bounds.chsh.max,
        }]),
    })
}

fn render_sweep(rows: &[SweepRow], format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Csv => sweep_csv(rows),
        OutputFormat::Json => serde_json::to_string_pretty(rows)? + "\n",
        OutputFormat::Text => {
            let mut s = format!(
                "{:>10}  {:>22}  {:>22}  {:>22}\n",
                rows[0].param, "chsh", "ch", "chsh > 2√2"
            );
            for r in rows {
                s += &format!(
                    "{:>10.6}  {:>22}  {:>22}  {:>22}\n",
                    r.value,
                    r.chsh,
                    r.ch,
                    r.chsh > r.bound_cirelson
                );
            }
            s
        }
    })
}
