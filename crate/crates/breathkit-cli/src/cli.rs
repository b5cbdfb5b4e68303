//! Flag surface and dispatch.

use crate::commands::{
    classify_report, eval_report, limits_report, sweep_report, verify_report, ClassifyArgs,
    ClassifyFormat, EvalArgs, SweepArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::format::fmt_f64;
use crate::manifest::{Command, OutputFormat, RunManifest};
use breathkit_core::packing::{PackingKind, PackingScenario};
use breathkit_core::partition::{CoefficientDefinition, ValidityConfig, DEFAULT_EPS_CLASS};
use breathkit_core::sweep::{Spacing, SweepConfig};
use clap::{Args, Parser, Subcommand};
use core::f64::consts::{FRAC_PI_6, PI};
use std::path::PathBuf;

pub const JOBS_ENV: &str = "BREATHKIT_JOBS";

#[derive(Parser)]
#[command(
    name = "breathkit",
    version,
    about = "Breathing coefficients of porous bodies and uniaxial swelling of monosized disc packings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Subcommand)]
pub enum Commands {
    /// Classify a volume-variation partition and print all six coefficients
    Classify(ClassifyOpts),
    /// Evaluate the swelling model at a single swelling factor
    Eval(EvalOpts),
    /// Sample the swelling model over a swelling-factor range
    Sweep(SweepOpts),
    /// Check tile areas and tessellations against the analytic model
    Verify(VerifyOpts),
    /// Print the characteristic limit values and the closed-form minima table
    Limits,
}

#[derive(Args)]
pub struct ClassifyOpts {
    /// Body volume variation
    #[arg(long = "db", allow_hyphen_values = true)]
    pub d_body: Option<f64>,
    /// Solid volume variation
    #[arg(long = "ds", allow_hyphen_values = true)]
    pub d_solid: Option<f64>,
    /// Void volume variation
    #[arg(long = "dv", allow_hyphen_values = true)]
    pub d_void: Option<f64>,
    /// Coefficient definition: bs, vs, vb, sb, sv, bv
    #[arg(long = "def", default_value = "bs")]
    pub definition: String,
    /// Volume uncertainty
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    /// Threshold factor standing in for "much larger than"
    #[arg(long = "k", default_value_t = 10.0)]
    pub threshold_factor: f64,
    /// Classification tolerance relative to the largest component
    #[arg(long = "eps-class", default_value_t = DEFAULT_EPS_CLASS)]
    pub eps_class: f64,
    /// Output format: text, csv, or json
    #[arg(long, default_value = "text")]
    pub format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScenarioOpts {
    /// Initial packing: square, hex30, or hex60
    #[arg(long)]
    pub packing: String,
    /// Initial packing angle (radians unless --degrees; hex30 fixes pi/6)
    #[arg(long)]
    pub alpha0: Option<f64>,
    /// Interpret angles in degrees
    #[arg(long)]
    pub degrees: bool,
}

impl ScenarioOpts {
    fn build(&self) -> Result<PackingScenario, CliError> {
        let kind = PackingKind::parse(&self.packing)
            .ok_or_else(|| CliError::Usage(format!("unknown packing '{}'", self.packing)))?;
        let alpha0 = match self.alpha0 {
            Some(a) => {
                if self.degrees {
                    a * PI / 180.0
                } else {
                    a
                }
            }
            None => match kind {
                PackingKind::Hex30 => FRAC_PI_6,
                _ => 0.0,
            },
        };
        PackingScenario::new(kind, alpha0).map_err(CliError::from)
    }
}

#[derive(Args)]
pub struct EvalOpts {
    #[command(flatten)]
    pub scenario: ScenarioOpts,
    /// Swelling factor
    #[arg(long)]
    pub xi: f64,
    /// Synthetic area uncertainty for the validity gate
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long = "k", default_value_t = 10.0)]
    pub threshold_factor: f64,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepOpts {
    #[command(flatten)]
    pub scenario: ScenarioOpts,
    /// Swelling-factor range as start:end
    #[arg(long)]
    pub xi: String,
    /// Number of samples (at least 2)
    #[arg(long)]
    pub samples: usize,
    /// Grid spacing: log2 (default) or linear
    #[arg(long, default_value = "log2")]
    pub spacing: String,
    /// Synthetic area uncertainty for the validity gate
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long = "k", default_value_t = 10.0)]
    pub threshold_factor: f64,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (falls back to BREATHKIT_JOBS, then 1)
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args)]
pub struct VerifyOpts {
    /// Number of seeded-random oracle trials
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    /// RNG seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Restrict to one packing kind
    #[arg(long)]
    pub packing: Option<String>,
    /// Fix the swelling factor instead of sampling it
    #[arg(long)]
    pub xi: Option<f64>,
    /// Fix the initial angle instead of sampling it (radians unless --degrees)
    #[arg(long)]
    pub alpha0: Option<f64>,
    #[arg(long)]
    pub degrees: bool,
    /// Tessellation patch size
    #[arg(long, default_value_t = 3)]
    pub copies: usize,
    /// Dump the first trial's tile geometry as JSON to this path
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<OutputFormat, CliError> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(CliError::Usage(format!("unknown format '{other}'"))),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--xi expects start:end, got '{s}'")))?;
    let lo: f64 = a
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid range start '{a}'")))?;
    let hi: f64 = b
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid range end '{b}'")))?;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(CliError::Usage("range end must exceed range start".into()));
    }
    Ok((lo, hi))
}

fn validity_config(sigma: f64, k: f64) -> Result<ValidityConfig, CliError> {
    ValidityConfig::new(sigma, k)
        .map_err(|_| CliError::Usage("--sigma must be >= 0 and --k above 1".into()))
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, CliError> {
    let jobs = match flag {
        Some(j) => j,
        None => match std::env::var(JOBS_ENV) {
            Ok(value) => value
                .parse()
                .map_err(|_| CliError::Usage(format!("{JOBS_ENV} must be a positive integer")))?,
            Err(_) => 1,
        },
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(jobs)
}

fn emit(manifest: &RunManifest, content: &str) -> Result<(), CliError> {
    match &manifest.output_path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Commands::Classify(opts) => {
            let format = match opts.format.as_str() {
                "text" => ClassifyFormat::Text,
                "csv" => ClassifyFormat::Csv,
                "json" => ClassifyFormat::Json,
                other => return Err(CliError::Usage(format!("unknown format '{other}'"))),
            };
            let definition = CoefficientDefinition::parse(&opts.definition)
                .ok_or_else(|| CliError::Usage(format!("unknown definition '{}'", opts.definition)))?;
            let args = ClassifyArgs {
                d_body: opts.d_body,
                d_solid: opts.d_solid,
                d_void: opts.d_void,
                definition,
                validity: validity_config(opts.sigma, opts.threshold_factor)?,
                eps_class: opts.eps_class,
                format,
            };
            let manifest = RunManifest::new(Command::Classify, OutputFormat::Csv, opts.output);
            emit(&manifest, &classify_report(&args)?)
        }
        Commands::Eval(opts) => {
            let scenario = opts.scenario.build()?;
            let mut manifest =
                RunManifest::new(Command::Eval, parse_format(&opts.format)?, opts.output.clone());
            manifest.set("packing", scenario.kind().as_str().to_string());
            manifest.set("alpha0", fmt_f64(scenario.alpha0()));
            manifest.set("xi", fmt_f64(opts.xi));
            manifest.set("sigma", fmt_f64(opts.sigma));
            manifest.set("threshold_factor", fmt_f64(opts.threshold_factor));
            let args = EvalArgs {
                scenario,
                xi: opts.xi,
                validity: validity_config(opts.sigma, opts.threshold_factor)?,
            };
            emit(&manifest, &eval_report(&args, &manifest)?)
        }
        Commands::Sweep(opts) => {
            let scenario = opts.scenario.build()?;
            let (xi_start, xi_end) = parse_range(&opts.xi)?;
            if opts.samples < 2 {
                return Err(CliError::Usage("--samples must be at least 2".into()));
            }
            let spacing = Spacing::parse(&opts.spacing)
                .ok_or_else(|| CliError::Usage(format!("unknown spacing '{}'", opts.spacing)))?;
            let jobs = resolve_jobs(opts.jobs)?;
            let config = SweepConfig {
                scenario,
                xi_start,
                xi_end,
                samples: opts.samples,
                spacing,
                validity: validity_config(opts.sigma, opts.threshold_factor)?,
            };
            config.validate().map_err(CliError::from)?;
            let mut manifest =
                RunManifest::new(Command::Sweep, parse_format(&opts.format)?, opts.output.clone());
            manifest.set("packing", scenario.kind().as_str().to_string());
            manifest.set("alpha0", fmt_f64(scenario.alpha0()));
            manifest.set("xi_start", fmt_f64(xi_start));
            manifest.set("xi_end", fmt_f64(xi_end));
            manifest.set("samples", opts.samples.to_string());
            manifest.set("spacing", spacing.as_str().to_string());
            manifest.set("sigma", fmt_f64(opts.sigma));
            manifest.set("threshold_factor", fmt_f64(opts.threshold_factor));
            manifest.set("jobs", jobs.to_string());
            let args = SweepArgs { config, jobs };
            emit(&manifest, &sweep_report(&args, &manifest)?)
        }
        Commands::Verify(opts) => {
            let packing = match &opts.packing {
                Some(s) => Some(
                    PackingKind::parse(s)
                        .ok_or_else(|| CliError::Usage(format!("unknown packing '{s}'")))?,
                ),
                None => None,
            };
            let alpha0 = opts.alpha0.map(|a| if opts.degrees { a * PI / 180.0 } else { a });
            let args = VerifyArgs {
                trials: opts.trials,
                seed: opts.seed,
                packing,
                xi: opts.xi,
                alpha0,
                copies: opts.copies,
                dump: opts.dump,
            };
            print!("{}", verify_report(&args)?);
            Ok(())
        }
        Commands::Limits => {
            print!("{}", limits_report());
            Ok(())
        }
    }
}

/// Parses the command line and runs it, turning every outcome into the
/// documented exit status.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
