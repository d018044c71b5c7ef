//! Command-line surface: single-point certification, grid sweeps, maximal
//! quantum-advantage scans, and the cross-check suite.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 infeasible
//! statistics, 3 solver failure, 4 I/O error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use mcd_cert::experiments::{
    advantage_to_csv, advantage_to_json, run_certify, run_max_advantage, run_sweep, sweep_to_csv,
    sweep_to_json, ConfidencePolicy, SweepSpec, TheoryPair,
};
use mcd_cert::scenario::{classify_region, CertificationResult, Overlap, Priors, Region, Theory};
use mcd_cert::verify::{run_verification, VerifyConfig};
use mcd_cert::CertError;

#[derive(Parser)]
#[command(
    name = "mcd-cert",
    version,
    about = "Certified min-entropy bounds from maximum-confidence discrimination statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a single (overlap, rate, confidence) point.
    Certify(CertifyArgs),
    /// Sweep a rate grid for a list of confusabilities.
    Sweep(SweepArgs),
    /// Per confusability, find the rate of maximal quantum advantage.
    MaxAdvantage(MaxAdvantageArgs),
    /// Run the cross-check suite (closed forms, oracles, certificates).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Quantum,
    Nc,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Quantum => Theory::Quantum,
            TheoryArg::Nc => Theory::Noncontextual,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum PairArg {
    RespectiveEavesdroppers,
    QuantumEavesdropperBoth,
}

impl From<PairArg> for TheoryPair {
    fn from(p: PairArg) -> TheoryPair {
        match p {
            PairArg::RespectiveEavesdroppers => TheoryPair::RespectiveEavesdroppers,
            PairArg::QuantumEavesdropperBoth => TheoryPair::QuantumEavesdropperBoth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct CertifyArgs {
    /// Eavesdropper model.
    #[arg(long, value_enum)]
    theory: TheoryArg,
    /// Squared overlap of the two preparations (calibrated: equals the
    /// confusability).
    #[arg(long, conflicts_with = "confusability")]
    delta_sq: Option<f64>,
    /// Confusability of the two preparations (calibrated: equals the
    /// squared overlap).
    #[arg(long)]
    confusability: Option<f64>,
    /// Rate of the confident outcome.
    #[arg(long)]
    eta0: f64,
    /// Confidence value in [0,1], or "max" for the theory's maximum.
    #[arg(long)]
    c0: String,
    /// Prior probability of the first preparation.
    #[arg(long, default_value_t = 0.5)]
    p0: f64,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML config file mirroring the sweep options; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pair: Option<PairArg>,
    /// Comma-separated confusability list.
    #[arg(long, value_delimiter = ',')]
    confusability: Option<Vec<f64>>,
    #[arg(long)]
    eta0_start: Option<f64>,
    #[arg(long)]
    eta0_stop: Option<f64>,
    #[arg(long)]
    eta0_count: Option<usize>,
    #[arg(long)]
    p0: Option<f64>,
    /// Confidence value in [0,1], or "max".
    #[arg(long)]
    c0: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MaxAdvantageArgs {
    /// Comma-separated confusability list.
    #[arg(long, value_delimiter = ',')]
    confusability: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid points per axis and count of random instances.
    #[arg(long, default_value_t = 6)]
    density: usize,
    /// Seed for the random-instance generator.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

/// Sweep options as read from the TOML config file. Field names match the
/// long flags; `confidence` takes a number or the string "max".
#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    pair: Option<PairArg>,
    confusability: Option<Vec<f64>>,
    eta0_start: Option<f64>,
    eta0_stop: Option<f64>,
    eta0_count: Option<usize>,
    p0: Option<f64>,
    confidence: Option<ConfidenceField>,
    format: Option<FormatArg>,
    output: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConfidenceField {
    Fixed(f64),
    Named(String),
}

enum CliError {
    Cert(CertError),
    Usage(String),
    Io(std::io::Error),
    VerificationFailed,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Cert(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Cert(CertError::Scenario(_)) => 1,
            CliError::Cert(CertError::InfeasibleStatistics(_)) => 2,
            CliError::Cert(CertError::Solver(_))
            | CliError::Cert(CertError::CertificateInvalid(_)) => 3,
            CliError::Io(_) => 4,
            CliError::VerificationFailed => 1,
        }
    }
}

fn parse_confidence(s: &str) -> Result<ConfidencePolicy, CliError> {
    if s.eq_ignore_ascii_case("max") || s.eq_ignore_ascii_case("maximal") {
        return Ok(ConfidencePolicy::Maximal);
    }
    s.parse::<f64>().map(ConfidencePolicy::Fixed).map_err(|_| {
        CliError::Usage(format!(
            "--c0 takes a number in [0,1] or \"max\", got {s:?}"
        ))
    })
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(CliError::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn certify_record(result: &CertificationResult, region: Region) -> String {
    format!(
        "{{\"adversary\":\"{}\",\"p_guess\":{:.11e},\"min_entropy_bits\":{:.11e},\
\"region\":\"{}\",\"status\":\"{}\",\"gap\":{:.11e},\"certificate_valid\":{}}}",
        result.adversary,
        result.p_guess,
        result.min_entropy_bits,
        region,
        result.status,
        result.gap,
        result.certificate_valid,
    )
}

fn cmd_certify(a: CertifyArgs) -> Result<(), CliError> {
    let confusability = match (a.delta_sq, a.confusability) {
        (Some(v), None) | (None, Some(v)) => v,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --delta-sq and --confusability is required".into(),
            ))
        }
    };
    let overlap = Overlap::calibrated_from_confusability(confusability)
        .map_err(|e| CliError::Cert(e.into()))?;
    let priors = Priors::new(a.p0, 1.0 - a.p0).map_err(|e| CliError::Cert(e.into()))?;
    let policy = parse_confidence(&a.c0)?;
    let theory: Theory = a.theory.into();
    let result = run_certify(theory, &overlap, priors, a.eta0, policy).map_err(CliError::Cert)?;
    let region = classify_region(theory, &overlap, a.eta0).label;
    println!("{}", certify_record(&result, region));
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), CliError> {
    let file: FileConfig = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(CliError::Io)?;
            toml::from_str(&text)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };

    let mut spec = SweepSpec::default();
    if let Some(v) = file.pair {
        spec.pair = v.into();
    }
    if let Some(v) = file.confusability {
        spec.confusabilities = v;
    }
    if let Some(v) = file.eta0_start {
        spec.eta0_start = v;
    }
    if let Some(v) = file.eta0_stop {
        spec.eta0_stop = v;
    }
    if let Some(v) = file.eta0_count {
        spec.eta0_count = v;
    }
    if let Some(v) = file.p0 {
        spec.p0 = v;
    }
    if let Some(c) = file.confidence {
        spec.policy = match c {
            ConfidenceField::Fixed(v) => ConfidencePolicy::Fixed(v),
            ConfidenceField::Named(s) => parse_confidence(&s)?,
        };
    }

    if let Some(v) = a.pair {
        spec.pair = v.into();
    }
    if let Some(v) = a.confusability {
        spec.confusabilities = v;
    }
    if let Some(v) = a.eta0_start {
        spec.eta0_start = v;
    }
    if let Some(v) = a.eta0_stop {
        spec.eta0_stop = v;
    }
    if let Some(v) = a.eta0_count {
        spec.eta0_count = v;
    }
    if let Some(v) = a.p0 {
        spec.p0 = v;
    }
    if let Some(s) = &a.c0 {
        spec.policy = parse_confidence(s)?;
    }

    let format = a.format.or(file.format).unwrap_or(FormatArg::Csv);
    let output = a.output.or(file.output);

    let records = run_sweep(&spec).map_err(CliError::Cert)?;
    let text = match format {
        FormatArg::Csv => sweep_to_csv(&records),
        FormatArg::Json => sweep_to_json(&records),
    };
    emit(output.as_ref(), &text)
}

fn cmd_max_advantage(a: MaxAdvantageArgs) -> Result<(), CliError> {
    let confusabilities = a.confusability.unwrap_or_else(|| vec![0.3, 0.5, 0.7]);
    let records = run_max_advantage(&confusabilities).map_err(CliError::Cert)?;
    let text = match a.format.unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => advantage_to_csv(&records),
        FormatArg::Json => advantage_to_json(&records),
    };
    emit(a.output.as_ref(), &text)
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let report = run_verification(&VerifyConfig {
        density: a.density,
        seed: a.seed,
        ..VerifyConfig::default()
    });
    print!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Certify(a) => cmd_certify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::MaxAdvantage(a) => cmd_max_advantage(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; parse errors are
            // usage errors (exit 1).
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
