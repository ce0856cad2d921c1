//! Batch experiment runner.
//!
//! Configuration comes from flags and, optionally, a JSON config file given
//! with `--config`; flags win over the file. Every run writes a rows file
//! (CSV or JSON) and a `<stem>.summary.json` next to it holding the fully
//! resolved configuration and the headline results, so any report can be
//! replayed exactly.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::capacity::{lambda_sweep, run_classical_baseline, BaselineConfig};
use crate::channels::{FlipChannelConfig, NoisyChannelConfig};
use crate::protocol::helper_feedback_round;
use crate::report::{emit_report, write_text, Format, ReportError, ReportRow};
use crate::simulation::{run_pipeline, FeedbackLinkConfig, PipelineConfig};
use crate::stream::stream;
use crate::verify::run_suite;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("{0} check(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Sweep,
    Pipeline,
    Baseline,
    HelperDemo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Pipeline => "pipeline",
            Command::Baseline => "baseline",
            Command::HelperDemo => "helper-demo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl From<ReportFormat> for Format {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Csv => Format::Csv,
            ReportFormat::Json => Format::Json,
        }
    }
}

/// Command-line flags.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "qfeedback", version, about = "Feedback-assisted quantum channel experiments")]
pub struct Args {
    /// Experiment to run.
    #[arg(long, value_enum)]
    pub command: Option<Command>,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Noise strength for pipeline runs.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Comma-separated noise strengths for sweeps.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub lambda_grid: Option<Vec<f64>>,
    /// Rounds for helper-demo.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Slots for pipeline and baseline.
    #[arg(long)]
    pub slots: Option<usize>,
    /// Monte Carlo samples per sweep point.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Feedback quantizer resolution (0 = exact).
    #[arg(long)]
    pub quantize_bits: Option<u32>,
    /// Disable the feedback link.
    #[arg(long)]
    pub no_feedback: bool,
    /// Rows file; the summary goes to `<stem>.summary.json` beside it.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
}

/// Config file contents. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<Command>,
    pub lambda: Option<f64>,
    pub lambda_grid: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub slots: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub quantize_bits: Option<u32>,
    pub clamp_range: Option<f64>,
    pub feedback: Option<bool>,
    pub p_flip: Option<f64>,
    pub helpers: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<ReportFormat>,
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub lambda: f64,
    pub lambda_grid: Vec<f64>,
    pub trials: usize,
    pub slots: usize,
    pub samples: usize,
    pub seed: u64,
    pub quantize_bits: u32,
    pub clamp_range: f64,
    pub feedback: bool,
    pub p_flip: f64,
    pub helpers: usize,
    /// Not embedded in summaries: the same run written elsewhere must give
    /// identical bytes.
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_LAMBDA: f64 = 10.0;
pub const DEFAULT_GRID: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0];

impl ExperimentConfig {
    /// Merges flags over the file over the defaults, then validates.
    pub fn resolve(args: &Args, file: FileConfig) -> Result<Self, CliError> {
        let command = args
            .command
            .or(file.command)
            .ok_or_else(|| CliError::Usage("no command given (use --command)".into()))?;
        let default_slots = match command {
            Command::Baseline => 10_000,
            _ => 1_000,
        };
        let format = args.format.or(file.format).unwrap_or(ReportFormat::Csv);
        let output = args.output.clone().or(file.output).or_else(|| {
            (command != Command::Verify)
                .then(|| PathBuf::from(format!("reports/{}.{}", command.name(), Format::from(format).extension())))
        });
        let cfg = Self {
            command,
            lambda: args.lambda.or(file.lambda).unwrap_or(DEFAULT_LAMBDA),
            lambda_grid: args
                .lambda_grid
                .clone()
                .or(file.lambda_grid)
                .unwrap_or_else(|| DEFAULT_GRID.to_vec()),
            trials: args.trials.or(file.trials).unwrap_or(10_000),
            slots: args.slots.or(file.slots).unwrap_or(default_slots),
            samples: args.samples.or(file.samples).unwrap_or(100_000),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            quantize_bits: args.quantize_bits.or(file.quantize_bits).unwrap_or(0),
            clamp_range: file.clamp_range.unwrap_or(5.0),
            feedback: if args.no_feedback { false } else { file.feedback.unwrap_or(true) },
            p_flip: file.p_flip.unwrap_or(0.5),
            helpers: file.helpers.unwrap_or(1),
            output,
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        NoisyChannelConfig::new(self.lambda)?;
        if self.lambda_grid.is_empty() {
            return usage("lambda grid is empty".into());
        }
        for &l in &self.lambda_grid {
            NoisyChannelConfig::new(l)?;
        }
        if self.slots < 2 {
            return usage(format!("slots must be at least 2, got {}", self.slots));
        }
        if self.trials == 0 {
            return usage("trials must be positive".into());
        }
        if self.samples < crate::capacity::MIN_MC_SAMPLES {
            return usage(format!(
                "samples must be at least {}, got {}",
                crate::capacity::MIN_MC_SAMPLES,
                self.samples
            ));
        }
        FeedbackLinkConfig::new(self.quantize_bits, self.clamp_range)?;
        FlipChannelConfig::new(self.p_flip, self.helpers)?;
        if self.helpers == 0 {
            return usage("helpers must be at least 1".into());
        }
        Ok(())
    }

    /// Where the summary JSON goes for a given rows path.
    pub fn summary_path(rows: &Path) -> PathBuf {
        let stem = rows.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        rows.with_file_name(format!("{stem}.summary.json"))
    }
}

/// Reads and parses a config file.
pub fn load_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub rows: Vec<ReportRow>,
    pub summary: serde_json::Value,
    pub failed_checks: usize,
}

fn bool_bit(b: Option<bool>) -> String {
    b.map(|v| (v as u8).to_string()).unwrap_or_else(|| "-".into())
}

/// Runs the configured experiment in memory.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let config_json = serde_json::to_value(cfg).expect("config serializes");
    let mut failed_checks = 0;
    let (rows, results) = match cfg.command {
        Command::Verify => {
            let checks = run_suite(cfg.seed);
            failed_checks = checks.iter().filter(|c| !c.passed).count();
            let rows: Vec<ReportRow> = checks.iter().map(|c| c.to_row()).collect();
            (rows, json!({ "checks": checks.len(), "failed": failed_checks }))
        }
        Command::Sweep => {
            let records = lambda_sweep(&cfg.lambda_grid, cfg.samples, cfg.seed)?;
            let rows = records
                .iter()
                .map(|r| {
                    ReportRow::new()
                        .with("lambda", r.lambda)
                        .with("chi_bits", r.chi_bits)
                        .with("mc_samples", r.mc_samples)
                        .with("seed", r.seed)
                })
                .collect();
            let chi: Vec<f64> = records.iter().map(|r| r.chi_bits).collect();
            (rows, json!({ "lambda": cfg.lambda_grid, "chi_bits": chi }))
        }
        Command::Pipeline => {
            let channel = NoisyChannelConfig::new(cfg.lambda)?;
            let link = FeedbackLinkConfig::new(cfg.quantize_bits, cfg.clamp_range)?;
            let pcfg = PipelineConfig::new(cfg.slots, channel, cfg.feedback).with_feedback_link(link);
            let log = run_pipeline(&pcfg, cfg.seed)?;
            let rows = log
                .deliveries()
                .into_iter()
                .map(|d| {
                    ReportRow::new()
                        .with("slot", d.slot)
                        .with("message", d.message)
                        .with("decoded", d.decoded)
                        .with("correct", d.correct)
                        .with("lambda", cfg.lambda)
                        .with("feedback", cfg.feedback)
                })
                .collect();
            let results = json!({
                "slots": log.slots,
                "bits_sent": log.bits_sent,
                "bits_decoded_correctly": log.bits_decoded_correctly,
                "message_errors": log.message_errors(),
                "throughput_bits_per_slot": log.throughput(),
                "throughput_bits_per_qubit": log.bits_per_qubit(),
            });
            (rows, results)
        }
        Command::Baseline => {
            let bcfg = BaselineConfig::new(cfg.slots, cfg.feedback);
            let log = run_classical_baseline(&bcfg, &mut stream(cfg.seed, 0))?;
            let rows = log
                .slots
                .iter()
                .map(|s| {
                    ReportRow::new()
                        .with("slot", s.slot)
                        .with("noisy_bit_in", bool_bit(s.noisy_bit_in))
                        .with("noisy_bit_out", bool_bit(s.noisy_bit_out))
                        .with("quiet_payload_kind", s.quiet_payload_kind.as_str())
                        .with("novel_bits_delivered", s.novel_bits_delivered)
                })
                .collect();
            let results = json!({
                "novel_bits": log.novel_bits,
                "throughput_bits_per_slot": log.throughput(),
                "throughput_bits_per_qubit": log.throughput() / 2.0,
            });
            (rows, results)
        }
        Command::HelperDemo => {
            let fcfg = FlipChannelConfig::new(cfg.p_flip, cfg.helpers)?;
            let mut rng = stream(cfg.seed, 0);
            let mut rows = Vec::with_capacity(cfg.trials);
            let (mut inferred_ok, mut blind_ok) = (0usize, 0usize);
            for round in 1..=cfg.trials {
                let r = helper_feedback_round(&fcfg, round % 2 == 0, &mut rng)?;
                inferred_ok += (r.inferred_flip == r.true_flip) as usize;
                blind_ok += r.receiver_blind_guess_correct as usize;
                rows.push(
                    ReportRow::new()
                        .with("round", round)
                        .with("true_flip", r.true_flip)
                        .with("inferred_flip", r.inferred_flip)
                        .with("receiver_blind_correct", r.receiver_blind_guess_correct),
                );
            }
            let n = cfg.trials as f64;
            let results = json!({
                "rounds": cfg.trials,
                "transmitter_inference_accuracy": inferred_ok as f64 / n,
                "receiver_blind_accuracy": blind_ok as f64 / n,
            });
            (rows, results)
        }
    };

    let mut summary = json!({
        "command": cfg.command.name(),
        "seed": cfg.seed,
        "config": config_json,
    });
    if let (Some(obj), serde_json::Value::Object(extra)) = (summary.as_object_mut(), results) {
        obj.extend(extra);
    }
    Ok(RunOutcome {
        rows,
        summary,
        failed_checks,
    })
}

/// Runs the experiment and writes its reports. Failed verify checks are
/// reported through [`RunOutcome::failed_checks`], not as an error.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let outcome = execute(cfg)?;
    if let Some(path) = &cfg.output {
        emit_report(&outcome.rows, path, cfg.format.into())?;
        let summary = serde_json::to_string_pretty(&outcome.summary).expect("summary serializes") + "\n";
        write_text(&ExperimentConfig::summary_path(path), &summary)?;
    }
    Ok(outcome)
}

/// Entry point used by the binary: resolve, run, print a short report.
pub fn main_with(args: &Args) -> Result<(), CliError> {
    let file = match &args.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    let cfg = ExperimentConfig::resolve(args, file)?;
    let outcome = run_experiment(&cfg)?;
    if cfg.command == Command::Verify {
        print_checks(&outcome);
    } else {
        println!("{}", serde_json::to_string_pretty(&outcome.summary).expect("summary serializes"));
    }
    if outcome.failed_checks > 0 {
        return Err(CliError::Failed(outcome.failed_checks));
    }
    Ok(())
}

fn print_checks(outcome: &RunOutcome) {
    for row in &outcome.rows {
        let passed = matches!(row.get("passed"), Some(crate::report::Value::Bool(true)));
        let name = match row.get("check") {
            Some(crate::report::Value::Text(s)) => s.as_str(),
            _ => "?",
        };
        let num = |k| match row.get(k) {
            Some(crate::report::Value::Float(x)) => *x,
            _ => f64::NAN,
        };
        println!(
            "{} {name}: measured {:.3e}, threshold {:.3e}",
            if passed { "PASS" } else { "FAIL" },
            num("measured"),
            num("threshold")
        );
    }
}
