//! The `eventscore` command line: `score`, `validate` and `rank`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 corpus
//! validation error, 3 backend failure (adapter timeouts included).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{parse_corpus, validate_corpus, CorpusManifest, InputFormat, ValidationEntry};
use crate::error::{CorpusError, ScoringError, SentimentError};
use crate::pipeline::{score_manifest, PipelineError};
use crate::report::{parse_scores_csv, render_table, OutputFormat};
use crate::scoring::{rank_events, WeightConfig};
use crate::sentiment::adapter::{AdapterBackend, AdapterConfig, AdapterEndpoint, DEFAULT_TIMEOUT};
use crate::sentiment::{BackendKind, CachedBackend, CountingBackend, LexiconBackend, ResultCache, SentimentBackend};

pub const CACHE_ENV: &str = "EVENTSCORE_CACHE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BACKEND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eventscore", version, about = "Score post-activity reports by sentiment and rank them by Event Score")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a corpus and write the ranked Event Score table.
    Score(ScoreArgs),
    /// Check a corpus and print per-row validation results.
    Validate(ValidateArgs),
    /// Re-rank an existing scores CSV.
    Rank(RankArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_name = "csv|jsonl")]
    pub format: Option<String>,
    #[arg(long, default_value = "lexicon", value_name = "lexicon|adapter")]
    pub backend: String,
    /// Adapter command line, or an http(s) URL.
    #[arg(long, value_name = "CMD_OR_URL")]
    pub adapter: Option<String>,
    #[arg(long, default_value = "0.2,0.4,0.4", value_name = "P,R,C")]
    pub weights: String,
    /// Divide the weights by their sum instead of rejecting them.
    #[arg(long)]
    pub renormalize_weights: bool,
    /// Result cache directory (default: $EVENTSCORE_CACHE).
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub output: PathBuf,
    #[arg(long, default_value = "csv", value_name = "csv|json|md")]
    pub output_format: String,
    /// Print scores as two-decimal percentages.
    #[arg(long)]
    pub percent: bool,
    /// Adapter response timeout in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub timeout: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_name = "csv|jsonl")]
    pub format: Option<String>,
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub output: PathBuf,
    /// `json` prints the report as JSON; anything else prints text lines.
    #[arg(long, default_value = "text", value_name = "text|json")]
    pub output_format: String,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub output: PathBuf,
    #[arg(long, default_value = "csv", value_name = "csv|json|md")]
    pub output_format: String,
    #[arg(long)]
    pub percent: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub input_format: InputFormat,
    pub backend: BackendKind,
    /// Present exactly when `backend` is the adapter.
    pub adapter: Option<AdapterEndpoint>,
    pub weights: WeightConfig,
    pub cache_path: Option<PathBuf>,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
    pub percent_mode: bool,
    pub renormalize_weights: bool,
    pub timeout: Duration,
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Output { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("corpus validation failed: {0} invalid record(s)")]
    Validation(usize, Vec<ValidationEntry>),
    #[error("{0}")]
    Scores(String),
    #[error(transparent)]
    Backend(SentimentError),
    #[error(transparent)]
    Scoring(ScoringError),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) | CommandError::Input { .. } | CommandError::Output { .. } => EXIT_USAGE,
            CommandError::Corpus { .. }
            | CommandError::Validation(..)
            | CommandError::Scores(_)
            | CommandError::Scoring(_) => EXIT_VALIDATION,
            CommandError::Backend(e) if e.is_backend_failure() => EXIT_BACKEND,
            CommandError::Backend(_) => EXIT_USAGE,
        }
    }
}

/// Parses `"w_p,w_r,w_c"`.
pub fn load_weights_config(raw: &str, renormalize: bool) -> Result<WeightConfig, CommandError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CommandError::Config(format!(
            "weights must be three comma-separated numbers, got {raw:?}"
        )));
    }
    let mut w = [0.0; 3];
    for (slot, part) in w.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CommandError::Config(format!("weight {part:?} is not a number")))?;
    }
    let built = if renormalize {
        WeightConfig::renormalized(w[0], w[1], w[2])
    } else {
        WeightConfig::new(w[0], w[1], w[2])
    };
    built.map_err(|e| CommandError::Config(e.to_string()))
}

fn parse_input_format(flag: Option<&str>, path: &Path) -> Result<InputFormat, CommandError> {
    match flag {
        Some(f) => f.parse().map_err(CommandError::Config),
        None => Ok(InputFormat::from_path(path)),
    }
}

impl RunConfig {
    /// Resolves flags; `env` supplies environment variables.
    pub fn from_score_args(args: &ScoreArgs, env: impl Fn(&str) -> Option<String>) -> Result<Self, CommandError> {
        let backend: BackendKind = args
            .backend
            .parse()
            .map_err(|e: SentimentError| CommandError::Config(e.to_string()))?;
        let adapter = match (backend, args.adapter.as_deref()) {
            (BackendKind::Adapter, Some(raw)) => {
                Some(AdapterEndpoint::parse(raw).map_err(|e| CommandError::Config(e.to_string()))?)
            }
            (BackendKind::Adapter, None) => {
                return Err(CommandError::Config("--backend adapter requires --adapter".into()))
            }
            (BackendKind::Lexicon, Some(_)) => {
                return Err(CommandError::Config("--adapter is only valid with --backend adapter".into()))
            }
            (BackendKind::Lexicon, None) => None,
        };
        let timeout = match args.timeout {
            None => DEFAULT_TIMEOUT,
            Some(t) if t.is_finite() && t > 0.0 => Duration::from_secs_f64(t),
            Some(t) => return Err(CommandError::Config(format!("--timeout must be positive, got {t}"))),
        };
        Ok(RunConfig {
            input_path: args.input.clone(),
            input_format: parse_input_format(args.format.as_deref(), &args.input)?,
            backend,
            adapter,
            weights: load_weights_config(&args.weights, args.renormalize_weights)?,
            cache_path: args.cache.clone().or_else(|| env(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)),
            output_path: args.output.clone(),
            output_format: args.output_format.parse().map_err(CommandError::Config)?,
            percent_mode: args.percent,
            renormalize_weights: args.renormalize_weights,
            timeout,
        })
    }
}

/// What a successful `score` run did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub records: usize,
    pub backend: String,
    pub weights: [f64; 3],
    /// Calls that reached the backend (cache hits excluded).
    pub backend_invocations: usize,
}

impl RunSummary {
    pub fn line(&self) -> String {
        format!(
            "scored {} records with backend {} (weights P={} R={} C={}); {} backend calls",
            self.records, self.backend, self.weights[0], self.weights[1], self.weights[2], self.backend_invocations
        )
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CommandError> {
    fs::read(path).map_err(|source| CommandError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_corpus(path: &Path, format: InputFormat) -> Result<CorpusManifest, CommandError> {
    let bytes = read_input(path)?;
    parse_corpus(bytes.as_slice(), format, &path.display().to_string()).map_err(|source| CommandError::Corpus {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(path: &Path, text: &str) -> Result<(), CommandError> {
    let result = if path == Path::new("-") {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush())
    } else {
        fs::write(path, text)
    };
    result.map_err(|source| CommandError::Output {
        path: path.to_path_buf(),
        source,
    })
}

fn build_backend(config: &RunConfig) -> Result<Box<dyn SentimentBackend>, CommandError> {
    match config.backend {
        BackendKind::Lexicon => Ok(Box::new(LexiconBackend::default())),
        BackendKind::Adapter => {
            let endpoint = config
                .adapter
                .clone()
                .ok_or_else(|| CommandError::Config("adapter backend without --adapter".into()))?;
            let adapter = AdapterBackend::connect(&AdapterConfig::new(endpoint).with_timeout(config.timeout))
                .map_err(CommandError::Backend)?;
            Ok(Box::new(adapter))
        }
    }
}

/// Runs `score` and returns its summary; the caller maps errors to exit codes.
pub fn score_command(config: &RunConfig) -> Result<RunSummary, CommandError> {
    let manifest = load_corpus(&config.input_path, config.input_format)?;
    let backend = CountingBackend::new(build_backend(config)?);

    let cache = config.cache_path.as_ref().and_then(|dir| match ResultCache::open(dir) {
        Ok(c) => Some(c),
        Err(e) => {
            log::warn!("cannot open cache {} ({e}); scoring without cache", dir.display());
            None
        }
    });

    let scored = match cache {
        Some(cache) => score_manifest(&CachedBackend::new(&backend, cache), &manifest, &config.weights),
        None => score_manifest(&backend, &manifest, &config.weights),
    }
    .map_err(|e| match e {
        PipelineError::Validation(report) => {
            let bad = report.iter().filter(|r| r.status == "invalid").count();
            CommandError::Validation(bad, report)
        }
        PipelineError::Sentiment(e) => CommandError::Backend(e),
        PipelineError::Scoring(e) => CommandError::Scoring(e),
    })?;

    write_output(
        &config.output_path,
        &render_table(&scored.table, config.output_format, config.percent_mode),
    )?;

    Ok(RunSummary {
        records: manifest.record_count(),
        backend: backend.descriptor().id.clone(),
        weights: [config.weights.w_p, config.weights.w_r, config.weights.w_c],
        backend_invocations: backend.invocations(),
    })
}

fn report_error(e: &CommandError) {
    eprintln!("error: {e}");
    if let CommandError::Validation(_, report) = e {
        for entry in report.iter().filter(|r| r.status == "invalid") {
            eprintln!("  row {}: {}", entry.row_index, entry.reasons.join(", "));
        }
    }
}

pub fn run_score_command(config: &RunConfig) -> i32 {
    match score_command(config) {
        Ok(summary) => {
            eprintln!("{}", summary.line());
            EXIT_OK
        }
        Err(e) => {
            report_error(&e);
            e.exit_code()
        }
    }
}

fn render_validation(report: &[ValidationEntry], json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("serializable");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    for e in report {
        out.push_str(&format!("row {}: {}", e.row_index, e.status));
        if !e.reasons.is_empty() {
            out.push_str(&format!(" reasons={}", e.reasons.join(",")));
        }
        if !e.flags.is_empty() {
            out.push_str(&format!(" flags={}", e.flags.join(",")));
        }
        out.push('\n');
    }
    out
}

/// Returns the validation report; `Err` only for unreadable or unparseable input.
pub fn validate_command(args: &ValidateArgs) -> Result<Vec<ValidationEntry>, CommandError> {
    let format = parse_input_format(args.format.as_deref(), &args.input)?;
    let manifest = load_corpus(&args.input, format)?;
    let report = validate_corpus(&manifest);
    write_output(&args.output, &render_validation(&report, args.output_format == "json"))?;
    Ok(report)
}

pub fn run_validate_command(args: &ValidateArgs) -> i32 {
    match validate_command(args) {
        Ok(report) if report.iter().all(|e| e.status != "invalid") => EXIT_OK,
        Ok(report) => {
            let bad = report.iter().filter(|e| e.status == "invalid").count();
            eprintln!("{bad} invalid record(s)");
            EXIT_VALIDATION
        }
        Err(e) => {
            report_error(&e);
            e.exit_code()
        }
    }
}

pub fn rank_command(args: &RankArgs) -> Result<(), CommandError> {
    let format: OutputFormat = args.output_format.parse().map_err(CommandError::Config)?;
    let bytes = read_input(&args.input)?;
    let text = String::from_utf8(bytes).map_err(|e| CommandError::Scores(format!(
        "{}: not valid UTF-8 at byte {}",
        args.input.display(),
        e.utf8_error().valid_up_to()
    )))?;
    let rows = parse_scores_csv(&text).map_err(|e| CommandError::Scores(format!("{}: {e}", args.input.display())))?;
    let table = rank_events(rows).map_err(CommandError::Scoring)?;
    write_output(&args.output, &render_table(&table, format, args.percent))
}

pub fn run_rank_command(args: &RankArgs) -> i32 {
    match rank_command(args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            report_error(&e);
            e.exit_code()
        }
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(args: I, env: impl Fn(&str) -> Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match cli.command {
        Command::Score(args) => match RunConfig::from_score_args(&args, env) {
            Ok(config) => run_score_command(&config),
            Err(e) => {
                report_error(&e);
                e.exit_code()
            }
        },
        Command::Validate(args) => run_validate_command(&args),
        Command::Rank(args) => run_rank_command(&args),
    }
}
