use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galcom_cli::generate::{generate, GenParams, Kind};
use galcom_cli::{corpus, load_path, run_any, CliError, Config, Report, Suite};

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

#[derive(Parser)]
#[command(name = "galcom", version, about = "Exact checks for corings, comodules, firm rings and Galois comodules")]
struct Cli {
    /// Seed for random test families; overrides the instance's own seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Target size of each test family of modules.
    #[arg(long, global = true)]
    family_size: Option<usize>,
    /// Largest dimension a generator may produce.
    #[arg(long, global = true, default_value_t = 8)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Load an instance and run the axiom suite.
    Validate { file: PathBuf },
    /// Run one suite on an instance.
    Check {
        suite: Suite,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every suite on an instance and print the full report.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Write a generated instance as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Size parameter; its meaning depends on the kind.
        #[arg(long)]
        n: Option<usize>,
        /// Characteristic; rationals when omitted.
        #[arg(long)]
        p: Option<u32>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the built-in corpus into a directory, one file per instance.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn run_report(file: &Path, suite: Suite, format: Format, config: Config) -> Result<Report, CliError> {
    let inst = load_path(file)?;
    let report = run_any(&inst, suite, config);
    match format {
        Format::Text => emit(&report.to_text()),
        Format::Json => emit(&format!("{}\n", report.to_json())),
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let config = Config { seed: cli.seed, family_size: cli.family_size };
    match cli.command {
        Command::Validate { file } => Ok(run_report(&file, Suite::Axioms, Format::Text, config)?.passed()),
        Command::Check { suite, file, format } => Ok(run_report(&file, suite, format, config)?.passed()),
        Command::Report { file, format, suite } => Ok(run_report(&file, suite, format, config)?.passed()),
        Command::Generate { kind, n, p, out } => {
            let params = GenParams { n, p, seed: cli.seed.unwrap_or(0), max_dim: cli.max_dim };
            let text = generate(kind, &params)?.to_json();
            match out {
                Some(path) => write(&path, &text)?,
                None => emit(&format!("{text}\n")),
            }
            Ok(true)
        }
        Command::Corpus { out } => {
            std::fs::create_dir_all(&out).map_err(|source| CliError::Io { path: out.display().to_string(), source })?;
            for doc in corpus::corpus() {
                write(&out.join(format!("{}.json", doc.name)), &doc.to_json())?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
