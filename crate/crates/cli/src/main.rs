use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use socrank_cli::commands::{analyze, ingest, rank, summary, synth};
use socrank_cli::{CliError, ExperimentConfig, Result};

#[derive(Parser)]
#[command(name = "socrank", version, about = "Rank URLs shared on a social network")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat key = value config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed for synthesis, sampling and the separator.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for per-person and per-URL work.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory, also the default location of inputs [default: out].
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Override one config key; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Generate a synthetic follow graph and share log.
    Synth,
    /// Load edges, shares and redirects into a snapshot and data summary.
    Ingest,
    /// PRSN, HSN and max-flow rankings of the selected URL sets.
    Rank,
    /// Consistency, pairwise, affected-set, distance and separator outputs.
    Analyze,
    /// Print the result tables found in the output directory.
    Summary,
}

fn config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for pair in &cli.overrides {
        cfg.apply_override(pair)?;
    }
    if let Some(seed) = cli.seed {
        cfg.set("seed", &seed.to_string())?;
    }
    if let Some(threads) = cli.threads {
        cfg.threads = Some(threads);
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = config(cli)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Synth => synth::run(&cfg),
        Command::Ingest => ingest::run(&cfg),
        Command::Rank => rank::run(&cfg),
        Command::Analyze => analyze::run(&cfg),
        Command::Summary => summary::run(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
