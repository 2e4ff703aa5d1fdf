use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gmig_runner::config::ExperimentConfig;
use gmig_runner::manifest::RunManifest;
use gmig_runner::pipeline::{CONFIG_FILE, REPORT_FILE};
use gmig_runner::{run, sweep, RunError, Stage, SweepAxis};

/// Experiment runner for complex Gaussian random source simulations.
#[derive(Parser)]
#[command(name = "gmig", version)]
struct Cli {
    /// Worker threads; defaults to the GMIG_THREADS environment variable,
    /// then to the number of CPUs.
    #[arg(long, global = true, env = "GMIG_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the root seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a configuration without running it.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Run the full pipeline.
    Run {
        #[command(flatten)]
        common: Common,
        /// First stage whose outputs are (re)written: configure, sample,
        /// farfield, estimate, recover or report.
        #[arg(long, default_value = "configure")]
        stage_from: String,
    },
    /// Run the pipeline over several values of one axis.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// q, realizations, directions or tau_max.
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values (at least three).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        values: Vec<f64>,
    },
    /// Regenerate the report of a finished run from its persisted estimates.
    Report {
        /// Output directory of the run.
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(common: &Common) -> Result<ExperimentConfig, RunError> {
    let mut c = ExperimentConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        c.run.seed = seed;
    }
    if let Some(out) = &common.out {
        c.run.output = out.clone();
    }
    Ok(c)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn execute(cli: Cli) -> Result<(), RunError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| RunError::Config(format!("cannot configure {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Validate { common } => {
            let c = load(&common)?;
            c.validate()?;
            let strengths = c.strengths_on(c.source_grid()?)?;
            let report = gmig_core::field::validate_strengths(&strengths);
            emit(&format!("strengths: {}\n", report.summary()));
            if !report.inadmissible.is_empty() {
                return Err(RunError::Config(format!("strengths are inadmissible: {}", report.summary())));
            }
            emit(&format!("configuration is valid ({})\n", gmig_runner::manifest::config_hash(&c)));
        }
        Command::Run { common, stage_from } => {
            let c = load(&common)?;
            let outcome = run(&c, Stage::parse(&stage_from)?)?;
            emit(&outcome.report);
            emit(&format!("outputs in {}\n", c.run.output.display()));
        }
        Command::Sweep { common, axis, values } => {
            let c = load(&common)?;
            let outcome = sweep(&c, SweepAxis::parse(&axis)?, &values)?;
            for row in &outcome.rows {
                emit(&format!("{}\n", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
            }
            emit(&format!("trace written to {}\n", outcome.trace.display()));
        }
        Command::Report { out } => {
            let previous = RunManifest::load(&out)?;
            let mut c = ExperimentConfig::load(&out.join(CONFIG_FILE))?;
            c.run.output = out.clone();
            if gmig_runner::manifest::config_hash(&c) != previous.config_hash {
                return Err(RunError::Config("stored configuration does not match the manifest hash".into()));
            }
            run(&c, Stage::Report)?;
            emit(&std::fs::read_to_string(out.join(REPORT_FILE))?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
