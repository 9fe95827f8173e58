use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use seqdisc::cli::{
    gap_sign_changes, parse_switch, report_crossover, run_sweep, write_csv, write_json, OutputFormat, SweepConfig,
    SweepSettings,
};

/// Sweep the optimal success probability of sequential coherent-state
/// discrimination over a range of mean photon numbers.
#[derive(Debug, Parser)]
#[command(name = "seqdisc", version)]
struct Args {
    /// Smallest mean photon number on the grid.
    #[arg(long)]
    n_min: Option<f64>,
    /// Largest mean photon number on the grid.
    #[arg(long)]
    n_max: Option<f64>,
    /// Number of grid points, ends included.
    #[arg(long)]
    steps: Option<usize>,
    /// Prior probability of the `+alpha` state.
    #[arg(long)]
    prior_q1: Option<f64>,
    /// Number of sequential receivers.
    #[arg(long)]
    receivers: Option<usize>,
    /// Fock-space truncation; picked per point when absent.
    #[arg(long)]
    dim: Option<usize>,
    /// Optimizer restarts per grid point.
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Compute the single-receiver baseline (on|off).
    #[arg(long, value_parser = parse_on_off)]
    baseline: Option<bool>,
    /// Upper end of the interaction-strength search interval.
    #[arg(long)]
    phi_box_max: Option<f64>,
    /// TOML file with any of the settings above; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: seqdisc::Error| e.to_string())
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    parse_switch(s).map_err(|e| e.to_string())
}

impl Args {
    fn settings(&self) -> SweepSettings {
        SweepSettings {
            n_min: self.n_min,
            n_max: self.n_max,
            steps: self.steps,
            prior_q1: self.prior_q1,
            receivers: self.receivers,
            dim: self.dim,
            restarts: self.restarts,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            baseline: self.baseline,
            phi_box_max: self.phi_box_max,
        }
    }

    fn resolve(&self) -> seqdisc::Result<SweepConfig> {
        let file = match &self.config {
            Some(path) => SweepSettings::from_file(path)?,
            None => SweepSettings::default(),
        };
        self.settings().or(file).resolve()
    }
}

fn configure_workers() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("SEQDISC_WORKERS") {
        let n: usize = v.parse().with_context(|| format!("SEQDISC_WORKERS must be a count, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(config: &SweepConfig) -> anyhow::Result<()> {
    configure_workers()?;
    let rows = run_sweep(config)?;
    let sink: Box<dyn Write> = match &config.out {
        Some(path) => {
            Box::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match config.format {
        OutputFormat::Csv => write_csv(&rows, &mut sink)?,
        OutputFormat::Json => write_json(&rows, &mut sink)?,
    }
    sink.flush()?;

    if config.baseline {
        match report_crossover(&rows) {
            Some(n) => eprintln!("crossover at mean photon number {n:.6}"),
            None => eprintln!("no crossover in [{}, {}]", config.n_min, config.n_max),
        }
        let changes = gap_sign_changes(&rows);
        if changes > 1 {
            eprintln!("warning: gap changes sign {changes} times");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match args.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
