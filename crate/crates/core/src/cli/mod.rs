//! Sweep driver behind the `seqdisc` binary: configuration, evaluation over a
//! grid of mean photon numbers, and CSV/JSON output.

pub mod config;
pub mod output;
pub mod sweep;

pub use config::{parse_switch, OutputFormat, SweepConfig, SweepSettings};
pub use output::{read_csv, read_json, write_csv, write_json};
pub use sweep::{evaluate_point, gap_sign_changes, report_crossover, run_sweep, SweepRow};
