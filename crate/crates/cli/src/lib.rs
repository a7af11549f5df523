//! Experiment harness for the phase-estimation variants in `qpe-core`:
//! argument parsing, seeded runs with optional noise, and JSON/CSV reports.

mod experiment;
mod output;
mod parse;

pub use experiment::{run_experiment, ExperimentReport, KitaevRound, OutputFormat, RunConfig};
pub use output::emit_report;
pub use parse::{parse_noise, parse_phase, ParseError};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const REWRITE_INELIGIBLE: i32 = 4;
}

/// Exit code for a library error.
pub fn exit_code(err: &qpe_core::Error) -> i32 {
    match err {
        qpe_core::Error::Capacity { .. } => exit::CAPACITY,
        qpe_core::Error::RewriteIneligible(_) => exit::REWRITE_INELIGIBLE,
        qpe_core::Error::Domain(_) => exit::USAGE,
        _ => exit::FAILURE,
    }
}
