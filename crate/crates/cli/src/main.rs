use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qpe_cli::{
    emit_report, exit, exit_code, parse_noise, parse_phase, run_experiment, OutputFormat, RunConfig,
};
use qpe_core::circuit::CircuitDoc;
use qpe_core::{NoiseModel, PhaseFraction, QpeCircuits, Variant};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Run a quantum phase estimation experiment and print the report.
#[derive(Debug, Parser)]
#[command(name = "qpe", version)]
struct Args {
    /// kitaev, iterative, iqft, iqft-modified, acp or acp-modified
    #[arg(long, value_parser = parse_variant)]
    algorithm: Variant,

    /// Eigenphase as a binary fraction (0.1011) or dyadic ratio (11/16)
    #[arg(long, value_parser = phase_arg)]
    phase: PhaseFraction,

    /// Number of readout digits
    #[arg(long)]
    qubits: usize,

    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,

    #[arg(long)]
    seed: u64,

    /// `default`, `none`, or `readout=R,depol1=A,depol2=B`
    #[arg(long, value_parser = noise_arg)]
    noise: Option<NoiseModel>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print the circuit as JSON instead of running it
    #[arg(long)]
    dump_circuit: bool,

    /// Seeded repetitions used for per-digit accuracy
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    repeat: u64,

    /// Remove the eigenstate ancilla before running
    #[arg(long)]
    rewrite: bool,

    /// Include wall time in the report
    #[arg(long)]
    timing: bool,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: qpe_core::Error| e.to_string())
}

fn phase_arg(s: &str) -> Result<PhaseFraction, String> {
    parse_phase(s).map_err(|e| e.to_string())
}

fn noise_arg(s: &str) -> Result<NoiseModel, String> {
    parse_noise(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            } as u8);
        }
    };
    let config = RunConfig {
        algorithm: args.algorithm,
        phase: args.phase,
        n: args.qubits,
        shots: args.shots,
        seed: args.seed,
        noise: args.noise.filter(|m| !m.is_noiseless()),
        format: match args.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        },
        dump_circuit: args.dump_circuit,
        repeat: args.repeat as usize,
        rewrite: args.rewrite,
        timing: args.timing,
    };
    match run(&config) {
        Ok(bytes) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(exit::FAILURE as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn run(config: &RunConfig) -> qpe_core::Result<Vec<u8>> {
    if config.dump_circuit {
        let doc = match config.circuits()? {
            QpeCircuits::Single(c) => serde_json::to_value(CircuitDoc::from(&c)),
            QpeCircuits::KitaevPairs(pairs) => serde_json::to_value(
                pairs
                    .iter()
                    .map(|(k, cos, sin)| {
                        serde_json::json!({
                            "k": k,
                            "cos": CircuitDoc::from(cos),
                            "sin": CircuitDoc::from(sin),
                        })
                    })
                    .collect::<Vec<_>>(),
            ),
        }
        .expect("circuit document serializes");
        let mut out = serde_json::to_vec_pretty(&doc).expect("circuit document serializes");
        out.push(b'\n');
        return Ok(out);
    }
    let report = run_experiment(config)?;
    Ok(emit_report(&report, config.format))
}
