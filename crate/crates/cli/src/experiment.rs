use std::time::Instant;

use serde::{Deserialize, Serialize};

use qpe_core::estimation::outcome_for_digits;
use qpe_core::rng::split_seed;
use qpe_core::{
    decode_histogram, digit_accuracy, kitaev_estimate_from_counts, kitaev_point_estimate,
    kitaev_stitch, kitaev_stitch_bits, remove_ancilla, run_shots, Circuit, DigitAccuracy, Error,
    GateCounts, NoiseModel, PhaseEstimate, PhaseFraction, QpeCircuits, QpeConfig, ShotHistogram,
    Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algorithm: Variant,
    pub phase: PhaseFraction,
    pub n: usize,
    pub shots: u64,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    pub format: OutputFormat,
    pub dump_circuit: bool,
    /// Independent seeded repetitions feeding `per_digit_accuracy`.
    pub repeat: usize,
    /// Replace the eigenstate ancilla by local phases before running.
    pub rewrite: bool,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(algorithm: Variant, phase: PhaseFraction, n: usize, seed: u64) -> Self {
        RunConfig {
            algorithm,
            phase,
            n,
            shots: 1024,
            seed,
            noise: None,
            format: OutputFormat::Json,
            dump_circuit: false,
            repeat: 1,
            rewrite: false,
            timing: false,
        }
    }

    /// Phase digits the run is expected to recover.
    pub fn truth(&self) -> qpe_core::Result<PhaseFraction> {
        PhaseFraction::nearest(self.phase.value(), self.n as u32)
    }

    pub fn circuits(&self) -> qpe_core::Result<QpeCircuits> {
        let built = QpeConfig::new(self.n, self.phase.clone(), self.algorithm).build()?;
        if self.rewrite {
            built.try_map(remove_ancilla)
        } else {
            Ok(built)
        }
    }
}

/// Statistics of one Kitaev round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KitaevRound {
    pub k: u32,
    pub cos: ShotHistogram,
    pub sin: ShotHistogram,
    pub c_hat: f64,
    pub s_hat: f64,
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: RunConfig,
    pub histogram: Option<ShotHistogram>,
    pub kitaev: Option<Vec<KitaevRound>>,
    pub decoded: PhaseEstimate,
    /// Observed frequency of the true outcome; for Kitaev, the fraction of
    /// repetitions whose stitched digits are correct.
    pub correct_prob: f64,
    pub gate_counts: GateCounts,
    pub depth: usize,
    pub per_digit_accuracy: Option<DigitAccuracy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

struct Trial {
    histogram: Option<ShotHistogram>,
    kitaev: Option<Vec<KitaevRound>>,
    decoded: PhaseEstimate,
}

pub fn run_experiment(config: &RunConfig) -> qpe_core::Result<ExperimentReport> {
    if config.shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }
    if config.repeat == 0 {
        return Err(Error::Domain("repeat must be at least 1".into()));
    }
    let started = Instant::now();
    let circuits = config.circuits()?;
    let truth = config.truth()?;
    let (gate_counts, depth) = circuit_stats(&circuits);

    let mut trials = Vec::with_capacity(config.repeat);
    for r in 0..config.repeat {
        let seed = if r == 0 {
            config.seed
        } else {
            split_seed(config.seed, r as u64)
        };
        trials.push(run_trial(config, &circuits, seed)?);
    }

    let correct_prob = match &trials[0].histogram {
        Some(h) => h.frequency(&outcome_for_digits(&truth, config.algorithm.bit_order())),
        None => {
            let hits = trials.iter().filter(|t| t.decoded.bits == truth).count();
            hits as f64 / trials.len() as f64
        }
    };
    let per_digit_accuracy = if trials.len() > 1 {
        let pairs: Vec<_> = trials
            .iter()
            .map(|t| (truth.clone(), t.decoded.bits.clone()))
            .collect();
        Some(digit_accuracy(&pairs)?)
    } else {
        None
    };
    let first = trials.swap_remove(0);
    Ok(ExperimentReport {
        config: config.clone(),
        histogram: first.histogram,
        kitaev: first.kitaev,
        decoded: first.decoded,
        correct_prob,
        gate_counts,
        depth,
        per_digit_accuracy,
        wall_time_ms: config.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    })
}

/// Totals over every circuit; depth is the deepest single circuit.
fn circuit_stats(circuits: &QpeCircuits) -> (GateCounts, usize) {
    let all = circuits.circuits();
    let counts = all.iter().fold(
        GateCounts {
            total: 0,
            controlled: 0,
        },
        |acc, c| {
            let g = c.gate_counts();
            GateCounts {
                total: acc.total + g.total,
                controlled: acc.controlled + g.controlled,
            }
        },
    );
    let depth = all.iter().map(|c| c.depth()).max().unwrap_or(0);
    (counts, depth)
}

fn run_trial(config: &RunConfig, circuits: &QpeCircuits, seed: u64) -> qpe_core::Result<Trial> {
    let noise = config.noise.as_ref();
    match circuits {
        QpeCircuits::Single(circuit) => {
            let hist = run_shots(circuit, config.shots, noise, seed)?;
            let decoded = decode_histogram(&hist, config.n, config.algorithm.bit_order())?;
            Ok(Trial {
                histogram: Some(hist),
                kitaev: None,
                decoded,
            })
        }
        QpeCircuits::KitaevPairs(pairs) => {
            let rounds = pairs
                .iter()
                .map(|(k, cos_c, sin_c)| kitaev_round(*k, cos_c, sin_c, config.shots, noise, seed))
                .collect::<qpe_core::Result<Vec<_>>>()?;
            let per_k: Vec<f64> = rounds.iter().map(|r| r.estimate).collect();
            let decoded = PhaseEstimate {
                value: kitaev_stitch(&per_k)?,
                bits: kitaev_stitch_bits(&per_k, config.n)?,
                stderr_per_k: rounds.iter().map(|r| r.stderr).collect(),
                per_k,
            };
            Ok(Trial {
                histogram: None,
                kitaev: Some(rounds),
                decoded,
            })
        }
    }
}

fn kitaev_round(
    k: u32,
    cos_c: &Circuit,
    sin_c: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> qpe_core::Result<KitaevRound> {
    let cos = run_shots(cos_c, shots, noise, split_seed(seed, 2 * k as u64))?;
    let sin = run_shots(sin_c, shots, noise, split_seed(seed, 2 * k as u64 + 1))?;
    let sample = kitaev_estimate_from_counts(&cos, &sin, k)?;
    Ok(KitaevRound {
        k,
        c_hat: sample.c_hat,
        s_hat: sample.s_hat,
        estimate: kitaev_point_estimate(&sample)?,
        stderr: sample.stderr(),
        cos,
        sin,
    })
}
