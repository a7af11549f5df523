//! Classical post-processing: Kitaev angle recovery and bit stitching,
//! histogram decoding and per-digit accuracy.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{circular_distance, PhaseFraction};
use crate::qpe::BitOrder;
use crate::sim::ShotHistogram;

/// Estimates of `cos(2 pi phi_k)` and `sin(2 pi phi_k)` for
/// `phi_k = 2^(k-1) phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KitaevSample {
    pub k: u32,
    pub c_hat: f64,
    pub s_hat: f64,
    pub shots: u64,
}

impl KitaevSample {
    /// Binomial standard error of each probability estimate pushed through
    /// `atan2`, in turns.
    pub fn stderr(&self) -> f64 {
        let r2 = self.c_hat * self.c_hat + self.s_hat * self.s_hat;
        if r2 == 0.0 || self.shots == 0 {
            return f64::INFINITY;
        }
        let n = self.shots as f64;
        // c = 2p - 1 => var(c) = 4 p (1 - p) / n = (1 - c^2) / n
        let var_c = (1.0 - self.c_hat * self.c_hat).max(0.0) / n;
        let var_s = (1.0 - self.s_hat * self.s_hat).max(0.0) / n;
        let var_angle =
            (self.s_hat * self.s_hat * var_c + self.c_hat * self.c_hat * var_s) / (r2 * r2);
        var_angle.sqrt() / TAU
    }
}

/// Full-quadrant angle of `(c_hat, s_hat)` in turns, in `[0, 1)`.
pub fn kitaev_point_estimate(sample: &KitaevSample) -> Result<f64> {
    if sample.c_hat == 0.0 && sample.s_hat == 0.0 {
        return Err(Error::DegenerateSample { k: sample.k });
    }
    let turns = (sample.s_hat.atan2(sample.c_hat) / TAU).rem_euclid(1.0);
    Ok(if turns >= 1.0 { 0.0 } else { turns })
}

/// Inverts `P(0|cos) = (1 + c)/2` and `P(0|sin) = (1 - s)/2` using the
/// observed frequencies of outcome 0 on classical bit 0.
pub fn kitaev_estimate_from_counts(
    cos_hist: &ShotHistogram,
    sin_hist: &ShotHistogram,
    k: u32,
) -> Result<KitaevSample> {
    if cos_hist.shots == 0 || sin_hist.shots == 0 {
        return Err(Error::domain("Kitaev histograms need at least one shot"));
    }
    let f_cos = cos_hist.zeros_at(0) as f64 / cos_hist.shots as f64;
    let f_sin = sin_hist.zeros_at(0) as f64 / sin_hist.shots as f64;
    Ok(KitaevSample {
        k,
        c_hat: (2.0 * f_cos - 1.0).clamp(-1.0, 1.0),
        s_hat: (1.0 - 2.0 * f_sin).clamp(-1.0, 1.0),
        shots: cos_hist.shots.min(sin_hist.shots),
    })
}

/// Refines the per-k estimates into a single phase.
///
/// `per_k[k-1]` estimates `2^(k-1) phi mod 1`. Starting from the last entry,
/// each step halves the running estimate and picks whichever of the two
/// half-turn candidates lies closest to the next coarser estimate.
pub fn kitaev_stitch(per_k: &[f64]) -> Result<f64> {
    let Some(&last) = per_k.last() else {
        return Err(Error::domain("need at least one per-k estimate"));
    };
    if let Some(bad) = per_k.iter().find(|v| !(0.0..1.0).contains(*v)) {
        return Err(Error::domain(format!(
            "per-k estimate {bad} is not in [0, 1)"
        )));
    }
    for k in 1..per_k.len() {
        let distance = circular_distance((2.0 * per_k[k - 1]).rem_euclid(1.0), per_k[k]);
        if distance > 0.25 {
            return Err(Error::Inconsistent { k, distance });
        }
    }
    let mut rho = last;
    for &estimate in per_k.iter().rev().skip(1) {
        let lo = rho / 2.0;
        let hi = lo + 0.5;
        rho = if circular_distance(lo, estimate) <= circular_distance(hi, estimate) {
            lo
        } else {
            hi
        };
    }
    Ok(rho)
}

/// `n` leading bits of the stitched phase after rounding it to
/// `per_k.len()` bits.
pub fn kitaev_stitch_bits(per_k: &[f64], n: usize) -> Result<PhaseFraction> {
    let m = per_k.len();
    if n == 0 || n > m {
        return Err(Error::domain(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    if m > 52 {
        return Err(Error::domain(format!(
            "{m} rounds exceeds double precision"
        )));
    }
    let rho = kitaev_stitch(per_k)?;
    let rounded = PhaseFraction::nearest(rho, m as u32)?;
    PhaseFraction::from_bits(rounded.bits()[..n].to_vec())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseEstimate {
    pub value: f64,
    pub bits: PhaseFraction,
    pub per_k: Vec<f64>,
    pub stderr_per_k: Vec<f64>,
}

impl PhaseEstimate {
    /// Estimate with no per-k detail; `bits` is the nearest `n`-bit fraction.
    pub fn from_value(value: f64, n: usize) -> Result<Self> {
        Ok(PhaseEstimate {
            value,
            bits: PhaseFraction::nearest(value, n as u32)?,
            per_k: Vec::new(),
            stderr_per_k: Vec::new(),
        })
    }
}

/// Reads `x_1 ... x_n` out of a raw outcome bitstring.
pub fn digits_from_outcome(outcome: &str, n: usize, order: BitOrder) -> Result<PhaseFraction> {
    if outcome.len() < n {
        return Err(Error::domain(format!(
            "outcome {outcome:?} is shorter than {n} digits"
        )));
    }
    let head = &outcome[..n];
    match order {
        BitOrder::MsbFirst => PhaseFraction::from_bitstring(head),
        BitOrder::LsbFirst => {
            PhaseFraction::from_bitstring(&head.chars().rev().collect::<String>())
        }
    }
}

/// Inverse of [`digits_from_outcome`] for an `n`-digit phase.
pub fn outcome_for_digits(digits: &PhaseFraction, order: BitOrder) -> String {
    match order {
        BitOrder::MsbFirst => digits.bitstring(),
        BitOrder::LsbFirst => digits.bitstring().chars().rev().collect(),
    }
}

/// Decodes the most frequent outcome (lexicographically smallest on ties).
pub fn decode_histogram(hist: &ShotHistogram, n: usize, order: BitOrder) -> Result<PhaseEstimate> {
    if n == 0 {
        return Err(Error::domain("need at least one digit"));
    }
    let best = hist
        .argmax()
        .ok_or_else(|| Error::domain("cannot decode an empty histogram"))?;
    let bits = digits_from_outcome(best, n, order)?;
    Ok(PhaseEstimate {
        value: bits.value(),
        bits,
        per_k: Vec::new(),
        stderr_per_k: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitAccuracy {
    /// Fraction of trials whose digit `i` was decoded correctly.
    pub per_digit: Vec<f64>,
    pub mean: f64,
}

pub fn digit_accuracy(trials: &[(PhaseFraction, PhaseFraction)]) -> Result<DigitAccuracy> {
    let Some((first, _)) = trials.first() else {
        return Err(Error::domain("digit accuracy needs at least one trial"));
    };
    let width = first.len();
    let mut hits = vec![0u64; width];
    for (truth, decoded) in trials {
        if truth.len() != width || decoded.len() != width {
            return Err(Error::domain(format!(
                "trial widths differ: expected {width}, got {} and {}",
                truth.len(),
                decoded.len()
            )));
        }
        for (i, (a, b)) in truth.bits().iter().zip(decoded.bits()).enumerate() {
            if a == b {
                hits[i] += 1;
            }
        }
    }
    let per_digit: Vec<f64> = hits
        .iter()
        .map(|&h| h as f64 / trials.len() as f64)
        .collect();
    let mean = per_digit.iter().sum::<f64>() / width as f64;
    Ok(DigitAccuracy { per_digit, mean })
}
