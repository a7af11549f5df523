use std::f64::consts::TAU;

use proptest::prelude::*;
use qpe_core::{
    build_iqft_qpe, build_kitaev_pair, circular_distance, decode_histogram, exact_distribution,
    kitaev_estimate_from_counts, kitaev_point_estimate, kitaev_stitch_bits, rng::split_seed,
    run_shots, BitOrder, KitaevSample, PhaseFraction, ShotHistogram,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact_per_k(phase: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| (phase * 2f64.powi(k as i32)).rem_euclid(1.0))
        .collect()
}

#[test]
fn stitching_round_trips_every_representable_phase() {
    for n in 1..=10u32 {
        for x in 0..1u64 << n {
            let phase = PhaseFraction::from_numerator(x, n).unwrap();
            let bits =
                kitaev_stitch_bits(&exact_per_k(phase.value(), n as usize), n as usize).unwrap();
            assert_eq!(bits, phase);
        }
    }
}

#[test]
fn point_estimate_inverts_cos_and_sin() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let phi: f64 = rng.random();
        let sample = KitaevSample {
            k: 1,
            c_hat: (TAU * phi).cos(),
            s_hat: (TAU * phi).sin(),
            shots: 1,
        };
        let est = kitaev_point_estimate(&sample).unwrap();
        assert!((0.0..1.0).contains(&est));
        assert!(circular_distance(est, phi) < 1e-12, "{phi} -> {est}");
    }
}

#[test]
fn estimators_converge_with_shots() {
    let shots = 1u64 << 14;
    let bound = 4.0 / (shots as f64).sqrt();
    let phase = PhaseFraction::from_bitstring("1011011101").unwrap();
    for seed in 0..20u64 {
        for k in 1..=4u32 {
            let (cos_c, sin_c) = build_kitaev_pair(k, &phase).unwrap();
            let s = split_seed(seed, k as u64);
            let cos_h = run_shots(&cos_c, shots, None, s).unwrap();
            let sin_h = run_shots(&sin_c, shots, None, s ^ 1).unwrap();
            let sample = kitaev_estimate_from_counts(&cos_h, &sin_h, k).unwrap();
            let est = kitaev_point_estimate(&sample).unwrap();
            let truth = phase.shifted_value(k as usize - 1);
            let err = circular_distance(est, truth);
            assert!(err <= bound, "seed {seed} k {k}: {err} > {bound}");
        }
    }
}

#[test]
fn noiseless_kitaev_pipeline_recovers_the_phase() {
    let phase = PhaseFraction::from_bitstring("1011").unwrap();
    let per_k: Vec<f64> = (1..=4u32)
        .map(|k| {
            let (cos_c, sin_c) = build_kitaev_pair(k, &phase).unwrap();
            let cos_h = run_shots(&cos_c, 4096, None, 7 + k as u64).unwrap();
            let sin_h = run_shots(&sin_c, 4096, None, 70 + k as u64).unwrap();
            kitaev_point_estimate(&kitaev_estimate_from_counts(&cos_h, &sin_h, k).unwrap()).unwrap()
        })
        .collect();
    assert_eq!(kitaev_stitch_bits(&per_k, 4).unwrap(), phase);
}

fn scaled(hist: &ShotHistogram, factor: u64) -> ShotHistogram {
    ShotHistogram {
        counts: hist
            .counts
            .iter()
            .map(|(k, v)| (k.clone(), v * factor))
            .collect(),
        shots: hist.shots * factor,
        seed: hist.seed,
    }
}

proptest! {
    #[test]
    fn decoding_ignores_histogram_scale(num in 0u64..1024, n in 2usize..=4, seed: u64, factor in 1u64..50) {
        let phase = PhaseFraction::from_numerator(num, 10).unwrap();
        let circ = build_iqft_qpe(n, &phase, false).unwrap();
        let hist = run_shots(&circ, 256, None, seed).unwrap();
        let base = decode_histogram(&hist, n, BitOrder::MsbFirst).unwrap();
        let big = decode_histogram(&scaled(&hist, factor), n, BitOrder::MsbFirst).unwrap();
        prop_assert_eq!(base.bits, big.bits);
    }

    #[test]
    fn stitching_tolerates_small_errors(num in 0u64..256, noise in prop::collection::vec(-0.06f64..0.06, 8)) {
        let phase = PhaseFraction::from_numerator(num, 8).unwrap();
        let per_k: Vec<f64> = exact_per_k(phase.value(), 8)
            .iter()
            .zip(&noise)
            .map(|(v, e)| (v + e).rem_euclid(1.0))
            .collect();
        prop_assert_eq!(kitaev_stitch_bits(&per_k, 8).unwrap(), phase);
    }

    #[test]
    fn decoded_bits_are_the_exact_argmax(num in 0u64..16) {
        let phase = PhaseFraction::from_numerator(num, 4).unwrap();
        let dist = exact_distribution(&build_iqft_qpe(4, &phase, true).unwrap()).unwrap();
        let hist = ShotHistogram {
            counts: dist.iter().map(|(k, p)| (k.clone(), (p * 1e6).round() as u64)).collect(),
            shots: 1_000_000,
            seed: 0,
        };
        prop_assert_eq!(decode_histogram(&hist, 4, BitOrder::MsbFirst).unwrap().bits, phase);
    }
}
