//! Dense state-vector simulation and quantum phase estimation.
//!
//! The crate is split into a small simulation substrate ([`state`],
//! [`circuit`], [`noise`], [`sim`]) and the phase-estimation layer built on
//! top of it ([`phase`], [`qpe`], [`estimation`]).
//!
//! Conventions used throughout:
//!
//! * Qubit `q` corresponds to bit `q` of a state-vector index.
//! * Classical bit `i` is character `i` of an outcome bitstring, so classical
//!   bit 0 is the leftmost character.
//! * A unitary `U` with eigenphase `phi` is always realised as
//!   `PHASE(2*pi*phi)` acting on the eigenstate `|1>`.

pub mod circuit;
pub mod error;
pub mod estimation;
pub mod noise;
pub mod phase;
pub mod qpe;
pub mod rng;
pub mod sim;
pub mod state;
pub mod tolerance;

pub use circuit::{Circuit, GateCounts, GateKind, GateOp, Op};
pub use error::{Error, Result};
pub use estimation::{
    decode_histogram, digit_accuracy, digits_from_outcome, kitaev_estimate_from_counts,
    kitaev_point_estimate, kitaev_stitch, kitaev_stitch_bits, outcome_for_digits, DigitAccuracy,
    KitaevSample, PhaseEstimate,
};
pub use noise::NoiseModel;
pub use phase::{circular_distance, PhaseFraction};
pub use qpe::{
    build_acp_qpe, build_iqft_qpe, build_iqft_subcircuit, build_iterative_qpe, build_kitaev_pair,
    build_qft_subcircuit, remove_ancilla, BitOrder, QpeCircuits, QpeConfig, Variant,
};
pub use sim::{
    exact_distribution, run_shots, total_variation, Distribution, ShotHistogram, Simulator,
};
pub use state::StateVector;
