//! Circuit execution: exact outcome distributions by branch enumeration and
//! seeded shot sampling, optionally under a [`NoiseModel`].

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateOp, Op};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::rng::shot_rng;
use crate::state::{Pauli, StateVector};
use crate::tolerance::{BRANCH_PRUNE, DEFAULT_MAX_QUBITS};

/// Outcome bitstring (classical bit 0 leftmost) to probability.
pub type Distribution = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
    pub seed: u64,
}

impl ShotHistogram {
    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    pub fn frequency(&self, bitstring: &str) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        self.count(bitstring) as f64 / self.shots as f64
    }

    /// Most frequent bitstring; ties go to the lexicographically smallest.
    pub fn argmax(&self) -> Option<&str> {
        let mut best: Option<(&str, u64)> = None;
        for (k, &v) in &self.counts {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((k, v));
            }
        }
        best.map(|(k, _)| k)
    }

    /// Number of shots whose classical bit `clbit` read 0.
    pub fn zeros_at(&self, clbit: usize) -> u64 {
        self.counts
            .iter()
            .filter(|(k, _)| k.as_bytes().get(clbit) == Some(&b'0'))
            .map(|(_, &v)| v)
            .sum()
    }
}

/// Simulator settings. The qubit ceiling guards against accidental
/// exponential allocations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

struct Branch {
    state: StateVector,
    clbits: Vec<u8>,
    weight: f64,
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 0 { '0' } else { '1' })
        .collect()
}

impl Simulator {
    pub fn new(max_qubits: usize) -> Self {
        Simulator { max_qubits }
    }

    fn check_capacity(&self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() > self.max_qubits {
            return Err(Error::Capacity {
                required: circuit.num_qubits(),
                ceiling: self.max_qubits,
            });
        }
        Ok(())
    }

    /// Exact joint distribution over the classical register. Every
    /// measurement splits each live branch into its two collapsed outcomes,
    /// weighted by their Born probabilities.
    pub fn exact_distribution(&self, circuit: &Circuit) -> Result<Distribution> {
        self.check_capacity(circuit)?;
        let mut branches = vec![Branch {
            state: StateVector::zero(circuit.num_qubits())?,
            clbits: vec![0; circuit.num_clbits()],
            weight: 1.0,
        }];
        for op in circuit.ops() {
            match op {
                Op::Gate(g) => {
                    for b in &mut branches {
                        b.state.apply_gate(g)?;
                    }
                }
                Op::Conditional { clbit, gate } => {
                    for b in branches.iter_mut().filter(|b| b.clbits[*clbit] == 1) {
                        b.state.apply_gate(gate)?;
                    }
                }
                Op::Measure { qubit, clbit } => {
                    let mut next = Vec::with_capacity(branches.len() * 2);
                    for b in branches {
                        let p1 = b.state.prob_one(*qubit)?;
                        let p0 = 1.0 - p1;
                        // A pruned outcome's mass is folded into the survivor
                        // so the weights keep summing to one.
                        if p1 * b.weight <= BRANCH_PRUNE {
                            next.push(Self::settle(b, *qubit, *clbit, 0, 1.0)?);
                        } else if p0 * b.weight <= BRANCH_PRUNE {
                            next.push(Self::settle(b, *qubit, *clbit, 1, 1.0)?);
                        } else {
                            let mut one = Branch {
                                state: b.state.clone(),
                                clbits: b.clbits.clone(),
                                weight: b.weight,
                            };
                            one.state.collapse(*qubit, 1)?;
                            one.clbits[*clbit] = 1;
                            one.weight *= p1;
                            next.push(Self::settle(b, *qubit, *clbit, 0, p0)?);
                            next.push(one);
                        }
                    }
                    branches = next;
                }
                Op::Barrier => {}
            }
        }
        let mut dist = Distribution::new();
        for b in branches {
            *dist.entry(bits_to_string(&b.clbits)).or_insert(0.0) += b.weight;
        }
        Ok(dist)
    }

    fn settle(
        mut b: Branch,
        qubit: usize,
        clbit: usize,
        outcome: u8,
        scale: f64,
    ) -> Result<Branch> {
        b.state.collapse(qubit, outcome)?;
        b.clbits[clbit] = outcome;
        b.weight *= scale;
        Ok(b)
    }

    /// Runs `shots` seeded shots. Identical arguments give identical
    /// histograms regardless of thread scheduling.
    pub fn run_shots(
        &self,
        circuit: &Circuit,
        shots: u64,
        noise: Option<&NoiseModel>,
        seed: u64,
    ) -> Result<ShotHistogram> {
        if shots == 0 {
            return Err(Error::domain("shots must be at least 1"));
        }
        self.check_capacity(circuit)?;
        let noise = match noise {
            Some(n) => {
                n.validate()?;
                (!n.is_noiseless()).then_some(n)
            }
            None => None,
        };
        let counts = match noise {
            None => self.sample_exact(circuit, shots, seed)?,
            Some(model) => (0..shots)
                .into_par_iter()
                .map(|i| {
                    let mut rng = shot_rng(seed, i);
                    trajectory(circuit, model, &mut rng).map(|bits| bits_to_string(&bits))
                })
                .try_fold(BTreeMap::new, |mut acc, key| {
                    *acc.entry(key?).or_insert(0u64) += 1;
                    Ok::<_, Error>(acc)
                })
                .try_reduce(BTreeMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    Ok(a)
                })?,
        };
        Ok(ShotHistogram {
            counts,
            shots,
            seed,
        })
    }

    fn sample_exact(
        &self,
        circuit: &Circuit,
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<String, u64>> {
        let dist = self.exact_distribution(circuit)?;
        let keys: Vec<&String> = dist.keys().collect();
        let mut cumulative = Vec::with_capacity(dist.len());
        let mut acc = 0.0;
        for p in dist.values() {
            acc += p;
            cumulative.push(acc);
        }
        let total = acc;
        let indices: Vec<usize> = (0..shots)
            .into_par_iter()
            .map(|i| {
                let u: f64 = shot_rng(seed, i).random::<f64>() * total;
                cumulative
                    .partition_point(|&c| c <= u)
                    .min(cumulative.len() - 1)
            })
            .collect();
        let mut counts = BTreeMap::new();
        for idx in indices {
            *counts.entry(keys[idx].clone()).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

fn depolarize<R: Rng + ?Sized>(
    state: &mut StateVector,
    gate: &GateOp,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<()> {
    let p = noise.depolarizing_for(gate.is_controlled());
    if p == 0.0 {
        return Ok(());
    }
    for q in gate.qubits() {
        if rng.random::<f64>() < p {
            let pauli = match rng.random_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            };
            state.apply_pauli(q, pauli)?;
        }
    }
    Ok(())
}

/// One noisy shot. Readout errors corrupt the recorded bit, not the state,
/// so classical feedback sees the corrupted value.
fn trajectory<R: Rng + ?Sized>(
    circuit: &Circuit,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<Vec<u8>> {
    let mut state = StateVector::zero(circuit.num_qubits())?;
    let mut clbits = vec![0u8; circuit.num_clbits()];
    for op in circuit.ops() {
        match op {
            Op::Gate(g) => {
                state.apply_gate(g)?;
                depolarize(&mut state, g, noise, rng)?;
            }
            Op::Conditional { clbit, gate } => {
                if clbits[*clbit] == 1 {
                    state.apply_gate(gate)?;
                    depolarize(&mut state, gate, noise, rng)?;
                }
            }
            Op::Measure { qubit, clbit } => {
                let mut bit = state.measure_qubit(*qubit, rng)?;
                if noise.readout_flip > 0.0 && rng.random::<f64>() < noise.readout_flip {
                    bit ^= 1;
                }
                clbits[*clbit] = bit;
            }
            Op::Barrier => {}
        }
    }
    Ok(clbits)
}

/// [`Simulator::exact_distribution`] with the default qubit ceiling.
pub fn exact_distribution(circuit: &Circuit) -> Result<Distribution> {
    Simulator::default().exact_distribution(circuit)
}

/// [`Simulator::run_shots`] with the default qubit ceiling.
pub fn run_shots(
    circuit: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<ShotHistogram> {
    Simulator::default().run_shots(circuit, shots, noise, seed)
}

/// Total variation distance between two distributions.
pub fn total_variation(a: &Distribution, b: &Distribution) -> f64 {
    let mut keys: Vec<&String> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}
