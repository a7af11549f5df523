use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{GateKind, GateOp};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Single-qubit Pauli used for noise injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Dense vector of `2^n` amplitudes. Qubit `q` is bit `q` of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|basis_index>` on `num_qubits` qubits.
    pub fn new_basis_state(num_qubits: usize, basis_index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits >= usize::BITS as usize {
            return Err(Error::domain(format!("invalid qubit count {num_qubits}")));
        }
        let dim = 1usize << num_qubits;
        if basis_index >= dim {
            return Err(Error::domain(format!(
                "basis index {basis_index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[basis_index] = ONE;
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::new_basis_state(num_qubits, 0)
    }

    /// Builds a state from raw amplitudes, normalising them.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::domain(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::domain("amplitudes have zero or non-finite norm"));
        }
        Ok(StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::domain(format!(
                "qubit {q} out of range for {} qubits",
                self.num_qubits
            )));
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        let control_mask = op.controls.iter().fold(0usize, |m, &c| m | (1 << c));
        match op.kind {
            GateKind::H => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.apply_matrix(op.target, control_mask, [[h, h], [h, -h]]);
            }
            GateKind::X => self.apply_matrix(op.target, control_mask, [[ZERO, ONE], [ONE, ZERO]]),
            kind => {
                let angle = kind
                    .phase_angle()
                    .expect("diagonal gate kinds carry an angle");
                self.apply_phase(op.target, control_mask, Complex64::cis(angle));
            }
        }
        Ok(())
    }

    /// Applies a 2x2 unitary on `target` wherever every bit of `control_mask`
    /// is set.
    fn apply_matrix(&mut self, target: usize, control_mask: usize, m: [[Complex64; 2]; 2]) {
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & tbit != 0 || i & control_mask != control_mask {
                continue;
            }
            let j = i | tbit;
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[j];
            self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_phase(&mut self, target: usize, control_mask: usize, factor: Complex64) {
        let mask = control_mask | (1usize << target);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= factor;
            }
        }
    }

    pub fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        self.check_qubit(qubit)?;
        let i = Complex64::new(0.0, 1.0);
        match pauli {
            Pauli::X => self.apply_matrix(qubit, 0, [[ZERO, ONE], [ONE, ZERO]]),
            Pauli::Y => self.apply_matrix(qubit, 0, [[ZERO, -i], [i, ZERO]]),
            Pauli::Z => self.apply_phase(qubit, 0, -ONE),
        }
        Ok(())
    }

    /// Probability that measuring `qubit` yields 1.
    pub fn prob_one(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects `qubit` onto `outcome` and renormalises. Returns the
    /// probability of that outcome before projection; a zero-probability
    /// outcome is a domain error.
    pub fn collapse(&mut self, qubit: usize, outcome: u8) -> Result<f64> {
        let p1 = self.prob_one(qubit)?;
        let p = if outcome == 0 { 1.0 - p1 } else { p1 };
        if p <= 0.0 {
            return Err(Error::domain(format!(
                "outcome {outcome} on qubit {qubit} has zero probability"
            )));
        }
        let bit = 1usize << qubit;
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if ((i & bit != 0) as u8) == outcome {
                *a *= scale;
            } else {
                *a = ZERO;
            }
        }
        Ok(p)
    }

    /// Samples a Z-basis measurement of `qubit`, collapsing the state.
    pub fn measure_qubit<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<u8> {
        let p1 = self.prob_one(qubit)?;
        let u: f64 = rng.random();
        let outcome = if u < 1.0 - p1 { 0 } else { 1 };
        self.collapse(qubit, outcome)?;
        Ok(outcome)
    }
}
