//! Circuit container: gates, mid-circuit measurements and classically
//! conditioned gates, plus the JSON document format used for dumps and
//! golden files.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The single-qubit unitary a [`GateOp`] applies to its target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    S,
    /// `diag(1, e^{i angle})`
    Phase(f64),
    /// `diag(1, e^{i angle})` on the target, conditioned on every control.
    ControlledPhase(f64),
    /// Controlled `U^power` with `U = diag(1, e^{i angle})`. Acts exactly like
    /// `ControlledPhase(angle * power)`; the pair is kept for accounting.
    ControlledUPower {
        angle: f64,
        power: u64,
    },
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::S => "s",
            GateKind::Phase(_) => "phase",
            GateKind::ControlledPhase(_) => "cphase",
            GateKind::ControlledUPower { .. } => "cu_power",
        }
    }

    /// Angle of the diagonal phase this kind applies, if it is diagonal.
    pub fn phase_angle(&self) -> Option<f64> {
        match *self {
            GateKind::S => Some(FRAC_PI_2),
            GateKind::Phase(a) | GateKind::ControlledPhase(a) => Some(a),
            GateKind::ControlledUPower { angle, power } => Some(kickback_angle(angle, power)),
            GateKind::H | GateKind::X => None,
        }
    }

    fn requires_control(&self) -> bool {
        matches!(
            self,
            GateKind::ControlledPhase(_) | GateKind::ControlledUPower { .. }
        )
    }
}

/// Phase imprinted by `U^power` when `U = diag(1, e^{i angle})`.
///
/// Both the simulator and the ancilla-removal rewrite go through this one
/// expression so rewritten and directly built circuits agree bit for bit.
pub fn kickback_angle(angle: f64, power: u64) -> f64 {
    angle * power as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, target: usize) -> Self {
        GateOp {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn controlled(kind: GateKind, controls: Vec<usize>, target: usize) -> Self {
        GateOp {
            kind,
            target,
            controls,
        }
    }

    pub fn is_controlled(&self) -> bool {
        !self.controls.is_empty()
    }

    /// Target followed by controls.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().copied())
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.target >= num_qubits {
            return Err(Error::domain(format!(
                "target qubit {} out of range for {} qubits",
                self.target, num_qubits
            )));
        }
        for (i, &c) in self.controls.iter().enumerate() {
            if c >= num_qubits {
                return Err(Error::domain(format!(
                    "control qubit {c} out of range for {num_qubits} qubits"
                )));
            }
            if c == self.target {
                return Err(Error::domain(format!(
                    "qubit {c} is both control and target"
                )));
            }
            if self.controls[..i].contains(&c) {
                return Err(Error::domain(format!("duplicate control qubit {c}")));
            }
        }
        if self.kind.requires_control() && self.controls.is_empty() {
            return Err(Error::domain(format!(
                "{} gate needs at least one control",
                self.kind.name()
            )));
        }
        let angle_ok = match self.kind {
            GateKind::Phase(a) | GateKind::ControlledPhase(a) => a.is_finite(),
            GateKind::ControlledUPower { angle, .. } => angle.is_finite(),
            _ => true,
        };
        if !angle_ok {
            return Err(Error::domain("gate angle must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Gate(GateOp),
    Measure {
        qubit: usize,
        clbit: usize,
    },
    /// Apply `gate` only if classical bit `clbit` currently holds 1.
    Conditional {
        clbit: usize,
        gate: GateOp,
    },
    Barrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub total: usize,
    pub controlled: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    num_clbits: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::domain("a circuit needs at least one qubit"));
        }
        Ok(Circuit {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn gates(&self) -> impl Iterator<Item = &GateOp> {
        self.ops.iter().filter_map(|op| match op {
            Op::Gate(g) | Op::Conditional { gate: g, .. } => Some(g),
            _ => None,
        })
    }

    /// Appends `op` after checking indices and that any condition bit has
    /// already been written by a measurement.
    pub fn push(&mut self, op: Op) -> Result<&mut Self> {
        self.check_op(&op, &self.ops)?;
        self.ops.push(op);
        Ok(self)
    }

    fn check_op(&self, op: &Op, preceding: &[Op]) -> Result<()> {
        match op {
            Op::Gate(g) => g.validate(self.num_qubits),
            Op::Measure { qubit, clbit } => {
                if *qubit >= self.num_qubits {
                    return Err(Error::domain(format!(
                        "measured qubit {qubit} out of range"
                    )));
                }
                if *clbit >= self.num_clbits {
                    return Err(Error::domain(format!("classical bit {clbit} out of range")));
                }
                Ok(())
            }
            Op::Conditional { clbit, gate } => {
                gate.validate(self.num_qubits)?;
                if *clbit >= self.num_clbits {
                    return Err(Error::domain(format!("classical bit {clbit} out of range")));
                }
                let written = preceding
                    .iter()
                    .any(|p| matches!(p, Op::Measure { clbit: c, .. } if c == clbit));
                if !written {
                    return Err(Error::domain(format!(
                        "conditional gate reads classical bit {clbit} before any measurement writes it"
                    )));
                }
                Ok(())
            }
            Op::Barrier => Ok(()),
        }
    }

    /// Re-checks every op; used for circuits that did not come through `push`.
    pub fn validate(&self) -> Result<()> {
        if self.num_qubits == 0 {
            return Err(Error::domain("a circuit needs at least one qubit"));
        }
        for (i, op) in self.ops.iter().enumerate() {
            self.check_op(op, &self.ops[..i])?;
        }
        Ok(())
    }

    pub fn gate(&mut self, op: GateOp) -> Result<&mut Self> {
        self.push(Op::Gate(op))
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(GateOp::new(GateKind::H, q))
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(GateOp::new(GateKind::X, q))
    }

    pub fn s(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(GateOp::new(GateKind::S, q))
    }

    pub fn phase(&mut self, q: usize, angle: f64) -> Result<&mut Self> {
        self.gate(GateOp::new(GateKind::Phase(angle), q))
    }

    pub fn cphase(&mut self, control: usize, target: usize, angle: f64) -> Result<&mut Self> {
        self.gate(GateOp::controlled(
            GateKind::ControlledPhase(angle),
            vec![control],
            target,
        ))
    }

    pub fn cu_power(
        &mut self,
        control: usize,
        target: usize,
        angle: f64,
        power: u64,
    ) -> Result<&mut Self> {
        self.gate(GateOp::controlled(
            GateKind::ControlledUPower { angle, power },
            vec![control],
            target,
        ))
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) -> Result<&mut Self> {
        self.push(Op::Measure { qubit, clbit })
    }

    pub fn conditional(&mut self, clbit: usize, gate: GateOp) -> Result<&mut Self> {
        self.push(Op::Conditional { clbit, gate })
    }

    pub fn barrier(&mut self) -> Result<&mut Self> {
        self.push(Op::Barrier)
    }

    /// Appends every op of `other`, which must fit in this circuit's registers.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        for op in &other.ops {
            self.push(op.clone())?;
        }
        Ok(self)
    }

    pub fn has_mid_circuit_feedback(&self) -> bool {
        self.ops
            .iter()
            .any(|op| matches!(op, Op::Conditional { .. }))
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts {
            total: 0,
            controlled: 0,
        };
        for g in self.gates() {
            counts.total += 1;
            if g.is_controlled() {
                counts.controlled += 1;
            }
        }
        counts
    }

    /// ASAP layer count. A measurement occupies its qubit and classical bit,
    /// a conditional gate additionally waits on its classical bit and a
    /// barrier synchronises every qubit.
    pub fn depth(&self) -> usize {
        let mut qubit_level = vec![0usize; self.num_qubits];
        let mut clbit_level = vec![0usize; self.num_clbits];
        for op in &self.ops {
            match op {
                Op::Gate(g) => {
                    let level = 1 + g.qubits().map(|q| qubit_level[q]).max().unwrap_or(0);
                    g.qubits().for_each(|q| qubit_level[q] = level);
                }
                Op::Measure { qubit, clbit } => {
                    let level = 1 + qubit_level[*qubit].max(clbit_level[*clbit]);
                    qubit_level[*qubit] = level;
                    clbit_level[*clbit] = level;
                }
                Op::Conditional { clbit, gate } => {
                    let level = 1 + gate
                        .qubits()
                        .map(|q| qubit_level[q])
                        .max()
                        .unwrap_or(0)
                        .max(clbit_level[*clbit]);
                    gate.qubits().for_each(|q| qubit_level[q] = level);
                    clbit_level[*clbit] = level;
                }
                Op::Barrier => {
                    let level = qubit_level.iter().copied().max().unwrap_or(0);
                    qubit_level.iter_mut().for_each(|l| *l = level);
                }
            }
        }
        qubit_level
            .into_iter()
            .chain(clbit_level)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn from_parts(num_qubits: usize, num_clbits: usize, ops: Vec<Op>) -> Result<Self> {
        let c = Circuit {
            num_qubits,
            num_clbits,
            ops,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CircuitDoc::from(self)).expect("circuit document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CircuitDoc = serde_json::from_str(text)
            .map_err(|e| Error::domain(format!("malformed circuit document: {e}")))?;
        doc.try_into()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit: {} qubits, {} clbits",
            self.num_qubits, self.num_clbits
        )?;
        for op in &self.ops {
            match op {
                Op::Gate(g) => writeln!(f, "  {}", DisplayGate(g))?,
                Op::Measure { qubit, clbit } => writeln!(f, "  measure q{qubit} -> c{clbit}")?,
                Op::Conditional { clbit, gate } => {
                    writeln!(f, "  if c{clbit}: {}", DisplayGate(gate))?
                }
                Op::Barrier => writeln!(f, "  barrier")?,
            }
        }
        Ok(())
    }
}

struct DisplayGate<'a>(&'a GateOp);

impl fmt::Display for DisplayGate<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.0;
        write!(f, "{}", g.kind.name())?;
        match g.kind {
            GateKind::Phase(a) | GateKind::ControlledPhase(a) => write!(f, "({a:.6})")?,
            GateKind::ControlledUPower { angle, power } => write!(f, "({angle:.6}^{power})")?,
            _ => {}
        }
        for c in &g.controls {
            write!(f, " c:q{c}")?;
        }
        write!(f, " q{}", g.target)
    }
}

/// On-disk form: `{num_qubits, num_clbits, ops: [{kind, targets, controls,
/// angle, power, clbit}]}`. For `measure`, `clbit` is the destination; for a
/// gate it is the condition bit (absent when unconditional).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDoc {
    pub num_qubits: usize,
    pub num_clbits: usize,
    pub ops: Vec<OpRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpRecord {
    pub kind: String,
    #[serde(default)]
    pub targets: Vec<usize>,
    #[serde(default)]
    pub controls: Vec<usize>,
    #[serde(default)]
    pub angle: Option<f64>,
    #[serde(default)]
    pub power: Option<u64>,
    #[serde(default)]
    pub clbit: Option<usize>,
}

impl OpRecord {
    fn from_gate(g: &GateOp, clbit: Option<usize>) -> Self {
        let (angle, power) = match g.kind {
            GateKind::Phase(a) | GateKind::ControlledPhase(a) => (Some(a), None),
            GateKind::ControlledUPower { angle, power } => (Some(angle), Some(power)),
            _ => (None, None),
        };
        OpRecord {
            kind: g.kind.name().to_string(),
            targets: vec![g.target],
            controls: g.controls.clone(),
            angle,
            power,
            clbit,
        }
    }

    fn to_gate(&self) -> Result<GateOp> {
        let angle = || {
            self.angle
                .ok_or_else(|| Error::domain(format!("{} op needs an angle", self.kind)))
        };
        let kind = match self.kind.as_str() {
            "h" => GateKind::H,
            "x" => GateKind::X,
            "s" => GateKind::S,
            "phase" => GateKind::Phase(angle()?),
            "cphase" => GateKind::ControlledPhase(angle()?),
            "cu_power" => GateKind::ControlledUPower {
                angle: angle()?,
                power: self
                    .power
                    .ok_or_else(|| Error::domain("cu_power op needs a power"))?,
            },
            other => return Err(Error::domain(format!("unknown op kind {other:?}"))),
        };
        let [target] = self.targets[..] else {
            return Err(Error::domain(format!(
                "{} op needs exactly one target",
                self.kind
            )));
        };
        Ok(GateOp::controlled(kind, self.controls.clone(), target))
    }
}

impl From<&Circuit> for CircuitDoc {
    fn from(c: &Circuit) -> Self {
        let ops = c
            .ops
            .iter()
            .map(|op| match op {
                Op::Gate(g) => OpRecord::from_gate(g, None),
                Op::Conditional { clbit, gate } => OpRecord::from_gate(gate, Some(*clbit)),
                Op::Measure { qubit, clbit } => OpRecord {
                    kind: "measure".into(),
                    targets: vec![*qubit],
                    controls: Vec::new(),
                    angle: None,
                    power: None,
                    clbit: Some(*clbit),
                },
                Op::Barrier => OpRecord {
                    kind: "barrier".into(),
                    targets: Vec::new(),
                    controls: Vec::new(),
                    angle: None,
                    power: None,
                    clbit: None,
                },
            })
            .collect();
        CircuitDoc {
            num_qubits: c.num_qubits,
            num_clbits: c.num_clbits,
            ops,
        }
    }
}

impl TryFrom<CircuitDoc> for Circuit {
    type Error = Error;

    fn try_from(doc: CircuitDoc) -> Result<Self> {
        let ops = doc
            .ops
            .iter()
            .map(|rec| match rec.kind.as_str() {
                "measure" => {
                    let [qubit] = rec.targets[..] else {
                        return Err(Error::domain("measure op needs exactly one target"));
                    };
                    let clbit = rec
                        .clbit
                        .ok_or_else(|| Error::domain("measure op needs a clbit"))?;
                    Ok(Op::Measure { qubit, clbit })
                }
                "barrier" => Ok(Op::Barrier),
                _ => {
                    let gate = rec.to_gate()?;
                    Ok(match rec.clbit {
                        Some(clbit) => Op::Conditional { clbit, gate },
                        None => Op::Gate(gate),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_parts(doc.num_qubits, doc.num_clbits, ops)
    }
}
