//! Circuit builders for the phase-estimation variants and the ancilla
//! removal rewrite.
//!
//! Readout layout shared by the IQFT and ACP builders: qubit `j` of `n`
//! carries `2^(n-1-j) * phi`, so after the inverse transform qubit 0 holds the
//! least significant digit `x_n` and qubit `n-1` holds `x_1`. Qubit `j` is
//! measured into classical bit `n-1-j`, which makes the outcome bitstring read
//! `x_1 ... x_n` left to right. The eigenstate ancilla, when present, is qubit
//! `n`.

use std::f64::consts::TAU;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{kickback_angle, Circuit, GateKind, GateOp, Op};
use crate::error::{Error, Result};
use crate::phase::PhaseFraction;

/// How the digits `x_1 ... x_n` are laid out in an outcome bitstring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOrder {
    /// Character `i` is `x_{i+1}`.
    MsbFirst,
    /// Character `i` is `x_{n-i}`.
    LsbFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Kitaev,
    Iterative,
    Iqft,
    IqftModified,
    Acp,
    AcpModified,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Kitaev,
        Variant::Iterative,
        Variant::Iqft,
        Variant::IqftModified,
        Variant::Acp,
        Variant::AcpModified,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Kitaev => "kitaev",
            Variant::Iterative => "iterative",
            Variant::Iqft => "iqft",
            Variant::IqftModified => "iqft-modified",
            Variant::Acp => "acp",
            Variant::AcpModified => "acp-modified",
        }
    }

    pub fn bit_order(self) -> BitOrder {
        match self {
            Variant::Iterative => BitOrder::LsbFirst,
            _ => BitOrder::MsbFirst,
        }
    }

    pub fn is_modified(self) -> bool {
        matches!(self, Variant::IqftModified | Variant::AcpModified)
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == norm)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown algorithm {s:?}; expected one of kitaev, iterative, iqft, iqft-modified, acp, acp-modified"
                ))
            })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("need at least one readout qubit"));
    }
    if n > 62 {
        return Err(Error::domain(format!(
            "{n} readout qubits exceeds the power range"
        )));
    }
    Ok(())
}

fn eigen_angle(phase: &PhaseFraction) -> f64 {
    TAU * phase.value()
}

/// `R_k^{-1}` angle.
fn inverse_rotation(k: usize) -> f64 {
    -TAU / (1u64 << k) as f64
}

/// Cos/sin Kitaev pair for `U^(2^(k-1))`.
///
/// Both circuits put the eigenstate on qubit 1 (`X`) and the probe on qubit
/// 0, measured into classical bit 0. The sin circuit inserts `S` after the
/// first Hadamard so that `P(0) = (1 - sin(2 pi phi_k)) / 2`.
pub fn build_kitaev_pair(k: u32, phase: &PhaseFraction) -> Result<(Circuit, Circuit)> {
    if k == 0 {
        return Err(Error::domain("Kitaev round k must be at least 1"));
    }
    if k > 63 {
        return Err(Error::domain(format!(
            "Kitaev round k = {k} exceeds the power range"
        )));
    }
    let power = 1u64 << (k - 1);
    let build = |with_s: bool| -> Result<Circuit> {
        let mut c = Circuit::new(2, 1)?;
        c.x(1)?.h(0)?;
        if with_s {
            c.s(0)?;
        }
        c.cu_power(0, 1, eigen_angle(phase), power)?;
        c.h(0)?.measure(0, 0)?;
        Ok(c)
    };
    Ok((build(false)?, build(true)?))
}

/// Inverse QFT over `qubits` without the terminal swap network. For each
/// position `i`: `H(qubits[i])`, then `R_{j-i+1}^{-1}` controlled by
/// `qubits[i]` on every later `qubits[j]`.
pub fn build_iqft_subcircuit(qubits: &[usize]) -> Result<Circuit> {
    let n = span(qubits)?;
    let mut c = Circuit::new(n, 0)?;
    iqft_into(&mut c, qubits, None)?;
    Ok(c)
}

/// Forward QFT over `qubits`, the exact inverse of [`build_iqft_subcircuit`].
pub fn build_qft_subcircuit(qubits: &[usize]) -> Result<Circuit> {
    let n = span(qubits)?;
    let mut c = Circuit::new(n, 0)?;
    for i in (0..qubits.len()).rev() {
        for j in (i + 1..qubits.len()).rev() {
            c.cphase(qubits[i], qubits[j], -inverse_rotation(j - i + 1))?;
        }
        c.h(qubits[i])?;
    }
    Ok(c)
}

fn span(qubits: &[usize]) -> Result<usize> {
    let Some(&max) = qubits.iter().max() else {
        return Err(Error::domain("inverse QFT needs at least one qubit"));
    };
    let mut seen = qubits.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != qubits.len() {
        return Err(Error::domain("inverse QFT qubits must be distinct"));
    }
    Ok(max + 1)
}

/// Shared readout stage. `window` limits corrections to the `window` nearest
/// successors (ACP uses 2: `R_2^{-1}` and `R_3^{-1}`); `None` is the full
/// inverse transform.
fn iqft_into(c: &mut Circuit, qubits: &[usize], window: Option<usize>) -> Result<()> {
    for i in 0..qubits.len() {
        c.h(qubits[i])?;
        let last = match window {
            Some(w) => (i + w).min(qubits.len() - 1),
            None => qubits.len() - 1,
        };
        for j in i + 1..=last {
            c.cphase(qubits[i], qubits[j], inverse_rotation(j - i + 1))?;
        }
    }
    Ok(())
}

/// Hadamards on the readout register followed by the phase kickback, either
/// through controlled-U powers onto an `|1>` ancilla or as the equivalent
/// local phases.
fn kickback_into(
    c: &mut Circuit,
    n: usize,
    phase: &PhaseFraction,
    with_ancilla: bool,
) -> Result<()> {
    let angle = eigen_angle(phase);
    for q in 0..n {
        c.h(q)?;
    }
    if with_ancilla {
        c.x(n)?;
    }
    for q in (0..n).rev() {
        let power = 1u64 << (n - 1 - q);
        if with_ancilla {
            c.cu_power(q, n, angle, power)?;
        } else {
            c.phase(q, kickback_angle(angle, power))?;
        }
    }
    Ok(())
}

fn measure_readout(c: &mut Circuit, n: usize) -> Result<()> {
    for q in 0..n {
        c.measure(q, n - 1 - q)?;
    }
    Ok(())
}

fn build_transform_qpe(
    n: usize,
    phase: &PhaseFraction,
    with_ancilla: bool,
    window: Option<usize>,
) -> Result<Circuit> {
    check_n(n)?;
    let mut c = Circuit::new(n + with_ancilla as usize, n)?;
    kickback_into(&mut c, n, phase, with_ancilla)?;
    let readout: Vec<usize> = (0..n).collect();
    iqft_into(&mut c, &readout, window)?;
    measure_readout(&mut c, n)?;
    Ok(c)
}

/// Two-stage QPE: kickback, full inverse QFT, readout.
pub fn build_iqft_qpe(n: usize, phase: &PhaseFraction, with_ancilla: bool) -> Result<Circuit> {
    build_transform_qpe(n, phase, with_ancilla, None)
}

/// Constant-precision QPE: the inverse QFT truncated to the `R_2^{-1}` and
/// `R_3^{-1}` corrections from the two preceding readout qubits.
pub fn build_acp_qpe(n: usize, phase: &PhaseFraction, with_ancilla: bool) -> Result<Circuit> {
    build_transform_qpe(n, phase, with_ancilla, Some(2))
}

/// Iterative QPE on one recycled probe (qubit 0) and the eigenstate
/// (qubit 1). Round `j` extracts `x_{n-j+1}` into classical bit `j-1`, so
/// bits come out least significant first.
pub fn build_iterative_qpe(n: usize, phase: &PhaseFraction) -> Result<Circuit> {
    check_n(n)?;
    let angle = eigen_angle(phase);
    let mut c = Circuit::new(2, n)?;
    c.x(1)?;
    for round in 1..=n {
        if round > 1 {
            // reset: the probe is in |b> for the bit just recorded
            c.conditional(round - 2, GateOp::new(GateKind::X, 0))?;
        }
        c.h(0)?;
        c.cu_power(0, 1, angle, 1u64 << (n - round))?;
        for l in 2..=round {
            c.conditional(
                round - l,
                GateOp::new(GateKind::Phase(inverse_rotation(l)), 0),
            )?;
        }
        c.h(0)?;
        c.measure(0, round - 1)?;
    }
    Ok(c)
}

/// Replaces the eigenstate ancilla of a phase-kickback circuit by local
/// phases.
///
/// The ancilla must be prepared by a single uncontrolled `X` before any other
/// use, and afterwards appear only as the target of single-control
/// controlled-U powers. Each such gate becomes `PHASE(angle * power)` on its
/// control; the ancilla and its `X` are dropped and higher qubit indices shift
/// down by one.
pub fn remove_ancilla(circuit: &Circuit) -> Result<Circuit> {
    let candidates: Vec<usize> = (0..circuit.num_qubits())
        .filter(|&q| is_removable_ancilla(circuit, q))
        .collect();
    let ancilla = match candidates[..] {
        [q] => q,
        [] => {
            return Err(Error::RewriteIneligible(
                "no qubit is an X-prepared eigenstate used only as a controlled-U target".into(),
            ))
        }
        _ => {
            return Err(Error::RewriteIneligible(format!(
                "ambiguous ancilla: qubits {candidates:?} all match the pattern"
            )))
        }
    };
    if circuit.num_qubits() == 1 {
        return Err(Error::RewriteIneligible(
            "removing the ancilla would leave no qubits".into(),
        ));
    }
    let remap = |q: usize| if q > ancilla { q - 1 } else { q };
    let remap_gate = |g: &GateOp| GateOp {
        kind: g.kind,
        target: remap(g.target),
        controls: g.controls.iter().map(|&c| remap(c)).collect(),
    };
    let mut ops = Vec::with_capacity(circuit.ops().len());
    for op in circuit.ops() {
        match op {
            Op::Gate(g) if g.target == ancilla => match g.kind {
                GateKind::X => {}
                GateKind::ControlledUPower { angle, power } => ops.push(Op::Gate(GateOp::new(
                    GateKind::Phase(kickback_angle(angle, power)),
                    remap(g.controls[0]),
                ))),
                _ => unreachable!("ancilla pattern checked above"),
            },
            Op::Gate(g) => ops.push(Op::Gate(remap_gate(g))),
            Op::Conditional { clbit, gate } => ops.push(Op::Conditional {
                clbit: *clbit,
                gate: remap_gate(gate),
            }),
            Op::Measure { qubit, clbit } => ops.push(Op::Measure {
                qubit: remap(*qubit),
                clbit: *clbit,
            }),
            Op::Barrier => ops.push(Op::Barrier),
        }
    }
    Circuit::from_parts(circuit.num_qubits() - 1, circuit.num_clbits(), ops)
}

fn is_removable_ancilla(circuit: &Circuit, q: usize) -> bool {
    let mut prepared = false;
    let mut used = false;
    for op in circuit.ops() {
        match op {
            Op::Gate(g) if g.target == q => match g.kind {
                GateKind::X if g.controls.is_empty() && !prepared => prepared = true,
                GateKind::ControlledUPower { .. } if prepared && g.controls.len() == 1 => {
                    used = true
                }
                _ => return false,
            },
            Op::Gate(g) if g.controls.contains(&q) => return false,
            Op::Conditional { gate, .. } if gate.qubits().any(|x| x == q) => return false,
            Op::Measure { qubit, .. } if *qubit == q => return false,
            _ => {}
        }
    }
    prepared && used
}

/// Full description of a phase-estimation experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct QpeConfig {
    pub n: usize,
    pub phase: PhaseFraction,
    pub variant: Variant,
    /// Number of Kitaev rounds; defaults to `n`.
    pub kitaev_k_max: u32,
}

/// Circuits produced for a [`QpeConfig`].
#[derive(Debug, Clone, PartialEq)]
pub enum QpeCircuits {
    Single(Circuit),
    /// `(k, cos circuit, sin circuit)` for `k = 1..=k_max`.
    KitaevPairs(Vec<(u32, Circuit, Circuit)>),
}

impl QpeCircuits {
    pub fn circuits(&self) -> Vec<&Circuit> {
        match self {
            QpeCircuits::Single(c) => vec![c],
            QpeCircuits::KitaevPairs(pairs) => pairs.iter().flat_map(|(_, a, b)| [a, b]).collect(),
        }
    }

    pub fn try_map(self, mut f: impl FnMut(&Circuit) -> Result<Circuit>) -> Result<Self> {
        Ok(match self {
            QpeCircuits::Single(c) => QpeCircuits::Single(f(&c)?),
            QpeCircuits::KitaevPairs(pairs) => QpeCircuits::KitaevPairs(
                pairs
                    .into_iter()
                    .map(|(k, a, b)| Ok((k, f(&a)?, f(&b)?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

impl QpeConfig {
    pub fn new(n: usize, phase: PhaseFraction, variant: Variant) -> Self {
        QpeConfig {
            n,
            kitaev_k_max: n as u32,
            phase,
            variant,
        }
    }

    pub fn build(&self) -> Result<QpeCircuits> {
        check_n(self.n)?;
        let (n, phase) = (self.n, &self.phase);
        Ok(match self.variant {
            Variant::Kitaev => {
                if self.kitaev_k_max == 0 {
                    return Err(Error::domain("kitaev_k_max must be at least 1"));
                }
                QpeCircuits::KitaevPairs(
                    (1..=self.kitaev_k_max)
                        .map(|k| build_kitaev_pair(k, phase).map(|(a, b)| (k, a, b)))
                        .collect::<Result<_>>()?,
                )
            }
            Variant::Iterative => QpeCircuits::Single(build_iterative_qpe(n, phase)?),
            Variant::Iqft => QpeCircuits::Single(build_iqft_qpe(n, phase, true)?),
            Variant::IqftModified => QpeCircuits::Single(build_iqft_qpe(n, phase, false)?),
            Variant::Acp => QpeCircuits::Single(build_acp_qpe(n, phase, true)?),
            Variant::AcpModified => QpeCircuits::Single(build_acp_qpe(n, phase, false)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{exact_distribution, total_variation};
    use std::f64::consts::PI;

    fn phase(s: &str) -> PhaseFraction {
        PhaseFraction::from_bitstring(s).unwrap()
    }

    fn gate_ops(c: &Circuit) -> Vec<&GateOp> {
        c.ops()
            .iter()
            .filter_map(|op| match op {
                Op::Gate(g) => Some(g),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn kitaev_cos_zero_phase() {
        let (cos, _) = build_kitaev_pair(1, &phase("0")).unwrap();
        let d = exact_distribution(&cos).unwrap();
        assert!((d["0"] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kitaev_pair_at_eleven_sixteenths() {
        // Oracle: direct evaluation of (1 + cos)/2 and (1 - sin)/2.
        let a = TAU * 11.0 / 16.0;
        let (cos, sin) = build_kitaev_pair(1, &phase("1011")).unwrap();
        let pc = exact_distribution(&cos).unwrap()["0"];
        let ps = exact_distribution(&sin).unwrap()["0"];
        assert!((pc - (1.0 + a.cos()) / 2.0).abs() < 1e-10);
        assert!((ps - (1.0 - a.sin()) / 2.0).abs() < 1e-10);
        assert!((pc - 0.308_658_283_817_455_9).abs() < 1e-12);
        assert!((ps - 0.961_939_766_255_643_4).abs() < 1e-12);
    }

    #[test]
    fn kitaev_rejects_k_zero() {
        assert!(matches!(
            build_kitaev_pair(0, &phase("1")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn iqft_one_and_two_qubits() {
        let one = build_iqft_subcircuit(&[0]).unwrap();
        assert_eq!(one.ops(), &[Op::Gate(GateOp::new(GateKind::H, 0))]);

        let two = build_iqft_subcircuit(&[0, 1]).unwrap();
        assert_eq!(
            two.ops(),
            &[
                Op::Gate(GateOp::new(GateKind::H, 0)),
                Op::Gate(GateOp::controlled(
                    GateKind::ControlledPhase(-PI / 2.0),
                    vec![0],
                    1
                )),
                Op::Gate(GateOp::new(GateKind::H, 1)),
            ]
        );
        assert!(build_iqft_subcircuit(&[]).is_err());
        assert!(build_iqft_subcircuit(&[1, 1]).is_err());
    }

    #[test]
    fn iqft_qpe_recovers_eleven_sixteenths() {
        for with_ancilla in [true, false] {
            let c = build_iqft_qpe(4, &phase("1011"), with_ancilla).unwrap();
            let d = exact_distribution(&c).unwrap();
            assert!((d["1011"] - 1.0).abs() < 1e-9, "{d:?}");
        }
    }

    #[test]
    fn iqft_qpe_single_bit() {
        let d = exact_distribution(&build_iqft_qpe(1, &phase("1"), true).unwrap()).unwrap();
        assert!((d["1"] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iqft_qpe_controlled_angles_match_figure() {
        let c = build_iqft_qpe(4, &phase("1011"), true).unwrap();
        let mut angles: Vec<f64> = c
            .gates()
            .filter_map(|g| match g.kind {
                GateKind::ControlledUPower { .. } => g.kind.phase_angle(),
                _ => None,
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        let expected = [11.0 * PI / 8.0, 11.0 * PI / 4.0, 11.0 * PI / 2.0, 11.0 * PI];
        assert_eq!(angles.len(), 4);
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
        // q0 carries the largest power
        let q0 = c
            .gates()
            .find(|g| matches!(g.kind, GateKind::ControlledUPower { .. }) && g.controls == [0])
            .unwrap();
        assert!((q0.kind.phase_angle().unwrap() - 11.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn modified_iqft_uses_local_phases() {
        let c = build_iqft_qpe(4, &phase("1011"), false).unwrap();
        assert_eq!(c.num_qubits(), 4);
        let phases: Vec<(usize, f64)> = gate_ops(&c)
            .into_iter()
            .filter_map(|g| match g.kind {
                GateKind::Phase(a) => Some((g.target, a)),
                _ => None,
            })
            .collect();
        let expected = [
            (3, 11.0 * PI / 8.0),
            (2, 11.0 * PI / 4.0),
            (1, 11.0 * PI / 2.0),
            (0, 11.0 * PI),
        ];
        assert_eq!(phases.len(), 4);
        for ((q, a), (eq, ea)) in phases.iter().zip(expected) {
            assert_eq!(*q, eq);
            assert!((a - ea).abs() < 1e-12);
        }
    }

    #[test]
    fn iterative_schedule() {
        let d = exact_distribution(&build_iterative_qpe(1, &phase("1")).unwrap()).unwrap();
        assert!((d["1"] - 1.0).abs() < 1e-12);
        // Branch-enumeration oracle for phi = 1/4: round 1 reads x2 = 1,
        // round 2 reads x1 = 0; least significant first gives "10".
        let d = exact_distribution(&build_iterative_qpe(2, &phase("01")).unwrap()).unwrap();
        assert!((d["10"] - 1.0).abs() < 1e-10, "{d:?}");
        let d = exact_distribution(&build_iterative_qpe(4, &phase("1011")).unwrap()).unwrap();
        assert!((d["1101"] - 1.0).abs() < 1e-9, "{d:?}");
    }

    #[test]
    fn acp_argmax_and_single_bit() {
        let d = exact_distribution(&build_acp_qpe(4, &phase("1011"), true).unwrap()).unwrap();
        let best = d.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert_eq!(best.0, "1011");
        for bit in ["0", "1"] {
            let d = exact_distribution(&build_acp_qpe(1, &phase(bit), false).unwrap()).unwrap();
            assert!((d[bit] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn acp_uses_only_two_corrections() {
        let c = build_acp_qpe(5, &phase("10110"), false).unwrap();
        let mut per_target = [0usize; 5];
        for g in c.gates().filter(|g| g.is_controlled()) {
            per_target[g.target] += 1;
            let gap = g.target - g.controls[0];
            assert!(gap == 1 || gap == 2);
        }
        assert_eq!(per_target, [0, 1, 2, 2, 2]);
    }

    #[test]
    fn remove_ancilla_matches_direct_builds() {
        for (orig, modified) in [
            (
                build_iqft_qpe(4, &phase("1011"), true).unwrap(),
                build_iqft_qpe(4, &phase("1011"), false).unwrap(),
            ),
            (
                build_acp_qpe(4, &phase("1011"), true).unwrap(),
                build_acp_qpe(4, &phase("1011"), false).unwrap(),
            ),
        ] {
            let rewritten = remove_ancilla(&orig).unwrap();
            assert_eq!(rewritten, modified);
            let tv = total_variation(
                &exact_distribution(&orig).unwrap(),
                &exact_distribution(&rewritten).unwrap(),
            );
            assert!(tv <= 1e-10);
        }
    }

    #[test]
    fn remove_ancilla_rejects_ineligible() {
        let modified = build_iqft_qpe(3, &phase("101"), false).unwrap();
        assert!(matches!(
            remove_ancilla(&modified),
            Err(Error::RewriteIneligible(_))
        ));

        let mut measured = Circuit::new(2, 2).unwrap();
        measured.x(1).unwrap().h(0).unwrap();
        measured.cu_power(0, 1, 0.5, 1).unwrap();
        measured.measure(1, 1).unwrap();
        assert!(matches!(
            remove_ancilla(&measured),
            Err(Error::RewriteIneligible(_))
        ));

        let mut unprepared = Circuit::new(2, 0).unwrap();
        unprepared
            .h(0)
            .unwrap()
            .cu_power(0, 1, 0.5, 1)
            .unwrap()
            .x(1)
            .unwrap();
        assert!(remove_ancilla(&unprepared).is_err());
    }

    #[test]
    fn remove_ancilla_recompacts_middle_qubit() {
        let mut c = Circuit::new(3, 2).unwrap();
        c.x(1).unwrap().h(0).unwrap().h(2).unwrap();
        c.cu_power(2, 1, 0.25, 2).unwrap();
        c.cphase(0, 2, 0.1).unwrap();
        c.measure(2, 1).unwrap();
        let r = remove_ancilla(&c).unwrap();
        assert_eq!(r.num_qubits(), 2);
        assert_eq!(r.ops()[2], Op::Gate(GateOp::new(GateKind::Phase(0.5), 1)));
        assert_eq!(r.ops()[4], Op::Measure { qubit: 1, clbit: 1 });
    }

    #[test]
    fn kitaev_and_iterative_are_rewritable() {
        let (cos, _) = build_kitaev_pair(2, &phase("011")).unwrap();
        let r = remove_ancilla(&cos).unwrap();
        assert_eq!(r.num_qubits(), 1);
        let it = build_iterative_qpe(3, &phase("011")).unwrap();
        let r = remove_ancilla(&it).unwrap();
        assert_eq!(
            exact_distribution(&r).unwrap(),
            exact_distribution(&it).unwrap()
        );
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "IQFT_MODIFIED".parse::<Variant>().unwrap(),
            Variant::IqftModified
        );
        assert_eq!(
            "acp-modified".parse::<Variant>().unwrap(),
            Variant::AcpModified
        );
        assert!("lloyd".parse::<Variant>().is_err());
        assert_eq!(Variant::Iterative.bit_order(), BitOrder::LsbFirst);
    }

    #[test]
    fn config_builds_every_variant() {
        for v in Variant::ALL {
            let cfg = QpeConfig::new(3, phase("101"), v);
            let built = cfg.build().unwrap();
            match (v, &built) {
                (Variant::Kitaev, QpeCircuits::KitaevPairs(p)) => assert_eq!(p.len(), 3),
                (Variant::Kitaev, _) => panic!("expected pairs"),
                (_, QpeCircuits::Single(_)) => {}
                _ => panic!("expected a single circuit"),
            }
        }
        assert!(QpeConfig::new(0, phase("1"), Variant::Iqft)
            .build()
            .is_err());
    }
}
