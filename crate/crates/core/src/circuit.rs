//! Gate-level circuits: QFT/AQFT synthesis, dense expansion, counting and a
//! line-oriented text format.
//!
//! Qubit `q` is bit `q` of the basis-state index, so qubit 0 is the least
//! significant bit. Gates apply in list order.
//!
//! Text format (UTF-8, LF):
//!
//! ```text
//! qubits <n>
//! h <q>
//! cp <control> <target> <u>
//! swap <a> <b>
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};
use crate::fourier::ApproximationParam;
use crate::numerics::{ComplexMatrix, MAX_DENSE_QUBITS, ONE};
use crate::stepmatrices::{build_r, hadamard_tensor};

/// Largest qubit count accepted by synthesis.
pub const MAX_SYNTH_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Hadamard {
        target: usize,
    },
    /// Phase `2π/2^u` on states where both qubits are 1.
    ControlledPhase {
        control: usize,
        target: usize,
        u: u32,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Hadamard { target } => vec![target],
            Gate::ControlledPhase {
                control, target, ..
            } => vec![control, target],
            Gate::Swap { a, b } => vec![a, b],
        }
    }

    /// Rotation angle of a controlled phase; `None` for other gates.
    pub fn phase_angle(&self) -> Option<f64> {
        match *self {
            Gate::ControlledPhase { u, .. } => Some(TAU * 2f64.powi(-(u as i32))),
            _ => None,
        }
    }

    /// Checks qubit indices against `n` and the per-variant constraints.
    pub fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        match *self {
            Gate::ControlledPhase {
                control, target, u, ..
            } => {
                if control == target {
                    return Err(Error::InvalidGate(format!(
                        "controlled phase on a single qubit {control}"
                    )));
                }
                if u < 1 {
                    return Err(Error::InvalidPhaseExponent(u));
                }
            }
            Gate::Swap { a, b } if a == b => {
                return Err(Error::InvalidGate(format!("swap of qubit {a} with itself")));
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Hadamard { target } => write!(f, "h {target}"),
            Gate::ControlledPhase { control, target, u } => {
                write!(f, "cp {control} {target} {u}")
            }
            Gate::Swap { a, b } => write!(f, "swap {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::QubitCountOutOfRange {
                n,
                max: usize::BITS as usize - 1,
            });
        }
        Ok(Self {
            n,
            gates: Vec::new(),
        })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub hadamards: usize,
    pub controlled_phases: usize,
    pub swaps: usize,
    pub total: usize,
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hadamards={} controlled_phases={} swaps={} total={}",
            self.hadamards, self.controlled_phases, self.swaps, self.total
        )
    }
}

pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts::default();
    for g in c.gates() {
        match g {
            Gate::Hadamard { .. } => counts.hadamards += 1,
            Gate::ControlledPhase { .. } => counts.controlled_phases += 1,
            Gate::Swap { .. } => counts.swaps += 1,
        }
    }
    counts.total = counts.hadamards + counts.controlled_phases + counts.swaps;
    counts
}

fn check_synth_qubits(n: usize) -> Result<()> {
    if (1..=MAX_SYNTH_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCountOutOfRange {
            n,
            max: MAX_SYNTH_QUBITS,
        })
    }
}

/// Exact QFT circuit.
///
/// For `s = n−1` down to `0`: controlled phases `R(s, t, t−s+1)` for
/// `t = n−1` down to `s+1`, then a Hadamard on `s`. Finally swap `t` with
/// `n−1−t` for `t < ⌊n/2⌋`.
pub fn synth_qft(n: usize) -> Result<Circuit> {
    check_synth_qubits(n)?;
    synth_truncated(n, n)
}

/// Approximate QFT: stage `s` keeps only targets `t ≤ min(s+m−1, n−1)`, so
/// every retained phase has `u ≤ m`.
pub fn synth_aqft(n: usize, m: ApproximationParam) -> Result<Circuit> {
    check_synth_qubits(n)?;
    if m.get() > n {
        return Err(Error::ApproximationOutOfRange { m: m.get(), n });
    }
    synth_truncated(n, m.get())
}

fn synth_truncated(n: usize, m: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for s in (0..n).rev() {
        let top = (s + m - 1).min(n - 1);
        for t in (s + 1..=top).rev() {
            c.push(Gate::ControlledPhase {
                control: s,
                target: t,
                u: (t - s + 1) as u32,
            })?;
        }
        c.push(Gate::Hadamard { target: s })?;
    }
    for t in 0..n / 2 {
        c.push(Gate::Swap { a: t, b: n - 1 - t })?;
    }
    Ok(c)
}

/// Dense `2^n` embedding of a single gate.
pub fn gate_embedding(gate: &Gate, n: usize) -> Result<ComplexMatrix> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    gate.validate(n)?;
    match *gate {
        Gate::Hadamard { target } => hadamard_tensor(n, target),
        Gate::ControlledPhase { control, target, u } => {
            if (u as usize) <= n {
                build_r(n, control, target, u as usize)
            } else {
                // finer than ω itself, so not expressible as ω^{2^{n−u}}
                let phase = num_complex::Complex64::from_polar(1.0, TAU * 2f64.powi(-(u as i32)));
                let mask = (1usize << control) | (1usize << target);
                let diag: Vec<_> = (0..1usize << n)
                    .map(|j| if j & mask == mask { phase } else { ONE })
                    .collect();
                Ok(ComplexMatrix::diagonal(&diag))
            }
        }
        Gate::Swap { a, b } => {
            let dim = 1usize << n;
            let mut m = ComplexMatrix::zeros(dim);
            for j in 0..dim {
                m[(j, swap_bits(j, a, b))] = ONE;
            }
            Ok(m)
        }
    }
}

/// Exchanges bits `a` and `b` of `j`.
pub(crate) fn swap_bits(j: usize, a: usize, b: usize) -> usize {
    let differ = ((j >> a) ^ (j >> b)) & 1;
    j ^ ((differ << a) | (differ << b))
}

/// Product of the gate embeddings, first gate rightmost.
pub fn circuit_to_unitary(c: &Circuit) -> Result<ComplexMatrix> {
    let n = c.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let mut acc = ComplexMatrix::identity(1 << n);
    for g in c.gates() {
        acc = gate_embedding(g, n)?.matmul(&acc)?;
    }
    Ok(acc)
}

/// Whether two gates commute: true when they share no qubit or are both
/// diagonal.
pub fn gates_commute(a: &Gate, b: &Gate) -> bool {
    let diagonal = |g: &Gate| matches!(g, Gate::ControlledPhase { .. });
    if diagonal(a) && diagonal(b) {
        return true;
    }
    let qa = a.qubits();
    b.qubits().iter().all(|q| !qa.contains(q))
}

pub fn emit_circuit_text(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.num_qubits());
    for g in c.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn parse_index<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} '{tok}'"),
    })
}

pub fn parse_circuit_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            match toks.as_slice() {
                ["qubits", n] => {
                    let n: usize = parse_index(n, line, "qubit count")?;
                    circuit = Some(Circuit::new(n).map_err(|e| Error::Parse {
                        line,
                        message: e.to_string(),
                    })?);
                    continue;
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: "expected 'qubits <n>' header".into(),
                    })
                }
            }
        };
        let gate = match toks.as_slice() {
            ["h", q] => Gate::Hadamard {
                target: parse_index(q, line, "qubit")?,
            },
            ["cp", control, target, u] => Gate::ControlledPhase {
                control: parse_index(control, line, "qubit")?,
                target: parse_index(target, line, "qubit")?,
                u: parse_index(u, line, "phase exponent")?,
            },
            ["swap", a, b] => Gate::Swap {
                a: parse_index(a, line, "qubit")?,
                b: parse_index(b, line, "qubit")?,
            },
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unrecognized gate line '{trimmed}'"),
                })
            }
        };
        c.push(gate).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    circuit.ok_or(Error::Parse {
        line: 0,
        message: "missing 'qubits <n>' header".into(),
    })
}
