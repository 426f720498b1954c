//! State-vector simulation in O(2^n) per gate, without dense matrices.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::circuit::{swap_bits, Circuit, Gate};
use crate::error::{Error, Result};
use crate::fourier::qubits_for_len;
use crate::numerics::{Complex, ComplexVector};

/// Largest register the simulator will allocate.
pub const MAX_SIM_QUBITS: usize = 26;

const NORM_TOL: f64 = 1e-9;

/// Normalized amplitudes of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_sim_qubits(n)?;
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn to_vector(&self) -> ComplexVector {
        ComplexVector::from_vec_unchecked(self.amplitudes.clone())
    }

    pub fn into_vector(self) -> ComplexVector {
        ComplexVector::from_vec_unchecked(self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        apply_gate_raw(&mut self.amplitudes, gate);
        debug_assert!((self.norm() - 1.0).abs() <= NORM_TOL, "norm drifted");
        Ok(())
    }

    /// Applies every gate of `c` in order.
    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        if c.num_qubits() != self.n {
            return Err(Error::QubitCountMismatch {
                state: self.n,
                circuit: c.num_qubits(),
            });
        }
        for g in c.gates() {
            self.apply(g)?;
        }
        Ok(())
    }
}

fn check_sim_qubits(n: usize) -> Result<()> {
    if n <= MAX_SIM_QUBITS {
        Ok(())
    } else {
        Err(Error::QubitCountOutOfRange {
            n,
            max: MAX_SIM_QUBITS,
        })
    }
}

/// Loads `x` into a register. With `normalize` the vector is scaled to unit
/// norm; otherwise it must already have norm 1 within `1e-9`.
pub fn prepare_state(x: &ComplexVector, normalize: bool) -> Result<StateVector> {
    let n = qubits_for_len(x.len())? as usize;
    check_sim_qubits(n)?;
    let norm = x.norm();
    let amplitudes = if normalize {
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        x.iter().map(|z| z / norm).collect()
    } else {
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NonUnitNorm(norm));
        }
        x.as_slice().to_vec()
    };
    Ok(StateVector { n, amplitudes })
}

/// Returns `st` with `gate` applied.
pub fn apply_gate(mut st: StateVector, gate: &Gate) -> Result<StateVector> {
    st.apply(gate)?;
    Ok(st)
}

/// Returns `st` after running every gate of `c`.
pub fn run_circuit(mut st: StateVector, c: &Circuit) -> Result<StateVector> {
    st.run(c)?;
    Ok(st)
}

/// Applies `c` to an arbitrary amplitude buffer with no norm requirement.
/// The circuit is linear, so this is the same map [`run_circuit`] applies.
pub fn apply_circuit_unnormalized(amplitudes: &mut [Complex], c: &Circuit) -> Result<()> {
    let n = qubits_for_len(amplitudes.len())? as usize;
    if n != c.num_qubits() {
        return Err(Error::QubitCountMismatch {
            state: n,
            circuit: c.num_qubits(),
        });
    }
    for g in c.gates() {
        g.validate(n)?;
        apply_gate_raw(amplitudes, g);
    }
    Ok(())
}

fn apply_gate_raw(amps: &mut [Complex], gate: &Gate) {
    match *gate {
        Gate::Hadamard { target } => {
            let mask = 1usize << target;
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let a = amps[i];
                    let b = amps[i | mask];
                    amps[i] = (a + b) * FRAC_1_SQRT_2;
                    amps[i | mask] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        Gate::ControlledPhase { control, target, u } => {
            let mask = (1usize << control) | (1usize << target);
            let phase = Complex::from_polar(1.0, TAU * 2f64.powi(-(u as i32)));
            for (i, z) in amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *z *= phase;
                }
            }
        }
        Gate::Swap { a, b } => {
            let (lo, hi) = (a.min(b), a.max(b));
            for i in 0..amps.len() {
                // visit each transposed pair once, from its bit-lo-set member
                if (i >> lo) & 1 == 1 && (i >> hi) & 1 == 0 {
                    amps.swap(i, swap_bits(i, lo, hi));
                }
            }
        }
    }
}
