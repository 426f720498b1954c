//! Mechanized derivation of the quantum Fourier transform from the radix-2
//! FFT.
//!
//! Each FFT butterfly stage is a unitary `P(s)` with two nonzeros per row.
//! A structure-exploiting QR factorization splits it into a Hadamard on one
//! qubit and a diagonal of phases, and the diagonal splits again into
//! two-qubit controlled phases. Chaining the stages and a final bit-reversal
//! gives the QFT circuit; truncating the phase chains gives the approximate
//! QFT.
//!
//! - [`numerics`]: dense complex matrices and vectors.
//! - [`fourier`]: reference DFT/FFT, approximate variants, error bounds.
//! - [`stepmatrices`]: `P(s)`, `M(s)`, `N(s)`, `R(s,t,u)` and the QR step.
//! - [`circuit`]: gate IR, synthesis, dense expansion, text format.
//! - [`simulator`]: state-vector simulation without dense matrices.

pub mod circuit;
pub mod error;
pub mod fourier;
pub mod numerics;
pub mod simulator;
pub mod stepmatrices;

pub use circuit::{
    circuit_to_unitary, emit_circuit_text, gate_counts, parse_circuit_text, synth_aqft, synth_qft,
    Circuit, Gate, GateCounts,
};
pub use error::{Error, Result};
pub use fourier::{
    bit_reverse, dft_approx_direct, dft_direct, fft_approx_classical, fft_classical,
    min_m_for_error, phase_error_bound, ApproximationParam, BitIndex,
};
pub use numerics::{Complex, ComplexMatrix, ComplexVector, Tolerance};
pub use simulator::{apply_gate, prepare_state, run_circuit, StateVector};
pub use stepmatrices::{
    build_alpha, build_m, build_n, build_p, build_r, qr_decompose_step, StepDecomposition,
};
