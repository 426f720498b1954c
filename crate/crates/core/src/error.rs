use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("dimension {dim} exceeds the dense limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("empty vector")]
    Empty,

    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCountOutOfRange { n: usize, max: usize },

    #[error("step {s} out of range for {n} qubits")]
    StepOutOfRange { s: usize, n: usize },

    #[error("approximation parameter m={m} outside 1..={n}")]
    ApproximationOutOfRange { m: usize, n: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("phase exponent u must be at least 1, got {0}")]
    InvalidPhaseExponent(u32),

    #[error("error bound must be positive and finite, got {0}")]
    InvalidErrorBound(f64),

    #[error("qubit count mismatch: state has {state}, circuit has {circuit}")]
    QubitCountMismatch { state: usize, circuit: usize },

    #[error("state norm is {0}, expected 1")]
    NonUnitNorm(f64),

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("structure check failed: {0}")]
    Structure(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
