use thiserror::Error;

use crate::circuit::CircuitParseError;
use crate::pauli::PauliParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a register needs at least one qubit")]
    ZeroQubits,
    #[error("invalid observable {0}: measurable observables must be Hermitian")]
    InvalidObservable(String),
    #[error("qubit {qubit} out of range for a {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("invalid preparation: {0}")]
    InvalidPreparation(String),
    #[error("oracle is capped at {cap} qubits, requested {n}")]
    OracleCap { n: usize, cap: usize },
    #[error(transparent)]
    Pauli(#[from] PauliParseError),
    #[error(transparent)]
    Circuit(#[from] CircuitParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
