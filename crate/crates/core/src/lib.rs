//! Outcome-deterministic, contextual simulation of n-qubit stabilizer
//! quantum mechanics.
//!
//! The simulator keeps a full symplectic basis of the Pauli group with signs:
//! a measurement context (the stabilizer group of the state) and a conjugate
//! context whose signs are fair coins. Every Pauli observable gets a definite
//! value from these signs, which makes the model outcome deterministic, and
//! measurements rewrite the basis, which makes it contextual. Memory is
//! `4n² + 2n` bits; a measurement costs O(n²) and a gate O(n).
//!
//! ```
//! use ctxstab::{coins, OnticState, PauliOperator};
//!
//! let mut state = OnticState::prepare_canonical(2, coins::seeded(7)).unwrap();
//! let zz: PauliOperator = "ZZ".parse().unwrap();
//! assert!(!state.measure(&zz).unwrap());
//! ```

pub mod circuit;
pub mod cli;
pub mod coins;
pub mod context;
pub mod demo;
pub mod differential;
pub mod error;
pub mod gate;
pub mod oracle;
pub mod pauli;
pub mod scenarios;
pub mod selftest;
pub mod timing;

pub use circuit::{execute, parse_circuit, Circuit, Instruction, MeasurementRecord};
pub use coins::{CoinSource, PinnedCoins, SeededCoins};
pub use context::{Expansion, MemoryReport, OnticState, PivotRule};
pub use error::{Error, Result};
pub use gate::Gate;
pub use oracle::QuantumState;
pub use pauli::{commutes, compose, symplectic_product, PauliOperator};
