//! State-vector quantum circuit simulator and OpenQASM 2.0 subset toolkit.
//!
//! The crate simulates circuits over the gate set {id, x, y, z, h, s, t,
//! u1(θ), cx} with exact noiseless execution, seeded shot sampling,
//! stochastic depolarizing/readout noise, and an independent dense
//! tensor-product oracle for cross-checking the fast engine. Builders
//! construct the Grover baseline and a constant-depth register-comparison
//! search circuit in two variants.
//!
//! Conventions, used everywhere:
//! - qubit indexing is little-endian: qubit `j` is bit `j` of a basis
//!   index, so basis index 1 on two qubits is |01⟩ with qubit 0 set;
//! - bitstrings (keys, report outcomes) read most-significant-first,
//!   with clbit `k` at position `k` from the right;
//! - shot sampling and noise trajectories draw from seeded ChaCha8
//!   streams, so every report is a pure function of its inputs.

pub mod algorithms;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod noise;
pub mod qasm;
pub mod report;
pub mod statevec;
pub mod unitary;
pub mod verify;

pub use circuit::{Circuit, Instruction, RegisterDecl};
pub use error::{Error, Violation};
pub use gates::Gate;
pub use noise::{FitResult, NoiseModel};
pub use report::CountsReport;
pub use statevec::{dense_unitary_of, StateVector};
pub use unitary::DenseUnitary;
