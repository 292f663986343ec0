//! Small statevector simulator: compressed-Hamiltonian construction,
//! hardware-efficient ansatz circuits, bit-flip noise, sampling, and a
//! VQE driver. Qubit `i` of a codeword is bit `i` of the basis index.

mod ansatz;
mod circuit;
mod compressed;
mod noise;
mod state;
mod vqe;

pub use ansatz::{hea, parse_ansatz, serialize_ansatz, AnsatzSpec, Gate};
pub use circuit::{run_circuit, sample_counts};
pub use compressed::{build_compressed_hamiltonian, CompressedHamiltonian};
pub use noise::{parse_noise_model, serialize_noise_model, NoiseModel};
pub use state::StateVector;
pub use vqe::{vqe_minimize, OptConfig, VqeResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("qubit index {index} out of range for {q} qubits")]
    QubitOutOfRange { index: usize, q: usize },
    #[error("expected {expected} parameters, got {got}")]
    ParamCountMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: state has {state_q} qubits, operator {h_q}")]
    DimensionMismatch { state_q: usize, h_q: usize },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("ansatz parse error on line {line}: {msg}")]
    AnsatzParse { line: usize, msg: String },
    #[error("noise model parse error: {0}")]
    NoiseParse(String),
    #[error("non-finite energy during optimization at evaluation {0}")]
    NonFiniteEnergy(usize),
    #[error(transparent)]
    Ci(#[from] crate::ci::CiError),
}
