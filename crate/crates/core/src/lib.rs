//! Compressed-subspace selected configuration interaction.
//!
//! The library compresses the number-conserving fermionic configuration
//! space with a chemistry-biased random linear code over GF(2), trains a
//! small feed-forward network to invert the code on the N-electron
//! sector, and runs an iterative sample-decode-diagonalize loop to
//! estimate molecular ground-state energies from FCIDUMP integrals.
//!
//! Module map:
//! - [`bits`]: occupation strings and codewords (bit 0 is the leftmost
//!   character in textual I/O and the lowest-energy spin-up orbital
//!   under chemical ordering)
//! - [`encoder`]: GF(2) linear encoders `G = [I_Q | D]`
//! - [`chem`]: FCIDUMP parsing and molecular-orbital ordering
//! - [`ci`]: determinant enumeration, Slater-Condon matrix elements,
//!   subspace diagonalization
//! - [`decoder`]: neural, genetic, annealing, and lookup decoders
//! - [`sim`]: statevector circuits, bit-flip noise, compressed
//!   Hamiltonians, VQE
//! - [`pipeline`]: the outer sample-decode-diagonalize loop and the
//!   experiment drivers

pub mod bits;
pub mod chem;
pub mod ci;
pub mod decoder;
pub mod encoder;
pub mod pipeline;
pub mod sim;

pub use bits::{Codeword, OccupationString};
pub use chem::{IntegralTable, SpinOrbitalOrdering};
pub use ci::{Determinant, EigenResult, SubspaceHamiltonian};
pub use encoder::{BiasSet, EncoderMatrix, Strategy};
