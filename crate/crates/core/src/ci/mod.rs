//! Configuration interaction in the number-conserving sector.
//!
//! Determinants are occupation strings over `2 * n_spatial` bit
//! positions: bit `p` is spin orbital `(p / 2, p % 2)` with spin 0 =
//! up. Matrix elements come from the Slater-Condon rules; the
//! [`oracle`] module builds the same matrix by explicit fermionic
//! operator action and exists only for cross-checking.

mod enumerate;
mod eigen;
mod golden;
mod hamiltonian;
pub mod oracle;
mod slater;

pub use eigen::{ground_state, EigenResult};
pub use enumerate::{enumerate_determinants, sample_determinant, SzConstraint};
pub(crate) use enumerate::textual_key;
pub use golden::{read_golden, write_golden, GoldenRow};
pub use hamiltonian::{build_subspace_hamiltonian, full_ci, SubspaceHamiltonian};
pub use slater::hamiltonian_element;

use thiserror::Error;

use crate::bits::OccupationString;

/// An N-electron determinant in a fixed spin-orbital ordering.
pub type Determinant = OccupationString;

/// Enumeration ceiling for `enumerate_determinants`.
pub const ENUMERATION_GUARD: u128 = 100_000;

#[derive(Debug, Error)]
pub enum CiError {
    #[error("electron count {n} exceeds {m} spin orbitals")]
    BadSector { m: usize, n: usize },
    #[error("spin constraint ({n_alpha}, {n_beta}) inconsistent with n = {n}")]
    BadSpinConstraint { n_alpha: usize, n_beta: usize, n: usize },
    #[error("sector holds {0} determinants, above the enumeration guard {1}")]
    GuardExceeded(u128, u128),
    #[error("eigensolver did not converge within {iterations} iterations \
             (best residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("empty determinant list")]
    EmptyBasis,
    #[error("golden file: {0}")]
    Golden(String),
}
