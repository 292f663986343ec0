//! Compressed sector Hamiltonian: the N-electron Hamiltonian pushed
//! through a (possibly lossy) encoder onto the Q-qubit register.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::bits::Codeword;
use crate::chem::IntegralTable;
use crate::ci::{
    enumerate_determinants, hamiltonian_element, CiError, Determinant, EigenResult,
    SzConstraint,
};
use crate::encoder::EncoderMatrix;

use super::state::StateVector;
use super::SimError;

/// The sector Hamiltonian restricted to determinants that won their
/// codeword. `matrix[i][j] = <d_i|H|d_j>` over the kept list.
pub struct CompressedHamiltonian {
    q: usize,
    kept: Vec<(Determinant, Codeword)>,
    dropped: usize,
    matrix: DMatrix<f64>,
}

impl CompressedHamiltonian {
    pub fn q(&self) -> usize {
        self.q
    }

    /// Surviving (determinant, codeword) pairs, ascending diagonal
    /// energy.
    pub fn kept(&self) -> &[(Determinant, Codeword)] {
        &self.kept
    }

    /// Sector configurations discarded because their codeword was
    /// already taken.
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Matrix element between kept entries i and j.
    pub fn element(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// Diagonal toy instance for optimizer tests.
    #[cfg(test)]
    pub(crate) fn diag_for_tests(
        q: usize,
        entries: Vec<(Determinant, Codeword, f64)>,
    ) -> Self {
        let dim = entries.len();
        let mut matrix = DMatrix::zeros(dim, dim);
        let mut kept = Vec::with_capacity(dim);
        for (i, (d, c, e)) in entries.into_iter().enumerate() {
            matrix[(i, i)] = e;
            kept.push((d, c));
        }
        Self { q, kept, dropped: 0, matrix }
    }

    /// Lowest eigenpair over the kept support.
    pub fn ground_state(&self, tol: f64) -> Result<EigenResult, SimError> {
        if self.kept.is_empty() {
            return Err(SimError::Ci(CiError::EmptyBasis));
        }
        let dets: Vec<Determinant> = self.kept.iter().map(|(d, _)| *d).collect();
        let h = crate::ci::SubspaceHamiltonian::from_dense_auto(dets, self.matrix.clone());
        Ok(crate::ci::ground_state(&h, tol)?)
    }

    /// <psi|H_comp|psi>; amplitudes outside the kept codewords see zero
    /// rows and contribute nothing.
    pub fn expectation(&self, state: &StateVector) -> Result<f64, SimError> {
        if state.q() != self.q {
            return Err(SimError::DimensionMismatch { state_q: state.q(), h_q: self.q });
        }
        let mut e = 0.0;
        for (i, (_, ci)) in self.kept.iter().enumerate() {
            let ai = state.amp(ci.index());
            for (j, (_, cj)) in self.kept.iter().enumerate() {
                let h = self.matrix[(i, j)];
                if h != 0.0 {
                    e += (ai.conj() * state.amp(cj.index())).re * h;
                }
            }
        }
        Ok(e)
    }
}

/// Enumerates the sector, walks determinants in ascending diagonal
/// energy (ties by textual order), and greedily keeps each one whose
/// codeword is still free; colliders are dropped.
pub fn build_compressed_hamiltonian(
    t: &IntegralTable,
    g: &EncoderMatrix,
    n: usize,
    sz: Option<SzConstraint>,
) -> Result<CompressedHamiltonian, SimError> {
    let dets = enumerate_determinants(t.m_spin(), n, sz)?;
    let mut scored: Vec<(f64, Determinant)> = dets
        .par_iter()
        .map(|d| (hamiltonian_element(d, d, t), *d))
        .collect();
    scored.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then_with(|| crate::ci::textual_key(&a.1).cmp(&crate::ci::textual_key(&b.1)))
    });

    let mut seen = std::collections::HashSet::new();
    let mut kept: Vec<(Determinant, Codeword)> = Vec::new();
    let mut dropped = 0;
    for (_, d) in scored {
        let c = g.encode(&d).map_err(|e| SimError::NoiseParse(e.to_string()))?;
        if seen.insert(c.mask()) {
            kept.push((d, c));
        } else {
            dropped += 1;
        }
    }

    let dim = kept.len();
    let rows: Vec<Vec<f64>> = (0..dim)
        .into_par_iter()
        .map(|i| (0..=i).map(|j| hamiltonian_element(&kept[i].0, &kept[j].0, t)).collect())
        .collect();
    let mut matrix = DMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    Ok(CompressedHamiltonian { q: g.q(), kept, dropped, matrix })
}
