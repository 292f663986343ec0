//! Subspace Hamiltonian assembly and the full-CI driver.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::chem::IntegralTable;

use super::eigen::{dense_ground_state, lanczos_ground_state, DENSE_CROSSOVER};
use super::slater::hamiltonian_element;
use super::{enumerate_determinants, CiError, Determinant, EigenResult, SzConstraint};

/// Symmetric operator usable by the iterative solver.
pub trait MatVec: Sync {
    fn matvec(&self, x: &[f64], y: &mut [f64]);
}

/// Compressed sparse rows; built once, read-only afterwards.
pub(crate) struct Csr {
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl MatVec for Csr {
    fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            *yi = acc;
        });
    }
}

pub(crate) enum Storage {
    Dense(DMatrix<f64>),
    Sparse(Csr),
}

/// A real symmetric Hamiltonian over an ordered, duplicate-free
/// determinant list. Dense below [`DENSE_CROSSOVER`], sparse above.
pub struct SubspaceHamiltonian {
    dets: Vec<Determinant>,
    storage: Storage,
}

impl SubspaceHamiltonian {
    /// Wraps an already-assembled dense symmetric matrix.
    pub(crate) fn from_dense(dets: Vec<Determinant>, m: DMatrix<f64>) -> Self {
        assert_eq!(dets.len(), m.nrows());
        Self { dets, storage: Storage::Dense(m) }
    }

    /// As [`from_dense`], but re-packs to sparse storage above the
    /// crossover so the iterative solver applies.
    pub(crate) fn from_dense_auto(dets: Vec<Determinant>, m: DMatrix<f64>) -> Self {
        let dim = m.nrows();
        if dim < DENSE_CROSSOVER {
            return Self::from_dense(dets, m);
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..dim {
            for j in 0..dim {
                let v = m[(i, j)];
                if v != 0.0 {
                    cols.push(j as u32);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { dets, storage: Storage::Sparse(Csr { row_ptr, cols, vals }) }
    }

    pub fn dets(&self) -> &[Determinant] {
        &self.dets
    }

    pub fn dim(&self) -> usize {
        self.dets.len()
    }

    pub fn element(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense(m) => m[(i, j)],
            Storage::Sparse(csr) => {
                let lo = csr.row_ptr[i];
                let hi = csr.row_ptr[i + 1];
                match csr.cols[lo..hi].binary_search(&(j as u32)) {
                    Ok(k) => csr.vals[lo + k],
                    Err(_) => 0.0,
                }
            }
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub(super) fn ground_state(&self, tol: f64) -> Result<EigenResult, CiError> {
        if self.dets.is_empty() {
            return Err(CiError::EmptyBasis);
        }
        match &self.storage {
            Storage::Dense(m) => Ok(dense_ground_state(m)),
            Storage::Sparse(csr) => lanczos_ground_state(csr, self.dim(), tol),
        }
    }
}

/// Assembles `H[i][j] = <dets[i]|H|dets[j]>`; symmetric by
/// construction, rows built in parallel.
pub fn build_subspace_hamiltonian(
    dets: &[Determinant],
    t: &IntegralTable,
) -> SubspaceHamiltonian {
    let dim = dets.len();
    if dim < DENSE_CROSSOVER {
        let rows: Vec<Vec<f64>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                (0..=i)
                    .map(|j| hamiltonian_element(&dets[i], &dets[j], t))
                    .collect()
            })
            .collect();
        let mut m = DMatrix::zeros(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        SubspaceHamiltonian { dets: dets.to_vec(), storage: Storage::Dense(m) }
    } else {
        let rows: Vec<Vec<(u32, f64)>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut row = Vec::new();
                for j in 0..dim {
                    // excitation-degree prefilter before the full element
                    let diff = (dets[i].mask() ^ dets[j].mask()).count_ones();
                    if diff > 4 {
                        continue;
                    }
                    let v = hamiltonian_element(&dets[i], &dets[j], t);
                    if v != 0.0 {
                        row.push((j as u32, v));
                    }
                }
                row
            })
            .collect();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        SubspaceHamiltonian {
            dets: dets.to_vec(),
            storage: Storage::Sparse(Csr { row_ptr, cols, vals }),
        }
    }
}

/// Enumerate, assemble, diagonalize.
pub fn full_ci(
    t: &IntegralTable,
    n: usize,
    sz: Option<SzConstraint>,
    tol: f64,
) -> Result<EigenResult, CiError> {
    let dets = enumerate_determinants(t.m_spin(), n, sz)?;
    let h = build_subspace_hamiltonian(&dets, t);
    h.ground_state(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::OccupationString;

    #[test]
    fn single_determinant_is_its_diagonal() {
        let mut t = IntegralTable::new(2, 2, 0.25);
        t.set_one_body(0, 0, -1.0);
        let d: OccupationString = "1100".parse().unwrap();
        let h = build_subspace_hamiltonian(&[d], &t);
        assert_eq!(h.dim(), 1);
        assert_eq!(h.element(0, 0), 0.25 - 2.0);
    }

    #[test]
    fn permuting_dets_permutes_matrix() {
        let mut t = IntegralTable::new(2, 2, 0.0);
        t.set_one_body(0, 0, -1.0);
        t.set_one_body(1, 1, -0.5);
        t.set_two_body(0, 1, 0, 1, 0.2);
        let dets = enumerate_determinants(4, 2, None).unwrap();
        let h = build_subspace_hamiltonian(&dets, &t);
        let mut rev = dets.clone();
        rev.reverse();
        let hr = build_subspace_hamiltonian(&rev, &t);
        let n = dets.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(h.element(i, j), hr.element(n - 1 - i, n - 1 - j));
            }
        }
    }

    #[test]
    fn zero_integral_table_gives_core_energy() {
        let t = IntegralTable::new(3, 2, -4.25);
        let r = full_ci(&t, 2, None, 1e-9).unwrap();
        assert!((r.energy + 4.25).abs() < 1e-12);
    }
}
