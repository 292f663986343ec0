//! Lowest-eigenpair solvers: dense direct below the crossover, Lanczos
//! with full reorthogonalization (restarted) above.

use nalgebra::{DMatrix, DVector};

use super::hamiltonian::MatVec;
use super::CiError;

/// Dense path is taken below this dimension.
pub const DENSE_CROSSOVER: usize = 4096;

const LANCZOS_BLOCK: usize = 64;
const MAX_RESTARTS: usize = 200;

#[derive(Clone, Debug)]
pub struct EigenResult {
    /// Lowest eigenvalue in Hartree.
    pub energy: f64,
    /// Normalized ground eigenvector in the basis order of the input.
    pub vector: Vec<f64>,
    /// Solver iterations (0 for the dense direct path).
    pub iterations: usize,
    /// Final residual `||Hv - Ev||`.
    pub residual: f64,
}

pub(super) fn dense_ground_state(h: &DMatrix<f64>) -> EigenResult {
    let eig = h.clone().symmetric_eigen();
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[best] {
            best = i;
        }
    }
    let energy = eig.eigenvalues[best];
    let v = eig.eigenvectors.column(best).into_owned();
    let residual = (h * &v - energy * &v).norm();
    EigenResult {
        energy,
        vector: v.iter().copied().collect(),
        iterations: 0,
        residual,
    }
}

/// Restarted Lanczos for the lowest eigenpair of a symmetric operator.
pub(super) fn lanczos_ground_state(
    op: &dyn MatVec,
    dim: usize,
    tol: f64,
) -> Result<EigenResult, CiError> {
    assert!(dim > 0);
    let mut v = DVector::from_element(dim, 1.0 / (dim as f64).sqrt());
    // deterministic symmetry-breaking perturbation
    for i in 0..dim {
        v[i] += 1e-4 * ((i as f64 * 0.7391).sin());
    }
    v /= v.norm();

    let mut energy = f64::INFINITY;
    let mut iterations = 0;
    let mut best_residual = f64::INFINITY;

    for _restart in 0..MAX_RESTARTS {
        let m = LANCZOS_BLOCK.min(dim);
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(m);
        let mut alpha = Vec::with_capacity(m);
        let mut beta = Vec::with_capacity(m);

        basis.push(v.clone());
        for j in 0..m {
            let mut w = DVector::zeros(dim);
            op.matvec(basis[j].as_slice(), w.as_mut_slice());
            let a = basis[j].dot(&w);
            alpha.push(a);
            w -= a * &basis[j];
            if j > 0 {
                let b: f64 = beta[j - 1];
                w -= b * &basis[j - 1];
            }
            // full reorthogonalization, twice for stability
            for _ in 0..2 {
                for u in &basis {
                    let c = u.dot(&w);
                    w -= c * u;
                }
            }
            let b = w.norm();
            iterations += 1;
            if j + 1 == m || b < 1e-14 {
                break;
            }
            beta.push(b);
            basis.push(w / b);
        }

        // tridiagonal eigenproblem
        let k = alpha.len();
        let mut tri = DMatrix::zeros(k, k);
        for i in 0..k {
            tri[(i, i)] = alpha[i];
            if i + 1 < k {
                tri[(i, i + 1)] = beta[i];
                tri[(i + 1, i)] = beta[i];
            }
        }
        let eig = tri.symmetric_eigen();
        let mut best = 0;
        for i in 1..k {
            if eig.eigenvalues[i] < eig.eigenvalues[best] {
                best = i;
            }
        }
        energy = eig.eigenvalues[best];
        let y = eig.eigenvectors.column(best);
        let mut ritz = DVector::zeros(dim);
        for (j, u) in basis.iter().enumerate() {
            ritz += y[j] * u;
        }
        ritz /= ritz.norm();

        let mut hv = DVector::zeros(dim);
        op.matvec(ritz.as_slice(), hv.as_mut_slice());
        let residual = (&hv - energy * &ritz).norm();
        best_residual = best_residual.min(residual);
        v = ritz;
        if residual <= tol {
            return Ok(EigenResult {
                energy,
                vector: v.iter().copied().collect(),
                iterations,
                residual,
            });
        }
    }
    let _ = energy;
    Err(CiError::NoConvergence { iterations, residual: best_residual })
}

/// Lowest eigenpair of a subspace Hamiltonian. Dense direct solve below
/// dimension [`DENSE_CROSSOVER`], restarted Lanczos above; residual is
/// checked against `tol` on the iterative path.
pub fn ground_state(
    h: &super::SubspaceHamiltonian,
    tol: f64,
) -> Result<EigenResult, CiError> {
    h.ground_state(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let h = DMatrix::from_element(1, 1, -2.5);
        let r = dense_ground_state(&h);
        assert_eq!(r.energy, -2.5);
    }

    #[test]
    fn diagonal_three() {
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let r = dense_ground_state(&h);
        assert_eq!(r.energy, 1.0);
        assert!((r.vector[0].abs() - 1.0).abs() < 1e-12);
    }

    struct Diag(Vec<f64>);
    impl MatVec for Diag {
        fn matvec(&self, x: &[f64], y: &mut [f64]) {
            for i in 0..x.len() {
                y[i] = self.0[i] * x[i];
            }
        }
    }

    #[test]
    fn lanczos_matches_dense_on_big_diagonal() {
        let d: Vec<f64> = (0..500).map(|i| (i as f64 * 1.618).sin() * 5.0).collect();
        let min = d.iter().cloned().fold(f64::INFINITY, f64::min);
        let r = lanczos_ground_state(&Diag(d), 500, 1e-9).unwrap();
        assert!((r.energy - min).abs() < 1e-8, "{} vs {}", r.energy, min);
        assert!(r.residual <= 1e-9);
    }
}
