//! Brute-force reference Hamiltonian built by explicit fermionic
//! operator action on the occupation basis.
//!
//! Independent of the Slater-Condon path; used only to cross-check it.
//! Same phase convention: creation operators apply in increasing
//! bit-position order.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::chem::IntegralTable;

use super::Determinant;

fn annihilate(mask: u128, p: usize) -> Option<(u128, f64)> {
    if mask >> p & 1 == 0 {
        return None;
    }
    let sign = if (mask & ((1u128 << p) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Some((mask & !(1 << p), sign))
}

fn create(mask: u128, p: usize) -> Option<(u128, f64)> {
    if mask >> p & 1 == 1 {
        return None;
    }
    let sign = if (mask & ((1u128 << p) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Some((mask | 1 << p, sign))
}

/// Assembles `<d_i|H|d_j>` over the given determinant list by applying
/// the second-quantized Hamiltonian term by term.
pub fn explicit_matrix(dets: &[Determinant], t: &IntegralTable) -> DMatrix<f64> {
    let dim = dets.len();
    let n_sp = t.n_spatial();
    let index: HashMap<u128, usize> = dets
        .iter()
        .enumerate()
        .map(|(i, d)| (d.mask(), i))
        .collect();
    let mut h = DMatrix::zeros(dim, dim);

    for (col, ket) in dets.iter().enumerate() {
        let ket = ket.mask();
        // one-body: sum_{pq,sigma} h_pq a+_{p sigma} a_{q sigma}
        for q_sp in 0..n_sp {
            for sigma in 0..2 {
                let Some((s1, g1)) = annihilate(ket, 2 * q_sp + sigma) else {
                    continue;
                };
                for p_sp in 0..n_sp {
                    let v = t.one_body(p_sp, q_sp);
                    if v == 0.0 {
                        continue;
                    }
                    let Some((s2, g2)) = create(s1, 2 * p_sp + sigma) else {
                        continue;
                    };
                    if let Some(&row) = index.get(&s2) {
                        h[(row, col)] += v * g1 * g2;
                    }
                }
            }
        }
        // two-body:
        // 1/2 sum_{pqrs,sigma,tau} (pq|rs) a+_{p sigma} a+_{r tau} a_{s tau} a_{q sigma}
        for q_sp in 0..n_sp {
            for sigma in 0..2 {
                let Some((s1, g1)) = annihilate(ket, 2 * q_sp + sigma) else {
                    continue;
                };
                for s_sp in 0..n_sp {
                    for tau in 0..2 {
                        let Some((s2, g2)) = annihilate(s1, 2 * s_sp + tau) else {
                            continue;
                        };
                        for r_sp in 0..n_sp {
                            let Some((s3, g3)) = create(s2, 2 * r_sp + tau) else {
                                continue;
                            };
                            for p_sp in 0..n_sp {
                                let v = t.two_body(p_sp, q_sp, r_sp, s_sp);
                                if v == 0.0 {
                                    continue;
                                }
                                let Some((s4, g4)) = create(s3, 2 * p_sp + sigma)
                                else {
                                    continue;
                                };
                                if let Some(&row) = index.get(&s4) {
                                    h[(row, col)] += 0.5 * v * g1 * g2 * g3 * g4;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for i in 0..dim {
        h[(i, i)] += t.core_energy();
    }
    h
}
