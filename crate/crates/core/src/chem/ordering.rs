//! Energy-sorted interleaved spin-orbital ordering.
//!
//! Under chemical ordering, bit position `2i` is the spin-up and `2i+1`
//! the spin-down half of the i-th lowest-energy spatial orbital.

use serde::{Deserialize, Serialize};

use crate::bits::OccupationString;

use super::IntegralTable;

/// A bijection from spin-orbital indices to bit positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinOrbitalOrdering {
    perm: Vec<usize>,
}

impl SpinOrbitalOrdering {
    pub fn identity(m_spin: usize) -> Self {
        Self { perm: (0..m_spin).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        Self { perm }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Bit position assigned to spin orbital `i`.
    pub fn position(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn apply(&self, occ: &OccupationString) -> OccupationString {
        occ.permuted(&self.perm)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }
}

/// Sorts spatial orbitals ascending by energy (sidecar energies when
/// present, `diag(h_pq)` otherwise), ties broken by original index, and
/// interleaves up/down spins.
pub fn chemical_ordering(t: &IntegralTable) -> SpinOrbitalOrdering {
    let energies = t.orbital_energy_estimates();
    let mut order: Vec<usize> = (0..t.n_spatial()).collect();
    order.sort_by(|&a, &b| {
        energies[a]
            .partial_cmp(&energies[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    // rank[p] = position of spatial orbital p in the energy sort
    let mut rank = vec![0; order.len()];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r;
    }
    let mut perm = vec![0; t.m_spin()];
    for p in 0..t.n_spatial() {
        perm[2 * p] = 2 * rank[p];
        perm[2 * p + 1] = 2 * rank[p] + 1;
    }
    SpinOrbitalOrdering { perm }
}
