//! The accumulated candidate set S_R and the select-merge-diagonalize
//! round step.

use std::collections::{HashMap, HashSet};

use crate::chem::IntegralTable;
use crate::ci::{build_subspace_hamiltonian, ground_state, textual_key, Determinant};

use super::PipelineError;

/// Ordered, duplicate-free accumulation of weight-N configurations.
#[derive(Clone, Debug, Default)]
pub struct CandidateSet {
    configs: Vec<Determinant>,
    seen: HashSet<Determinant>,
    history: Vec<Vec<Determinant>>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn configs(&self) -> &[Determinant] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn contains(&self, d: &Determinant) -> bool {
        self.seen.contains(d)
    }

    /// Additions recorded per accepted round.
    pub fn history(&self) -> &[Vec<Determinant>] {
        &self.history
    }

    /// Appends the new configs of `batch`, recording them as one round.
    pub fn merge(&mut self, batch: &[Determinant]) -> usize {
        let mut added = Vec::new();
        for &d in batch {
            if self.seen.insert(d) {
                self.configs.push(d);
                added.push(d);
            }
        }
        let count = added.len();
        self.history.push(added);
        count
    }
}

/// What a round did to the candidate set.
#[derive(Clone, Debug)]
pub struct MergeOutcome {
    pub set: CandidateSet,
    pub energy: Option<f64>,
    pub e_best: f64,
    pub accepted: bool,
    pub n_new: usize,
}

/// Deterministic top-R by count (textual order breaking ties), merge,
/// diagonalize, and accept only on strict improvement beyond `tol`.
/// A rejected round leaves `s_r` untouched.
pub fn select_and_merge(
    counts: &HashMap<Determinant, usize>,
    r_top: usize,
    s_r: &CandidateSet,
    t: &IntegralTable,
    e_best: f64,
    tol: f64,
) -> Result<MergeOutcome, PipelineError> {
    let mut ranked: Vec<(&Determinant, usize)> =
        counts.iter().map(|(d, &c)| (d, c)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| textual_key(a.0).cmp(&textual_key(b.0))));
    let batch: Vec<Determinant> = ranked.iter().take(r_top).map(|(d, _)| **d).collect();

    let mut merged = s_r.clone();
    let n_new = merged.merge(&batch);
    if n_new == 0 {
        return Ok(MergeOutcome {
            set: s_r.clone(),
            energy: None,
            e_best,
            accepted: false,
            n_new: 0,
        });
    }

    let h = build_subspace_hamiltonian(merged.configs(), t);
    let e_new = ground_state(&h, 1e-9)?.energy;
    if e_new < e_best - tol {
        Ok(MergeOutcome { set: merged, energy: Some(e_new), e_best: e_new, accepted: true, n_new })
    } else {
        Ok(MergeOutcome {
            set: s_r.clone(),
            energy: Some(e_new),
            e_best,
            accepted: false,
            n_new,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> IntegralTable {
        let path = format!(
            "{}/../../fixtures/h2_sto3g_0.735.fcidump",
            env!("CARGO_MANIFEST_DIR")
        );
        IntegralTable::load(path).unwrap()
    }

    #[test]
    fn empty_counts_change_nothing() {
        let t = h2();
        let s_r = CandidateSet::new();
        let out = select_and_merge(&HashMap::new(), 5, &s_r, &t, f64::INFINITY, 1e-10)
            .unwrap();
        assert!(!out.accepted);
        assert!(out.set.is_empty());
        assert_eq!(out.energy, None);
    }

    #[test]
    fn first_batch_is_always_an_improvement() {
        let t = h2();
        let mut counts = HashMap::new();
        counts.insert("1100".parse().unwrap(), 90);
        counts.insert("0011".parse().unwrap(), 10);
        let out =
            select_and_merge(&counts, 2, &CandidateSet::new(), &t, f64::INFINITY, 1e-10)
                .unwrap();
        assert!(out.accepted);
        assert_eq!(out.set.len(), 2);
        // top count first
        assert_eq!(out.set.configs()[0].to_string(), "1100");
    }

    #[test]
    fn resubmitting_known_configs_is_rejected_without_diagonalizing() {
        let t = h2();
        let mut s_r = CandidateSet::new();
        s_r.merge(&["1100".parse().unwrap()]);
        let mut counts = HashMap::new();
        counts.insert("1100".parse().unwrap(), 50);
        let out = select_and_merge(&counts, 3, &s_r, &t, -1.0, 1e-10).unwrap();
        assert!(!out.accepted);
        assert_eq!(out.energy, None);
        assert_eq!(out.set.len(), 1);
    }

    #[test]
    fn growing_the_set_never_raises_energy() {
        let t = h2();
        let dets = crate::ci::enumerate_determinants(4, 2, None).unwrap();
        let mut s_r = CandidateSet::new();
        let mut e_best = f64::INFINITY;
        for d in dets {
            let mut counts = HashMap::new();
            counts.insert(d, 1);
            let out = select_and_merge(&counts, 1, &s_r, &t, e_best, 1e-10).unwrap();
            if let Some(e) = out.energy {
                assert!(e <= e_best + 1e-12);
            }
            if out.accepted {
                e_best = out.e_best;
                s_r = out.set;
            }
        }
        let full = crate::ci::full_ci(&t, 2, None, 1e-9).unwrap();
        // the full sector was offered, so the best energy is FCI
        assert!((e_best - full.energy).abs() < 1e-9);
    }

    #[test]
    fn tie_break_is_textual() {
        let t = h2();
        let mut counts = HashMap::new();
        counts.insert("0110".parse().unwrap(), 5);
        counts.insert("1010".parse().unwrap(), 5);
        counts.insert("0011".parse().unwrap(), 5);
        let out =
            select_and_merge(&counts, 2, &CandidateSet::new(), &t, f64::INFINITY, 1e-10)
                .unwrap();
        let names: Vec<String> =
            out.set.configs().iter().map(|d| d.to_string()).collect();
        assert_eq!(names, ["0011", "0110"]);
    }
}
