//! Bias sets: configurations an encoder must stay injective on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::OccupationString;

#[derive(Debug, Error)]
pub enum BiasSetError {
    #[error("bias set is empty")]
    Empty,
    #[error("config {0} has length {1}, expected {2}")]
    MixedLength(usize, usize, usize),
    #[error("config {0} has weight {1}, expected {2}")]
    MixedWeight(usize, u32, u32),
    #[error("config {0} duplicates config {1}")]
    Duplicate(usize, usize),
}

/// A duplicate-free set of same-sector configurations with a free-text
/// provenance label.
#[derive(Clone, Debug)]
pub struct BiasSet {
    configs: Vec<OccupationString>,
    source: String,
}

impl BiasSet {
    pub fn from_configs(
        source: impl Into<String>,
        configs: Vec<OccupationString>,
    ) -> Result<Self, BiasSetError> {
        let first = configs.first().ok_or(BiasSetError::Empty)?;
        let (m, w) = (first.len(), first.weight());
        let mut seen = std::collections::HashMap::new();
        for (i, c) in configs.iter().enumerate() {
            if c.len() != m {
                return Err(BiasSetError::MixedLength(i, c.len(), m));
            }
            if c.weight() != w {
                return Err(BiasSetError::MixedWeight(i, c.weight(), w));
            }
            if let Some(&j) = seen.get(c) {
                return Err(BiasSetError::Duplicate(i, j));
            }
            seen.insert(*c, i);
        }
        Ok(Self { configs, source: source.into() })
    }

    /// Tiered excitations out of the reference with the N electrons in
    /// the lowest N bit positions: tier k moves k electrons into the
    /// trailing `M - Q` positions, each candidate kept with the tier's
    /// sampling probability. `tier_probs[k-1]` governs tier k; missing
    /// tiers halve the last given probability.
    pub fn excitation_tiers(
        m: usize,
        q: usize,
        n: usize,
        tier_probs: &[f64],
        seed: u64,
    ) -> Result<Self, BiasSetError> {
        assert!(n <= q && q <= m);
        let reference = OccupationString::from_occupied(
            &(0..n).collect::<Vec<_>>(), m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut configs = vec![reference];
        let max_tier = n.min(m - q);
        for k in 1..=max_tier {
            let p = tier_prob(tier_probs, k);
            let holes = combinations(n, k);
            let targets = combinations(m - q, k);
            for h in &holes {
                for t in &targets {
                    if !rng.gen_bool(p) {
                        continue;
                    }
                    let mut c = reference;
                    for &i in h {
                        c.set(i, false);
                    }
                    for &j in t {
                        c.set(q + j, true);
                    }
                    configs.push(c);
                }
            }
        }
        configs.sort();
        configs.dedup();
        Self::from_configs(format!("excitation-tiers(q={q}, seed={seed})"), configs)
    }

    pub fn configs(&self) -> &[OccupationString] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

fn tier_prob(probs: &[f64], k: usize) -> f64 {
    // defaults 1.0, 0.5, 0.1, then halving
    const DEFAULTS: [f64; 3] = [1.0, 0.5, 0.1];
    let table = if probs.is_empty() { &DEFAULTS[..] } else { probs };
    if k <= table.len() {
        table[k - 1]
    } else {
        table[table.len() - 1] * 0.5f64.powi((k - table.len()) as i32)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
