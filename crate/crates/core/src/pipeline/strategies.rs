//! Encoder-strategy comparison: repeat the noisy sampling protocol
//! under each strategy and report the sorted final-energy errors.
//!
//! To keep many-encoder sweeps tractable the trial state is the exact
//! sector ground vector mixed to the target fidelity, sampled at the
//! determinant level; each draw is pushed through the encoder and kept
//! only if that determinant survives the greedy codeword assignment.
//! This reproduces what measuring the compressed register keeps and
//! drops without assembling a compressed Hamiltonian per encoder.
//!
//! Seed pairing: encoders are drawn independently per strategy, but the
//! trial-noise and shot streams depend only on the seed index, so every
//! strategy sees the same noisy states and the same draw sequence.
//! Sampling noise then cancels in cross-strategy comparisons and the
//! error curves isolate what the code itself drops.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chem::{chemical_ordering, IntegralTable};
use crate::ci::{
    build_subspace_hamiltonian, enumerate_determinants, ground_state,
    hamiltonian_element, textual_key, Determinant, SzConstraint,
};
use crate::encoder::{generate_encoder, Strategy};

use super::candidates::{select_and_merge, CandidateSet};
use super::run::{lowest_diagonal_bias, mix_seed};
use super::trial::make_noisy_trial_state;
use super::PipelineError;

#[derive(Clone, Debug)]
pub struct StrategyConfig {
    pub fixture: String,
    pub n_electrons: usize,
    pub sz: Option<SzConstraint>,
    pub q: usize,
    pub target_fidelity: f64,
    /// Independent encoder seeds per strategy.
    pub n_seeds: usize,
    pub rounds: usize,
    pub shots: usize,
    pub r_top: usize,
    pub seed: u64,
    pub bias_lowest: usize,
    pub max_retries: usize,
}

impl Default for StrategyConfig {
    fn default() -> Self {
        Self {
            fixture: String::new(),
            n_electrons: 0,
            sz: None,
            q: 12,
            target_fidelity: 0.9,
            n_seeds: 20,
            rounds: 10,
            shots: 500,
            r_top: 20,
            seed: 1,
            bias_lowest: 200,
            max_retries: 1000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    /// Final energy error above sector FCI per seed, ascending.
    pub errors: Vec<f64>,
}

impl StrategyOutcome {
    pub fn median_error(&self) -> f64 {
        let n = self.errors.len();
        if n % 2 == 1 {
            self.errors[n / 2]
        } else {
            0.5 * (self.errors[n / 2 - 1] + self.errors[n / 2])
        }
    }
}

/// Runs every strategy over `n_seeds` encoders each and returns sorted
/// error curves, one outcome per strategy in the given order.
pub fn strategy_comparison(
    cfg: &StrategyConfig,
    strategies: &[Strategy],
) -> Result<Vec<StrategyOutcome>, PipelineError> {
    let t = IntegralTable::load(&cfg.fixture)?;
    let m = t.m_spin();
    let n = cfg.n_electrons;
    let dets = enumerate_determinants(m, n, cfg.sz)?;
    let ordering = chemical_ordering(&t);

    let h_full = build_subspace_hamiltonian(&dets, &t);
    let full = ground_state(&h_full, 1e-8)?;
    let psi_g = full.vector;

    // ascending-diagonal walk order shared by every encoder
    let mut walk: Vec<usize> = (0..dets.len()).collect();
    let diag: Vec<f64> = dets.iter().map(|d| hamiltonian_element(d, d, &t)).collect();
    walk.sort_by(|&a, &b| {
        diag[a]
            .partial_cmp(&diag[b])
            .unwrap()
            .then_with(|| textual_key(&dets[a]).cmp(&textual_key(&dets[b])))
    });

    let bias = if strategies.contains(&Strategy::BiasedChemical) {
        Some(lowest_diagonal_bias(&t, n, cfg.sz, cfg.bias_lowest)?)
    } else {
        None
    };

    let mut outcomes = Vec::new();
    for (si, &strategy) in strategies.iter().enumerate() {
        let mut errors = Vec::with_capacity(cfg.n_seeds);
        for k in 0..cfg.n_seeds {
            let enc_seed = mix_seed(cfg.seed, (si * cfg.n_seeds + k) as u64, 0x656e63);
            let g = generate_encoder(
                m,
                cfg.q,
                strategy,
                &ordering,
                if strategy == Strategy::BiasedChemical { bias.as_ref() } else { None },
                enc_seed,
                cfg.max_retries,
            )?;

            // greedy survivor per codeword, in the shared walk order
            let mut survivor: std::collections::HashSet<usize> = Default::default();
            let mut taken: std::collections::HashSet<u128> = Default::default();
            for &i in &walk {
                let c = g
                    .encode(&dets[i])
                    .map_err(|e| PipelineError::Config(e.to_string()))?;
                if taken.insert(c.mask()) {
                    survivor.insert(i);
                }
            }

            let pair_seed = mix_seed(cfg.seed, k as u64, 0x70616972);
            let e_final = sample_rounds(
                cfg, &t, &dets, &psi_g, &survivor, pair_seed,
            )?;
            errors.push(e_final - full.energy);
        }
        errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
        outcomes.push(StrategyOutcome { strategy, errors });
    }
    Ok(outcomes)
}

/// The round loop for one encoder: sample the noisy trial state, keep
/// compression survivors, top-R merge, diagonalize, track the best.
/// `pair_seed` is shared across strategies at the same seed index.
fn sample_rounds(
    cfg: &StrategyConfig,
    t: &IntegralTable,
    dets: &[Determinant],
    psi_g: &[f64],
    survivor: &std::collections::HashSet<usize>,
    pair_seed: u64,
) -> Result<f64, PipelineError> {
    let mut s_r = CandidateSet::new();
    let mut e_best = f64::INFINITY;
    for round in 0..cfg.rounds {
        let trial_seed = mix_seed(pair_seed, round as u64, 0x74726961);
        let sample_seed = mix_seed(pair_seed, round as u64, 0x73616d70);
        let psi = make_noisy_trial_state(psi_g, cfg.target_fidelity, trial_seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        let mut counts: HashMap<Determinant, usize> = HashMap::new();
        for _ in 0..cfg.shots {
            let i = draw(&psi, &mut rng);
            if survivor.contains(&i) {
                *counts.entry(dets[i]).or_insert(0) += 1;
            }
        }
        let out = select_and_merge(&counts, cfg.r_top, &s_r, t, e_best, 1e-10)?;
        if out.accepted {
            s_r = out.set;
            e_best = out.e_best;
        }
    }
    Ok(e_best)
}

fn draw(psi: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let mut r: f64 = rng.gen();
    for (k, a) in psi.iter().enumerate() {
        r -= a * a;
        if r <= 0.0 {
            return k;
        }
    }
    psi.len() - 1
}

/// `strategy,rank,delta_e_ha` over the sorted error curves. Energies in
/// Hartree.
pub fn strategy_csv(outcomes: &[StrategyOutcome]) -> String {
    let mut out = String::from("strategy,rank,delta_e_ha\n");
    for o in outcomes {
        for (rank, e) in o.errors.iter().enumerate() {
            let _ = writeln!(out, "{},{},{:.12}", o.strategy, rank, e);
        }
    }
    out
}
