//! The outer sample-decode-diagonalize loop, in lossy and baseline
//! (uncompressed) flavors.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{Codeword, OccupationString};
use crate::chem::{chemical_ordering, IntegralTable};
use crate::ci::{enumerate_determinants, hamiltonian_element, CiError, Determinant};
use crate::decoder::MlpDecoder;
use crate::encoder::{generate_encoder, BiasSet, EncoderMatrix, Strategy};
use crate::sim::{
    build_compressed_hamiltonian, hea, sample_counts, vqe_minimize, CompressedHamiltonian,
    OptConfig,
};

use super::candidates::{select_and_merge, CandidateSet};
use super::config::{DecoderPlan, ExperimentConfig, TrialStatePlan};
use super::trial::make_noisy_trial_state;
use super::PipelineError;

#[derive(Clone, Debug)]
pub struct RoundRecord {
    pub round: usize,
    pub encoder_seed: u64,
    /// Held-out decoder accuracy (NN rounds only; exact decode is 1).
    pub decoder_accuracy: Option<f64>,
    /// Energy of the prepared trial state on the compressed register.
    pub trial_energy: Option<f64>,
    /// Order-independent digest of the decoded counts.
    pub counts_digest: u64,
    pub n_new: usize,
    /// Candidate-set size after the round.
    pub n_configs: usize,
    /// Subspace energy evaluated this round, if any.
    pub energy: Option<f64>,
    pub accepted: bool,
    /// True when the round was skipped for a below-floor decoder.
    pub skipped: bool,
}

#[derive(Clone, Debug)]
pub struct QsciResult {
    pub e_best: f64,
    pub s_r: CandidateSet,
    pub rounds: Vec<RoundRecord>,
    /// Full-CI sector energy, when the sector is enumerable.
    pub reference_fci: Option<f64>,
    pub q: usize,
    pub shots_per_round: usize,
}

impl QsciResult {
    /// Shot-budget comparison unit: shots x qubits per round.
    pub fn shot_qubit_product(&self) -> usize {
        self.q * self.shots_per_round
    }
}

/// Compressed run per the configured encoder plan.
pub fn run_lossy_qsci(cfg: &ExperimentConfig) -> Result<QsciResult, PipelineError> {
    cfg.validate()?;
    run_inner(cfg, false)
}

/// Uncompressed reference: identity encoder on the full register,
/// number-conserving post-selection instead of a decoder.
pub fn run_baseline_qsci(cfg: &ExperimentConfig) -> Result<QsciResult, PipelineError> {
    cfg.validate()?;
    run_inner(cfg, true)
}

fn run_inner(cfg: &ExperimentConfig, baseline: bool) -> Result<QsciResult, PipelineError> {
    let t = IntegralTable::load(&cfg.fixture)?;
    let m = t.m_spin();
    let n = cfg.n_electrons;
    let ordering = chemical_ordering(&t);

    let reference_fci = match crate::ci::full_ci(&t, n, cfg.sz, 1e-9) {
        Ok(r) => Some(r.energy),
        Err(CiError::GuardExceeded(..)) => None,
        Err(e) => return Err(e.into()),
    };

    let bias = if !baseline && cfg.encoder.strategy == Strategy::BiasedChemical {
        Some(lowest_diagonal_bias(&t, n, cfg.sz, cfg.encoder.bias_lowest)?)
    } else {
        None
    };

    let mut s_r = CandidateSet::new();
    let mut e_best = f64::INFINITY;
    let mut rounds = Vec::new();
    let mut consecutive_rejects = 0usize;
    let mut nn_cache: HashMap<u64, (MlpDecoder, f64)> = HashMap::new();
    let q = if baseline { m } else { cfg.encoder.q };

    for round in 0..cfg.rounds {
        let encoder_seed = cfg.encoder.seed.wrapping_add(round as u64);
        let g = if baseline {
            EncoderMatrix::identity(m)
        } else {
            generate_encoder(
                m,
                cfg.encoder.q,
                cfg.encoder.strategy,
                &ordering,
                bias.as_ref(),
                encoder_seed,
                cfg.encoder.max_retries,
            )?
        };
        let h_comp = build_compressed_hamiltonian(&t, &g, n, cfg.sz)?;

        let (raw_counts, trial_energy) = prepare_and_sample(cfg, &h_comp, round)?;

        let mut record = RoundRecord {
            round,
            encoder_seed,
            decoder_accuracy: None,
            trial_energy: Some(trial_energy),
            counts_digest: 0,
            n_new: 0,
            n_configs: s_r.len(),
            energy: None,
            accepted: false,
            skipped: false,
        };

        let decoded = if baseline {
            record.decoder_accuracy = Some(1.0);
            decode_identity(&raw_counts, m, n)
        } else {
            match &cfg.decoder {
                DecoderPlan::Exact => {
                    record.decoder_accuracy = Some(1.0);
                    decode_kept(&raw_counts, &h_comp)
                }
                DecoderPlan::Nn(train_cfg) => {
                    let fp = crate::decoder::encoder_fingerprint(&g);
                    if !nn_cache.contains_key(&fp) {
                        let cfg_r = crate::decoder::TrainConfig {
                            seed: train_cfg.seed.wrapping_add(encoder_seed),
                            ..train_cfg.clone()
                        };
                        let (net, report) = crate::decoder::train_nn_fed(&g, n, &cfg_r)?;
                        nn_cache.insert(fp, (net, report.best_accuracy));
                    }
                    let (net, accuracy) = &nn_cache[&fp];
                    record.decoder_accuracy = Some(*accuracy);
                    if *accuracy < cfg.accuracy_floor {
                        record.skipped = true;
                        rounds.push(record);
                        continue;
                    }
                    decode_nn(&raw_counts, net)?
                }
            }
        };
        record.counts_digest = digest_counts(&decoded);

        let outcome =
            select_and_merge(&decoded, cfg.r_top, &s_r, &t, e_best, cfg.tolerance)?;
        record.energy = outcome.energy;
        record.accepted = outcome.accepted;
        record.n_new = if outcome.accepted { outcome.n_new } else { 0 };
        if outcome.accepted {
            s_r = outcome.set;
            e_best = outcome.e_best;
            consecutive_rejects = 0;
        } else {
            consecutive_rejects += 1;
        }
        record.n_configs = s_r.len();
        rounds.push(record);

        if consecutive_rejects >= cfg.max_rejects {
            break;
        }
    }

    if let Some(fci) = reference_fci {
        debug_assert!(e_best >= fci - 1e-10, "variational floor violated");
    }
    Ok(QsciResult {
        e_best,
        s_r,
        rounds,
        reference_fci,
        q,
        shots_per_round: cfg.shots,
    })
}

/// Trial preparation and measurement for one round. Returns codeword
/// counts and the trial state's compressed-register energy.
fn prepare_and_sample(
    cfg: &ExperimentConfig,
    h_comp: &CompressedHamiltonian,
    round: usize,
) -> Result<(HashMap<Codeword, usize>, f64), PipelineError> {
    let trial_seed = mix_seed(cfg.seed, round as u64, 0x74726961);
    let sample_seed = mix_seed(cfg.seed, round as u64, 0x73616d70);
    match &cfg.trial {
        TrialStatePlan::ExactPlusNoise { target_fidelity } => {
            let ground = h_comp.ground_state(1e-9)?;
            let psi = make_noisy_trial_state(&ground.vector, *target_fidelity, trial_seed)?;
            let energy = quadratic_form(h_comp, &psi);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let mut counts = HashMap::new();
            for _ in 0..cfg.shots {
                let k = draw_categorical(&psi, &mut rng);
                let c = h_comp.kept()[k].1;
                *counts.entry(c).or_insert(0) += 1;
            }
            Ok((counts, energy))
        }
        TrialStatePlan::Vqe { layers, max_iters, trajectories } => {
            let spec = hea(h_comp.q(), *layers);
            let opt = OptConfig {
                max_iters: *max_iters,
                trajectories: *trajectories,
                ..Default::default()
            };
            let noise = cfg.noise.as_ref();
            let r = vqe_minimize(h_comp, &spec, &opt, noise, trial_seed)?;
            let counts = sample_counts(&spec, &r.params, cfg.shots, noise, sample_seed)?;
            Ok((counts, r.energy))
        }
    }
}

fn quadratic_form(h: &CompressedHamiltonian, psi: &[f64]) -> f64 {
    let mut e = 0.0;
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            e += psi[i] * h.element(i, j) * psi[j];
        }
    }
    e
}

fn draw_categorical(psi: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let mut r: f64 = rng.gen();
    for (k, a) in psi.iter().enumerate() {
        r -= a * a;
        if r <= 0.0 {
            return k;
        }
    }
    psi.len() - 1
}

/// Baseline decode: the measured bits are the occupation string;
/// post-select on electron number.
fn decode_identity(
    counts: &HashMap<Codeword, usize>,
    m: usize,
    n: usize,
) -> HashMap<Determinant, usize> {
    let mut out = HashMap::new();
    for (c, &k) in counts {
        let d = OccupationString::from_mask(c.mask(), m);
        if d.weight() as usize == n {
            *out.entry(d).or_insert(0) += k;
        }
    }
    out
}

/// Exact decode to the compression survivor of each codeword; codewords
/// outside the kept image are dropped.
fn decode_kept(
    counts: &HashMap<Codeword, usize>,
    h_comp: &CompressedHamiltonian,
) -> HashMap<Determinant, usize> {
    let map: HashMap<u128, Determinant> =
        h_comp.kept().iter().map(|&(d, c)| (c.mask(), d)).collect();
    let mut out = HashMap::new();
    for (c, &k) in counts {
        if let Some(&d) = map.get(&c.mask()) {
            *out.entry(d).or_insert(0) += k;
        }
    }
    out
}

fn decode_nn(
    counts: &HashMap<Codeword, usize>,
    net: &MlpDecoder,
) -> Result<HashMap<Determinant, usize>, PipelineError> {
    let mut out = HashMap::new();
    for (c, &k) in counts {
        let d = net.decode(c)?;
        *out.entry(d).or_insert(0) += k;
    }
    Ok(out)
}

/// Bias set for BiasedChemical runs: the `count` lowest-diagonal sector
/// configurations.
pub fn lowest_diagonal_bias(
    t: &IntegralTable,
    n: usize,
    sz: Option<(usize, usize)>,
    count: usize,
) -> Result<BiasSet, PipelineError> {
    let dets = enumerate_determinants(t.m_spin(), n, sz)?;
    let mut scored: Vec<(f64, Determinant)> =
        dets.iter().map(|d| (hamiltonian_element(d, d, t), *d)).collect();
    scored.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then_with(|| crate::ci::textual_key(&a.1).cmp(&crate::ci::textual_key(&b.1)))
    });
    let configs: Vec<Determinant> =
        scored.into_iter().take(count).map(|(_, d)| d).collect();
    BiasSet::from_configs("lowest-diagonal", configs)
        .map_err(|e| PipelineError::Config(e.to_string()))
}

/// Order-independent FNV digest of decoded counts.
fn digest_counts(counts: &HashMap<Determinant, usize>) -> u64 {
    let mut entries: Vec<(u128, usize)> =
        counts.iter().map(|(d, &k)| (d.mask(), k)).collect();
    entries.sort_unstable();
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    for (mask, k) in entries {
        eat(mask as u64);
        eat((mask >> 64) as u64);
        eat(k as u64);
    }
    h
}

pub fn mix_seed(master: u64, round: u64, salt: u64) -> u64 {
    let mut z = master
        .wrapping_add(round.wrapping_mul(0x9e3779b97f4a7c15))
        .wrapping_add(salt);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
