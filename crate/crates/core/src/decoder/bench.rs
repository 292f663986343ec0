//! Benchmark harness comparing the decoders on a grid of (m, q, n)
//! instances. Emits `m,q,n,method,train_s,decode_s,accuracy` CSV.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{Codeword, OccupationString};
use crate::chem::SpinOrbitalOrdering;
use crate::encoder::{generate_encoder, EncoderMatrix, Strategy};

use super::search::{search_decode, SearchConfig, SearchMethod};
use super::train::{sample_low_excitation, train_nn_fed, TrainConfig};
use super::DecoderError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMethod {
    Nn,
    Genetic,
    Annealing,
}

impl std::fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BenchMethod::Nn => "nn",
            BenchMethod::Genetic => "ga",
            BenchMethod::Annealing => "sa",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DecodeBenchRow {
    pub m: usize,
    pub q: usize,
    pub n: usize,
    pub method: BenchMethod,
    /// Wall-clock training time; NN only.
    pub train_s: Option<f64>,
    /// Mean per-shot decode time.
    pub decode_s: Option<f64>,
    pub accuracy: Option<f64>,
}

/// Runs each requested method on each instance: `shots` N-electron
/// strings drawn from the low-excitation distribution are encoded and
/// each decoder tries to recover them exactly. The encoder per
/// instance is a fresh systematic code seeded from `seed` and the
/// instance index.
pub fn benchmark_decoders(
    instances: &[(usize, usize, usize)],
    shots: usize,
    methods: &[BenchMethod],
    train_cfg: &TrainConfig,
    search_cfg: &SearchConfig,
    seed: u64,
) -> Result<Vec<DecodeBenchRow>, DecoderError> {
    let mut rows = Vec::new();
    for (idx, &(m, q, n)) in instances.iter().enumerate() {
        let enc_seed = seed.wrapping_add(idx as u64);
        let g = generate_encoder(m, q, Strategy::Chemical,
                                 &SpinOrbitalOrdering::identity(m), None, enc_seed, 1)
            .map_err(|e| DecoderError::BadConfig(e.to_string()))?;

        let mut shot_rng = ChaCha8Rng::seed_from_u64(enc_seed ^ SHOT_STREAM);
        let targets: Vec<OccupationString> = (0..shots)
            .map(|_| sample_low_excitation(m, n, train_cfg.excitation_rate, &mut shot_rng))
            .collect();
        let codewords: Vec<Codeword> =
            targets.iter().map(|s| g.encode(s).expect("length-checked")).collect();

        for &method in methods {
            rows.push(run_method(
                &g, m, q, n, method, &targets, &codewords, train_cfg, search_cfg, enc_seed,
            )?);
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn run_method(
    g: &EncoderMatrix,
    m: usize,
    q: usize,
    n: usize,
    method: BenchMethod,
    targets: &[OccupationString],
    codewords: &[Codeword],
    train_cfg: &TrainConfig,
    search_cfg: &SearchConfig,
    seed: u64,
) -> Result<DecodeBenchRow, DecoderError> {
    let shots = targets.len();
    let mut row = DecodeBenchRow {
        m,
        q,
        n,
        method,
        train_s: None,
        decode_s: None,
        accuracy: None,
    };
    if shots == 0 {
        return Ok(row);
    }

    let mut hits = 0usize;
    let clock = std::time::Instant::now();
    match method {
        BenchMethod::Nn => {
            let cfg = TrainConfig { seed, ..train_cfg.clone() };
            let (net, report) = train_nn_fed(g, n, &cfg)?;
            row.train_s = Some(report.train_seconds);
            let clock = std::time::Instant::now();
            for (s, c) in targets.iter().zip(codewords) {
                if net.decode(c)? == *s {
                    hits += 1;
                }
            }
            row.decode_s = Some(clock.elapsed().as_secs_f64() / shots as f64);
        }
        BenchMethod::Genetic | BenchMethod::Annealing => {
            let sm = if method == BenchMethod::Genetic {
                SearchMethod::Genetic
            } else {
                SearchMethod::Annealing
            };
            for (i, (s, c)) in targets.iter().zip(codewords).enumerate() {
                let cfg = SearchConfig {
                    method: sm,
                    seed: seed.wrapping_add(i as u64),
                    ..search_cfg.clone()
                };
                let (found, _) = search_decode(g, c, n, &cfg)?;
                if found == *s {
                    hits += 1;
                }
            }
            row.decode_s = Some(clock.elapsed().as_secs_f64() / shots as f64);
        }
    }
    row.accuracy = Some(hits as f64 / shots as f64);
    Ok(row)
}

/// Seed offset separating shot sampling from encoder generation.
const SHOT_STREAM: u64 = 0x9e3779b97f4a7c15;

pub fn benchmark_csv(rows: &[DecodeBenchRow]) -> String {
    let mut out = String::from("m,q,n,method,train_s,decode_s,accuracy\n");
    for r in rows {
        let field = |v: Option<f64>, digits: usize| match v {
            Some(x) => format!("{x:.digits$}"),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.m,
            r.q,
            r.n,
            r.method,
            field(r.train_s, 3),
            field(r.decode_s, 6),
            field(r.accuracy, 4),
        ));
    }
    out
}
