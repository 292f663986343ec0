//! Experiment configuration, read from TOML.

use serde::Deserialize;

use crate::encoder::Strategy;

use super::PipelineError;

/// How the trial state is prepared each round.
#[derive(Clone, Debug, PartialEq)]
pub enum TrialStatePlan {
    /// Exact compressed ground state mixed down to a target fidelity.
    ExactPlusNoise { target_fidelity: f64 },
    /// Hardware-efficient-ansatz VQE on the compressed Hamiltonian.
    Vqe { layers: usize, max_iters: usize, trajectories: usize },
}

/// How sampled codewords are mapped back to configurations.
#[derive(Clone, Debug, PartialEq)]
pub enum DecoderPlan {
    /// Exhaustive lookup over the sector (exact; needs a small sector).
    Exact,
    /// Trained network, cached per encoder fingerprint.
    Nn(crate::decoder::TrainConfig),
}

#[derive(Clone, Debug)]
pub struct EncoderPlan {
    pub q: usize,
    pub strategy: Strategy,
    /// Base seed; round r draws its encoder from `seed + r`.
    pub seed: u64,
    /// BiasedChemical: bias set size, taken from the lowest-diagonal
    /// sector configurations.
    pub bias_lowest: usize,
    pub max_retries: usize,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub fixture: String,
    pub n_electrons: usize,
    pub sz: Option<(usize, usize)>,
    pub encoder: EncoderPlan,
    pub rounds: usize,
    pub shots: usize,
    pub r_top: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Rounds whose decoder accuracy falls below this are skipped.
    pub accuracy_floor: f64,
    /// Stop after this many consecutive rejected rounds.
    pub max_rejects: usize,
    pub trial: TrialStatePlan,
    pub decoder: DecoderPlan,
    pub noise: Option<crate::sim::NoiseModel>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, PipelineError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        raw.build()
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: String| Err(PipelineError::Config(msg));
        if self.rounds == 0 || self.r_top == 0 || self.shots == 0 {
            return bad("rounds, shots, and r_top must all be >= 1".into());
        }
        if let TrialStatePlan::ExactPlusNoise { target_fidelity } = self.trial {
            if !(0.0..=1.0).contains(&target_fidelity) || target_fidelity == 0.0 {
                return bad(format!("fidelity {target_fidelity} outside (0, 1]"));
            }
        }
        if let Some(n) = &self.noise {
            n.validate()?;
        }
        if let Some((na, nb)) = self.sz {
            if na + nb != self.n_electrons {
                return bad(format!(
                    "spin sector ({na}, {nb}) inconsistent with n = {}",
                    self.n_electrons
                ));
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    fixture: String,
    n_electrons: usize,
    sz: Option<[usize; 2]>,
    encoder: RawEncoder,
    run: RawRun,
    trial: RawTrial,
    #[serde(default)]
    decoder: RawDecoder,
    noise: Option<RawNoise>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEncoder {
    q: usize,
    strategy: String,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_bias_lowest")]
    bias_lowest: usize,
    #[serde(default = "default_max_retries")]
    max_retries: usize,
}

fn default_bias_lowest() -> usize {
    200
}

fn default_max_retries() -> usize {
    1000
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    rounds: usize,
    shots: usize,
    r_top: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    accuracy_floor: f64,
    #[serde(default = "default_max_rejects")]
    max_rejects: usize,
}

fn default_tolerance() -> f64 {
    1e-10
}

fn default_max_rejects() -> usize {
    5
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrial {
    mode: String,
    fidelity: Option<f64>,
    layers: Option<usize>,
    #[serde(default = "default_max_iters")]
    max_iters: usize,
    #[serde(default = "default_trajectories")]
    trajectories: usize,
}

fn default_max_iters() -> usize {
    200
}

fn default_trajectories() -> usize {
    200
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawDecoder {
    mode: Option<String>,
    hidden_multiplier: Option<usize>,
    learning_rate: Option<f64>,
    batch_size: Option<usize>,
    t_max: Option<usize>,
    target_accuracy: Option<f64>,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    #[serde(default)]
    p_gate1: f64,
    p_gate2: Option<f64>,
    #[serde(default)]
    p_reset: f64,
    #[serde(default)]
    p_meas: f64,
}

impl RawConfig {
    fn build(self) -> Result<ExperimentConfig, PipelineError> {
        let strategy: Strategy =
            self.encoder.strategy.parse().map_err(PipelineError::Config)?;
        let trial = match self.trial.mode.as_str() {
            "exact-noise" => TrialStatePlan::ExactPlusNoise {
                target_fidelity: self.trial.fidelity.ok_or_else(|| {
                    PipelineError::Config("exact-noise trial needs `fidelity`".into())
                })?,
            },
            "vqe" => TrialStatePlan::Vqe {
                layers: self.trial.layers.ok_or_else(|| {
                    PipelineError::Config("vqe trial needs `layers`".into())
                })?,
                max_iters: self.trial.max_iters,
                trajectories: self.trial.trajectories,
            },
            other => {
                return Err(PipelineError::Config(format!(
                    "unknown trial mode {other:?} (expected exact-noise or vqe)"
                )))
            }
        };
        let decoder = match self.decoder.mode.as_deref() {
            None | Some("exact") => DecoderPlan::Exact,
            Some("nn") => {
                let d = crate::decoder::TrainConfig::default();
                DecoderPlan::Nn(crate::decoder::TrainConfig {
                    seed: self.decoder.seed,
                    hidden_multiplier: self
                        .decoder
                        .hidden_multiplier
                        .unwrap_or(d.hidden_multiplier),
                    learning_rate: self.decoder.learning_rate.unwrap_or(d.learning_rate),
                    batch_size: self.decoder.batch_size.unwrap_or(d.batch_size),
                    t_max: self.decoder.t_max.unwrap_or(d.t_max),
                    target_accuracy: self
                        .decoder
                        .target_accuracy
                        .unwrap_or(d.target_accuracy),
                    ..d
                })
            }
            Some(other) => {
                return Err(PipelineError::Config(format!(
                    "unknown decoder mode {other:?} (expected exact or nn)"
                )))
            }
        };
        let noise = self.noise.map(|n| crate::sim::NoiseModel {
            p_gate1: n.p_gate1,
            p_gate2: n.p_gate2,
            p_reset: n.p_reset,
            p_meas: n.p_meas,
        });
        let cfg = ExperimentConfig {
            fixture: self.fixture,
            n_electrons: self.n_electrons,
            sz: self.sz.map(|[a, b]| (a, b)),
            encoder: EncoderPlan {
                q: self.encoder.q,
                strategy,
                seed: self.encoder.seed,
                bias_lowest: self.encoder.bias_lowest,
                max_retries: self.encoder.max_retries,
            },
            rounds: self.run.rounds,
            shots: self.run.shots,
            r_top: self.run.r_top,
            seed: self.run.seed,
            tolerance: self.run.tolerance,
            accuracy_floor: self.run.accuracy_floor,
            max_rejects: self.run.max_rejects,
            trial,
            decoder,
            noise,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
pub(crate) fn tests_sample_config() -> ExperimentConfig {
    ExperimentConfig::from_toml_str(tests::SAMPLE).unwrap()
}
