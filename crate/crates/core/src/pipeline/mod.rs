//! End-to-end orchestration: encoder generation, trial-state
//! preparation, sampling, decoding, post-selection, candidate-set
//! refinement, and subspace diagonalization — plus the uncompressed
//! baseline and the encoder-strategy comparison protocol.

mod candidates;
mod config;
mod output;
mod run;
mod strategies;
mod trial;

pub use candidates::{select_and_merge, CandidateSet, MergeOutcome};
pub use config::{
    DecoderPlan, EncoderPlan, ExperimentConfig, TrialStatePlan,
};
pub use output::{write_run_outputs, result_csv};
pub use run::{lowest_diagonal_bias, mix_seed, run_baseline_qsci, run_lossy_qsci, QsciResult, RoundRecord};
pub use strategies::{strategy_comparison, strategy_csv, StrategyConfig, StrategyOutcome};
pub use trial::make_noisy_trial_state;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Chem(#[from] crate::chem::ChemError),
    #[error(transparent)]
    Ci(#[from] crate::ci::CiError),
    #[error(transparent)]
    Sim(#[from] crate::sim::SimError),
    #[error(transparent)]
    Decoder(#[from] crate::decoder::DecoderError),
    #[error(transparent)]
    Encoder(#[from] crate::encoder::EncoderError),
    #[error("trial state: {0}")]
    Trial(String),
    #[error("io: {0}")]
    Io(String),
}
