//! Decoders inverting the linear encoding on the N-electron sector:
//! a trained feed-forward network, genetic-algorithm and
//! simulated-annealing baselines, and an exhaustive lookup oracle.

mod bench;
mod checkpoint;
mod lookup;
mod mlp;
mod search;
mod train;

pub use bench::{benchmark_csv, benchmark_decoders, BenchMethod, DecodeBenchRow};
pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use lookup::{lookup_decode, LookupOutcome, LookupTable};
pub use mlp::MlpDecoder;
pub use search::{search_decode, SearchConfig, SearchMethod};
pub use train::{
    exact_match_accuracy, sample_low_excitation, train_nn_fed, TrainConfig, TrainReport,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecoderError {
    #[error("codeword has {got} bits, decoder expects {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("non-finite training loss at step {step}")]
    TrainingFailure { step: usize },
    #[error("sector holds {0} configurations, above the lookup guard {1}")]
    LookupCapacity(u128, u128),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("decoder was trained against encoder {expected:#018x}, got {got:#018x}")]
    FingerprintMismatch { expected: u64, got: u64 },
    #[error("invalid config: {0}")]
    BadConfig(String),
}

/// Stable 64-bit FNV-1a fingerprint of an encoder's serialized text.
pub fn encoder_fingerprint(g: &crate::encoder::EncoderMatrix) -> u64 {
    let text = crate::encoder::serialize_encoder(g);
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
