//! GF(2) linear encoders `G = [I_Q | D]` over the spin-orbital register.
//!
//! Generation is deterministic in the seed: `D` columns are drawn
//! column by column (column 0 first) as the low `Q` bits of successive
//! `next_u64()` outputs of a ChaCha8 stream seeded with the encoder
//! seed, rejecting the all-zero vector. Dense columns keep every
//! even-weight kernel vector of `G` far above the sector weight, so no
//! two same-weight configurations of a small sector are folded
//! together by column coincidences. The Random strategy first derives
//! a bit-order permutation from the same stream by a Fisher-Yates
//! shuffle (swap index drawn via `next_u64() % (i + 1)` walking i
//! downward) before any column is drawn.

mod bias;
mod serial;

pub use bias::BiasSet;
pub use serial::{parse_encoder, serialize_encoder};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::{Codeword, OccupationString};
use crate::chem::SpinOrbitalOrdering;

#[derive(Debug, Error)]
pub enum EncoderError {
    #[error("electron count {n} exceeds orbital count {m}")]
    BadSector { m: usize, n: usize },
    #[error("qubit count {q} outside 0 < q <= m = {m}")]
    BadQubitCount { q: usize, m: usize },
    #[error("biased strategy requires a nonempty bias set")]
    EmptyBiasSet,
    #[error("input has {got} bits, encoder expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(
        "no injective encoder found in {attempts} attempts; last collision \
         between bias configs {i} and {j}"
    )]
    GenerationFailure { attempts: usize, i: usize, j: usize },
}

/// Encoder generation strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Strategy {
    /// Random bit order, no injectivity check.
    Random,
    /// Energy-sorted interleaved bit order, no injectivity check.
    Chemical,
    /// Chemical bit order plus injectivity on a bias set.
    BiasedChemical,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Random => "random",
            Strategy::Chemical => "chemical",
            Strategy::BiasedChemical => "biased-chemical",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Strategy::Random),
            "chemical" => Ok(Strategy::Chemical),
            "biased-chemical" | "biased" => Ok(Strategy::BiasedChemical),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// The Q x M parity matrix `G = [I_Q | D]` with its generation
/// provenance. `d_block[j]` is column `Q + j` of `G`, stored as a Q-bit
/// mask. Inputs are permuted by `ordering` before the matrix applies.
#[derive(Clone, Debug, PartialEq)]
pub struct EncoderMatrix {
    q: usize,
    m: usize,
    d_block: Vec<u128>,
    strategy: Strategy,
    ordering: SpinOrbitalOrdering,
    seed: u64,
}

impl EncoderMatrix {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ordering(&self) -> &SpinOrbitalOrdering {
        &self.ordering
    }

    pub fn d_column(&self, j: usize) -> u128 {
        self.d_block[j]
    }

    /// The identity encoder on `m` bits.
    pub fn identity(m: usize) -> Self {
        Self {
            q: m,
            m,
            d_block: Vec::new(),
            strategy: Strategy::Chemical,
            ordering: SpinOrbitalOrdering::identity(m),
            seed: 0,
        }
    }

    pub(crate) fn from_parts(
        q: usize,
        m: usize,
        d_block: Vec<u128>,
        strategy: Strategy,
        ordering: SpinOrbitalOrdering,
        seed: u64,
    ) -> Self {
        assert_eq!(d_block.len(), m - q);
        Self { q, m, d_block, strategy, ordering, seed }
    }

    /// `G . b` over GF(2): the first Q permuted bits XOR the D columns
    /// selected by the trailing M - Q bits.
    pub fn encode(&self, b: &OccupationString) -> Result<Codeword, EncoderError> {
        if b.len() != self.m {
            return Err(EncoderError::LengthMismatch { expected: self.m, got: b.len() });
        }
        Ok(self.encode_mask(self.ordering.apply(b).mask()))
    }

    /// Encode a pre-permuted bit mask. Hot path for the search decoders.
    #[inline]
    pub fn encode_mask(&self, permuted: u128) -> Codeword {
        let mut acc = permuted & low_mask(self.q);
        let mut rest = permuted >> self.q;
        let mut j = 0;
        while rest != 0 {
            let skip = rest.trailing_zeros() as usize;
            j += skip;
            acc ^= self.d_block[j];
            rest >>= skip + 1;
            j += 1;
        }
        Codeword::from_mask(acc, self.q)
    }

    /// Ok iff all codewords are pairwise distinct; otherwise the first
    /// colliding pair `(i, j)`, `i < j`, under a lexicographic scan by
    /// input index.
    pub fn check_injectivity(
        &self,
        configs: &[OccupationString],
    ) -> Result<InjectivityCheck, EncoderError> {
        let mut seen: std::collections::HashMap<u128, usize> =
            std::collections::HashMap::with_capacity(configs.len());
        for (j, b) in configs.iter().enumerate() {
            let c = self.encode(b)?;
            if let Some(&i) = seen.get(&c.mask()) {
                return Ok(InjectivityCheck::Collision { i, j });
            }
            seen.insert(c.mask(), j);
        }
        Ok(InjectivityCheck::Ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjectivityCheck {
    Ok,
    Collision { i: usize, j: usize },
}

impl InjectivityCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, InjectivityCheck::Ok)
    }
}

/// Qubit-count bookkeeping for an (m, n) sector: the information lower
/// bound `ceil(log2 C(m, n))` and the working band
/// `n log2 m < Q < 2 n log2 m`. Choosing Q below the information bound
/// is legal; that is the lossy regime.
pub fn qubit_bounds(m: usize, n: usize) -> Result<(u32, f64, f64), EncoderError> {
    if n > m {
        return Err(EncoderError::BadSector { m, n });
    }
    let c = binomial(m, n);
    let info_lower = if c <= 1 { 0 } else { 128 - (c - 1).leading_zeros() };
    let log2m = (m as f64).log2();
    Ok((info_lower, n as f64 * log2m, 2.0 * n as f64 * log2m))
}

pub fn binomial(m: usize, n: usize) -> u128 {
    let n = n.min(m - n.min(m));
    let mut c: u128 = 1;
    for k in 0..n {
        c = c * (m - k) as u128 / (k as u128 + 1);
    }
    c
}

/// Draws `G = [I_Q | D]` from the seeded stream. BiasedChemical retries
/// with seed, seed+1, ... until the encoder is injective on `bias_set`,
/// up to `max_retries` attempts.
pub fn generate_encoder(
    m: usize,
    q: usize,
    strategy: Strategy,
    ordering: &SpinOrbitalOrdering,
    bias_set: Option<&BiasSet>,
    seed: u64,
    max_retries: usize,
) -> Result<EncoderMatrix, EncoderError> {
    if q == 0 || q > m || q > 64 {
        return Err(EncoderError::BadQubitCount { q, m });
    }
    assert_eq!(ordering.len(), m, "ordering length must equal m");
    let bias = match strategy {
        Strategy::BiasedChemical => match bias_set {
            Some(b) if !b.is_empty() => Some(b),
            _ => return Err(EncoderError::EmptyBiasSet),
        },
        _ => None,
    };

    let mut last_pair = (0, 0);
    let attempts = if bias.is_some() { max_retries.max(1) } else { 1 };
    for attempt in 0..attempts {
        let attempt_seed = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed);
        let ordering = match strategy {
            Strategy::Random => random_ordering(m, &mut rng),
            _ => ordering.clone(),
        };
        let d_block = draw_columns(m - q, q, &mut rng);
        let g = EncoderMatrix { q, m, d_block, strategy, ordering, seed: attempt_seed };
        match bias {
            None => return Ok(g),
            Some(b) => match g.check_injectivity(b.configs())? {
                InjectivityCheck::Ok => return Ok(g),
                InjectivityCheck::Collision { i, j } => last_pair = (i, j),
            },
        }
    }
    Err(EncoderError::GenerationFailure {
        attempts,
        i: last_pair.0,
        j: last_pair.1,
    })
}

fn draw_columns(count: usize, q: usize, rng: &mut ChaCha8Rng) -> Vec<u128> {
    let mask = low_mask(q);
    (0..count)
        .map(|_| loop {
            let v = rng.next_u64() as u128 & mask;
            if v != 0 {
                break v;
            }
        })
        .collect()
}

fn random_ordering(m: usize, rng: &mut ChaCha8Rng) -> SpinOrbitalOrdering {
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    SpinOrbitalOrdering::from_perm(perm)
}

#[inline]
fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}
