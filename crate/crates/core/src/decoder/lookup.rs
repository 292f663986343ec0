//! Exhaustive lookup decoding: enumerate the whole weight-N sector
//! once, then invert codewords by table. Exact, and the ground truth
//! the learned and heuristic decoders are judged against.

use std::collections::HashMap;

use crate::bits::{Codeword, OccupationString};
use crate::encoder::{binomial, EncoderMatrix};

use super::DecoderError;

/// Sector sizes above this are refused; build cost is linear in the
/// sector.
pub const LOOKUP_GUARD: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LookupOutcome {
    /// Exactly one sector preimage.
    Unique(OccupationString),
    /// Several preimages collide on this codeword; `preimage` is the
    /// textually smallest.
    Ambiguous { preimage: OccupationString, multiplicity: u32 },
    /// No weight-N preimage exists.
    NotInImage,
}

impl LookupOutcome {
    /// The reported preimage, if any.
    pub fn preimage(&self) -> Option<&OccupationString> {
        match self {
            LookupOutcome::Unique(s) => Some(s),
            LookupOutcome::Ambiguous { preimage, .. } => Some(preimage),
            LookupOutcome::NotInImage => None,
        }
    }
}

pub struct LookupTable {
    q: usize,
    n: usize,
    map: HashMap<u128, (OccupationString, u32)>,
}

impl LookupTable {
    /// Encodes every weight-`n` string once. Strings are visited in
    /// textual lexicographic order so the first entry per codeword is
    /// the smallest preimage.
    pub fn build(g: &EncoderMatrix, n: usize) -> Result<Self, DecoderError> {
        if n > g.m() {
            return Err(DecoderError::BadConfig(format!(
                "electron count {n} exceeds register size {}",
                g.m()
            )));
        }
        let count = binomial(g.m(), n);
        if count > LOOKUP_GUARD {
            return Err(DecoderError::LookupCapacity(count, LOOKUP_GUARD));
        }
        let mut configs = sector_configs(g.m(), n);
        configs.sort_by_key(crate::ci::textual_key);
        let mut map: HashMap<u128, (OccupationString, u32)> =
            HashMap::with_capacity(configs.len());
        for s in configs {
            let c = g.encode(&s).expect("length-checked");
            map.entry(c.mask())
                .and_modify(|(_, count)| *count += 1)
                .or_insert((s, 1));
        }
        Ok(Self { q: g.q(), n, map })
    }

    pub fn n_electrons(&self) -> usize {
        self.n
    }

    /// Number of distinct codewords hit by the sector.
    pub fn image_size(&self) -> usize {
        self.map.len()
    }

    /// True iff no two sector strings share a codeword.
    pub fn is_injective(&self) -> bool {
        self.map.values().all(|&(_, count)| count == 1)
    }

    /// Fraction of sector strings whose codeword has a unique preimage:
    /// the accuracy ceiling of any decoder on uniform sector inputs.
    pub fn unique_fraction(&self) -> f64 {
        let total: u64 = self.map.values().map(|&(_, c)| c as u64).sum();
        let unique = self.map.values().filter(|&&(_, c)| c == 1).count() as f64;
        unique / total as f64
    }

    pub fn decode(&self, c: &Codeword) -> Result<LookupOutcome, DecoderError> {
        if c.len() != self.q {
            return Err(DecoderError::WidthMismatch { expected: self.q, got: c.len() });
        }
        Ok(match self.map.get(&c.mask()) {
            None => LookupOutcome::NotInImage,
            Some(&(preimage, 1)) => LookupOutcome::Unique(preimage),
            Some(&(preimage, multiplicity)) => {
                LookupOutcome::Ambiguous { preimage, multiplicity }
            }
        })
    }
}

/// One-shot lookup decode; build a [`LookupTable`] instead when
/// decoding many codewords against the same encoder.
pub fn lookup_decode(
    g: &EncoderMatrix,
    c: &Codeword,
    n: usize,
) -> Result<LookupOutcome, DecoderError> {
    LookupTable::build(g, n)?.decode(c)
}

/// All weight-n strings, unguarded; callers check the size first.
fn sector_configs(m: usize, n: usize) -> Vec<OccupationString> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(OccupationString::zero(m));
        return out;
    }
    if n > m {
        return out;
    }
    let mut positions: Vec<usize> = (0..n).collect();
    loop {
        out.push(OccupationString::from_occupied(&positions, m));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if positions[i] != i + m - n {
                break;
            }
        }
        positions[i] += 1;
        for j in i + 1..n {
            positions[j] = positions[j - 1] + 1;
        }
    }
}
