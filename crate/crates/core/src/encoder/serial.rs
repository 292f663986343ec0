//! Plain-text encoder serialization.
//!
//! Header `RLE m q strategy seed`, then Q rows of M characters in
//! {0,1} giving the rows of `G = [I_Q | D]`. The bit-order permutation
//! is not stored; it is re-derived from the strategy and seed.

use thiserror::Error;

use crate::chem::SpinOrbitalOrdering;

use super::{EncoderMatrix, Strategy};

#[derive(Debug, Error)]
pub enum EncoderFormatError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("identity block mismatch at row {0}")]
    NotSystematic(usize),
}

pub fn serialize_encoder(g: &EncoderMatrix) -> String {
    let mut out = format!("RLE {} {} {} {}\n", g.m(), g.q(), g.strategy(), g.seed());
    for row in 0..g.q() {
        for col in 0..g.m() {
            let bit = if col < g.q() {
                col == row
            } else {
                g.d_column(col - g.q()) >> row & 1 == 1
            };
            out.push(if bit { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_encoder(text: &str) -> Result<EncoderMatrix, EncoderFormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| EncoderFormatError::Malformed(1, "empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "RLE" {
        return Err(EncoderFormatError::Malformed(1, header.into()));
    }
    let m: usize = fields[1]
        .parse()
        .map_err(|_| EncoderFormatError::Malformed(1, "bad m".into()))?;
    let q: usize = fields[2]
        .parse()
        .map_err(|_| EncoderFormatError::Malformed(1, "bad q".into()))?;
    let strategy: Strategy = fields[3]
        .parse()
        .map_err(|e| EncoderFormatError::Malformed(1, e))?;
    let seed: u64 = fields[4]
        .parse()
        .map_err(|_| EncoderFormatError::Malformed(1, "bad seed".into()))?;
    if q == 0 || q > m {
        return Err(EncoderFormatError::Malformed(1, format!("bad shape {q}x{m}")));
    }

    let mut d_block = vec![0u128; m - q];
    let mut rows = 0;
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if rows >= q || line.len() != m {
            return Err(EncoderFormatError::Malformed(lineno + 1, line.into()));
        }
        for (col, c) in line.chars().enumerate() {
            let bit = match c {
                '1' => true,
                '0' => false,
                _ => return Err(EncoderFormatError::Malformed(lineno + 1, line.into())),
            };
            if col < q {
                if bit != (col == rows) {
                    return Err(EncoderFormatError::NotSystematic(rows));
                }
            } else if bit {
                d_block[col - q] |= 1 << rows;
            }
        }
        rows += 1;
    }
    if rows != q {
        return Err(EncoderFormatError::Malformed(0, format!("expected {q} rows, got {rows}")));
    }

    // re-derive the bit order the same way generation did
    let ordering = match strategy {
        Strategy::Random => {
            use rand::{RngCore, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..m).collect();
            for i in (1..m).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            SpinOrbitalOrdering::from_perm(perm)
        }
        _ => SpinOrbitalOrdering::identity(m),
    };
    Ok(EncoderMatrix::from_parts(q, m, d_block, strategy, ordering, seed))
}
