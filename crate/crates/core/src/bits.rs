//! Fixed-width bit strings over GF(2).
//!
//! Bit convention: bit index 0 is the *leftmost* character in textual
//! I/O. Internally bit `i` lives at position `1 << i` of a `u128`, so
//! strings are limited to 128 bits (far above the supported system
//! sizes).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitsError {
    #[error("bit length {0} exceeds the 128-bit limit")]
    TooLong(usize),
    #[error("invalid character {0:?} in bit string")]
    BadChar(char),
    #[error("length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// An M-bit fermionic occupation string. Weight N marks a valid
/// N-electron configuration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationString {
    bits: u128,
    m: usize,
}

impl OccupationString {
    pub fn zero(m: usize) -> Self {
        assert!(m <= 128, "bit length {m} exceeds 128");
        Self { bits: 0, m }
    }

    pub fn from_mask(bits: u128, m: usize) -> Self {
        assert!(m <= 128, "bit length {m} exceeds 128");
        debug_assert_eq!(bits & !mask(m), 0, "stray bits beyond length {m}");
        Self { bits: bits & mask(m), m }
    }

    /// Occupied positions in increasing bit order.
    pub fn from_occupied(positions: &[usize], m: usize) -> Self {
        let mut bits = 0u128;
        for &p in positions {
            assert!(p < m, "position {p} out of range for {m} bits");
            bits |= 1 << p;
        }
        Self::from_mask(bits, m)
    }

    pub fn mask(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.m);
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.m);
        if v {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "length mismatch in xor");
        Self { bits: self.bits ^ other.bits, m: self.m }
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&i| self.get(i))
    }

    /// Reorder bits: output bit `perm[i]` takes the value of input bit `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        let mut bits = 0u128;
        for i in 0..self.m {
            if self.get(i) {
                bits |= 1 << perm[i];
            }
        }
        Self { bits, m: self.m }
    }
}

impl fmt::Display for OccupationString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for OccupationString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OccupationString({self})")
    }
}

impl FromStr for OccupationString {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, BitsError> {
        if s.len() > 128 {
            return Err(BitsError::TooLong(s.len()));
        }
        let mut bits = 0u128;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                other => return Err(BitsError::BadChar(other)),
            }
        }
        Ok(Self { bits, m: s.len() })
    }
}

/// A Q-bit codeword, the encoded image of an occupation string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: u128,
    q: usize,
}

impl Codeword {
    pub fn zero(q: usize) -> Self {
        assert!(q <= 128);
        Self { bits: 0, q }
    }

    pub fn from_mask(bits: u128, q: usize) -> Self {
        assert!(q <= 128);
        Self { bits: bits & mask(q), q }
    }

    pub fn mask(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.q
    }

    pub fn is_empty(&self) -> bool {
        self.q == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.q);
        self.bits >> i & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        Self { bits: self.bits ^ other.bits, q: self.q }
    }

    /// Basis-state index of this codeword in a 2^Q statevector.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn from_index(idx: usize, q: usize) -> Self {
        Self::from_mask(idx as u128, q)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.q {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl FromStr for Codeword {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, BitsError> {
        let occ: OccupationString = s.parse()?;
        Ok(Self { bits: occ.mask(), q: occ.len() })
    }
}

fn mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}
