//! The feed-forward decoder network: one tanh hidden layer of width
//! N*M, sigmoid outputs, so the parameter count stays O(M*N).
//!
//! Inputs are codeword bits mapped to {-1, +1}; the M outputs are
//! per-orbital occupation activations. Decoding repairs the raw output
//! to an exact weight-N string by keeping the N strongest activations.

use ndarray::{Array1, Array2};

use crate::bits::{Codeword, OccupationString};

use super::DecoderError;

#[derive(Clone, Debug)]
pub struct MlpDecoder {
    pub(super) w1: Array2<f64>, // hidden x q
    pub(super) b1: Array1<f64>,
    pub(super) w2: Array2<f64>, // m x hidden
    pub(super) b2: Array1<f64>,
    pub(super) n_electrons: usize,
    pub(super) fingerprint: u64,
}

impl MlpDecoder {
    pub fn q(&self) -> usize {
        self.w1.ncols()
    }

    pub fn m(&self) -> usize {
        self.w2.nrows()
    }

    pub fn hidden(&self) -> usize {
        self.w1.nrows()
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    /// Fingerprint of the encoder this network was trained against.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Refuses to pair this network with a different encoder.
    pub fn verify_encoder(&self, g: &crate::encoder::EncoderMatrix) -> Result<(), DecoderError> {
        let got = super::encoder_fingerprint(g);
        if got != self.fingerprint {
            return Err(DecoderError::FingerprintMismatch { expected: self.fingerprint, got });
        }
        Ok(())
    }

    /// Raw output activations in (0, 1), one per spin orbital.
    pub fn activations(&self, c: &Codeword) -> Result<Array1<f64>, DecoderError> {
        if c.len() != self.q() {
            return Err(DecoderError::WidthMismatch { expected: self.q(), got: c.len() });
        }
        let x = Array1::from_shape_fn(self.q(), |i| if c.get(i) { 1.0 } else { -1.0 });
        let h = (self.w1.dot(&x) + &self.b1).mapv(f64::tanh);
        Ok((self.w2.dot(&h) + &self.b2).mapv(sigmoid))
    }

    /// Decode with weight repair: the N largest activations mark the
    /// occupied orbitals; ties break toward the lower orbital index.
    pub fn decode(&self, c: &Codeword) -> Result<OccupationString, DecoderError> {
        let a = self.activations(c)?;
        Ok(repair_to_weight(&a, self.n_electrons, self.m()))
    }
}

#[inline]
pub(super) fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Weight repair shared by the network decoder and the GA crossover:
/// keep the `n` strongest activations, lower index winning ties.
pub(super) fn repair_to_weight(a: &Array1<f64>, n: usize, m: usize) -> OccupationString {
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&i, &j| a[j].partial_cmp(&a[i]).unwrap().then(i.cmp(&j)));
    OccupationString::from_occupied(&idx[..n], m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(m: usize, q: usize, h: usize, n: usize) -> MlpDecoder {
        MlpDecoder {
            w1: Array2::zeros((h, q)),
            b1: Array1::zeros(h),
            w2: Array2::zeros((m, h)),
            b2: Array1::zeros(m),
            n_electrons: n,
            fingerprint: 0,
        }
    }

    #[test]
    fn decode_always_returns_weight_n() {
        let mut d = toy(8, 5, 4, 3);
        d.b2 = Array1::from_vec(vec![0.1, -2.0, 3.0, 0.0, 0.0, 1.0, -1.0, 0.5]);
        let out = d.decode(&"01010".parse().unwrap()).unwrap();
        assert_eq!(out.weight(), 3);
        // strongest biases are orbitals 2, 5, 7
        assert_eq!(out.to_string(), "00100101");
    }

    #[test]
    fn repair_ties_prefer_low_index() {
        let a = Array1::from_vec(vec![0.5, 0.5, 0.5, 0.5]);
        assert_eq!(repair_to_weight(&a, 2, 4).to_string(), "1100");
    }

    #[test]
    fn width_mismatch_rejected() {
        let d = toy(8, 5, 4, 3);
        assert!(matches!(
            d.decode(&"0101".parse().unwrap()),
            Err(DecoderError::WidthMismatch { expected: 5, got: 4 })
        ));
    }
}
