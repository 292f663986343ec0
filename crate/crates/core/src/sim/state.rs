//! Dense statevector over Q qubits.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::Codeword;

use super::SimError;

#[derive(Clone, Debug)]
pub struct StateVector {
    amps: Vec<Complex64>,
    q: usize,
}

impl StateVector {
    /// |0...0>.
    pub fn zero_state(q: usize) -> Self {
        assert!(q <= 24, "statevector limited to 24 qubits, got {q}");
        let mut amps = vec![Complex64::ZERO; 1 << q];
        amps[0] = Complex64::ONE;
        Self { amps, q }
    }

    /// The computational basis state |c>.
    pub fn basis_state(c: &Codeword) -> Self {
        let mut s = Self::zero_state(c.len());
        s.amps[0] = Complex64::ZERO;
        s.amps[c.index()] = Complex64::ONE;
        s
    }

    /// Wraps explicit amplitudes; the length must be a power of two and
    /// the norm must already be 1 within 1e-10.
    pub fn from_amps(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let dim = amps.len();
        assert!(dim.is_power_of_two(), "amplitude count {dim} not a power of two");
        let q = dim.trailing_zeros() as usize;
        let s = Self { amps, q };
        let norm = s.norm_sq();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SimError::BadProbability(norm));
        }
        Ok(s)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check(&self, qubit: usize) -> Result<(), SimError> {
        if qubit >= self.q {
            return Err(SimError::QubitOutOfRange { index: qubit, q: self.q });
        }
        Ok(())
    }

    /// Ry(theta) = exp(-i theta Y / 2) on one qubit.
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) -> Result<(), SimError> {
        self.check(qubit)?;
        let (sin, cos) = (theta / 2.0).sin_cos();
        let bit = 1usize << qubit;
        for i0 in 0..self.amps.len() {
            if i0 & bit == 0 {
                let i1 = i0 | bit;
                let a0 = self.amps[i0];
                let a1 = self.amps[i1];
                self.amps[i0] = cos * a0 - sin * a1;
                self.amps[i1] = sin * a0 + cos * a1;
            }
        }
        Ok(())
    }

    pub fn apply_x(&mut self, qubit: usize) -> Result<(), SimError> {
        self.check(qubit)?;
        let bit = 1usize << qubit;
        for i0 in 0..self.amps.len() {
            if i0 & bit == 0 {
                self.amps.swap(i0, i0 | bit);
            }
        }
        Ok(())
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) -> Result<(), SimError> {
        self.check(control)?;
        self.check(target)?;
        assert_ne!(control, target, "control and target must differ");
        let (c, t) = (1usize << control, 1usize << target);
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
        Ok(())
    }

    /// One projective measurement of all qubits.
    pub fn measure(&self, rng: &mut impl Rng) -> Codeword {
        let mut r: f64 = rng.gen();
        for (i, a) in self.amps.iter().enumerate() {
            r -= a.norm_sqr();
            if r <= 0.0 {
                return Codeword::from_index(i, self.q);
            }
        }
        Codeword::from_index(self.amps.len() - 1, self.q)
    }
}
