//! Circuit execution with optional stochastic bit-flip trajectories,
//! and measurement sampling.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Codeword;

use super::ansatz::{AnsatzSpec, Gate};
use super::noise::NoiseModel;
use super::state::StateVector;
use super::SimError;

/// Runs the circuit from |0...0>. With noise, one stochastic
/// trajectory: each qubit's preparation flips with `p_reset` and an X
/// is inserted after each gate on each touched qubit with the gate's
/// per-qubit rate.
pub fn run_circuit(
    spec: &AnsatzSpec,
    params: &[f64],
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<StateVector, SimError> {
    if params.len() != spec.n_params() {
        return Err(SimError::ParamCountMismatch {
            expected: spec.n_params(),
            got: params.len(),
        });
    }
    if let Some(n) = noise {
        n.validate()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = StateVector::zero_state(spec.q());

    if let Some(n) = noise {
        for qubit in 0..spec.q() {
            if flip(&mut rng, n.p_reset) {
                state.apply_x(qubit)?;
            }
        }
    }
    for g in spec.gates() {
        match *g {
            Gate::Ry { qubit, param } => {
                state.apply_ry(qubit, params[param])?;
                if let Some(n) = noise {
                    if flip(&mut rng, n.p_gate1) {
                        state.apply_x(qubit)?;
                    }
                }
            }
            Gate::Cx { control, target } => {
                state.apply_cx(control, target)?;
                if let Some(n) = noise {
                    let p2 = n.two_qubit_rate();
                    for qubit in [control, target] {
                        if flip(&mut rng, p2) {
                            state.apply_x(qubit)?;
                        }
                    }
                }
            }
        }
    }
    Ok(state)
}

fn flip(rng: &mut ChaCha8Rng, p: f64) -> bool {
    p > 0.0 && rng.gen::<f64>() < p
}

/// Measures `shots` samples. With noise, every shot runs a fresh gate
/// trajectory and each measured bit flips with `p_meas`.
pub fn sample_counts(
    spec: &AnsatzSpec,
    params: &[f64],
    shots: usize,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<HashMap<Codeword, usize>, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: HashMap<Codeword, usize> = HashMap::new();
    let noiseless_state = match noise {
        Some(n) if !n.is_noiseless() => None,
        _ => Some(run_circuit(spec, params, None, seed)?),
    };
    for shot in 0..shots {
        let state = match &noiseless_state {
            Some(s) => s.clone(),
            None => run_circuit(spec, params, noise, seed.wrapping_add(1 + shot as u64))?,
        };
        let mut c = state.measure(&mut rng);
        if let Some(n) = noise {
            if n.p_meas > 0.0 {
                let mut mask = c.mask();
                for bit in 0..c.len() {
                    if rng.gen::<f64>() < n.p_meas {
                        mask ^= 1 << bit;
                    }
                }
                c = Codeword::from_mask(mask, c.len());
            }
        }
        *counts.entry(c).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ansatz::hea;

    #[test]
    fn zero_params_give_zero_state() {
        let spec = hea(3, 2);
        let s = run_circuit(&spec, &vec![0.0; spec.n_params()], None, 0).unwrap();
        assert!((s.amp(0).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_reset_noise_flips_everything() {
        let spec = AnsatzSpec::new(3, vec![]).unwrap();
        let noise = NoiseModel { p_reset: 1.0, ..NoiseModel::noiseless() };
        let s = run_circuit(&spec, &[], Some(&noise), 7).unwrap();
        assert!((s.amp(0b111).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_noise_equals_noiseless_exactly() {
        let spec = hea(4, 2);
        let params: Vec<f64> = (0..spec.n_params()).map(|i| 0.1 * i as f64).collect();
        let a = run_circuit(&spec, &params, None, 3).unwrap();
        let b = run_circuit(&spec, &params, Some(&NoiseModel::noiseless()), 3).unwrap();
        for i in 0..a.dim() {
            assert_eq!(a.amp(i), b.amp(i));
        }
    }

    #[test]
    fn param_count_checked() {
        let spec = hea(2, 1);
        assert!(matches!(run_circuit(&spec, &[0.0], None, 0),
                         Err(SimError::ParamCountMismatch { expected: 4, got: 1 })));
    }

    #[test]
    fn deterministic_state_samples_one_bin() {
        let spec = AnsatzSpec::new(2, vec![]).unwrap();
        let counts = sample_counts(&spec, &[], 100, None, 5).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts[&"00".parse().unwrap()], 100);
    }

    #[test]
    fn uniform_superposition_is_balanced() {
        // Ry(pi/2) gives |+>; 1e5 shots, 5 sigma binomial band
        let spec = AnsatzSpec::new(1, vec![Gate::Ry { qubit: 0, param: 0 }]).unwrap();
        let counts =
            sample_counts(&spec, &[std::f64::consts::FRAC_PI_2], 100_000, None, 1).unwrap();
        let ones = counts[&"1".parse().unwrap()] as f64;
        let sigma = (100_000.0f64 * 0.25).sqrt();
        assert!((ones - 50_000.0).abs() < 5.0 * sigma, "ones = {ones}");
    }

    #[test]
    fn readout_noise_rate_matches() {
        let spec = AnsatzSpec::new(1, vec![]).unwrap();
        let noise = NoiseModel { p_meas: 0.1, ..NoiseModel::noiseless() };
        let counts = sample_counts(&spec, &[], 100_000, Some(&noise), 2).unwrap();
        let ones = *counts.get(&"1".parse().unwrap()).unwrap_or(&0) as f64;
        let sigma = (100_000.0f64 * 0.1 * 0.9).sqrt();
        assert!((ones - 10_000.0).abs() < 5.0 * sigma, "ones = {ones}");
    }

    #[test]
    fn counts_sum_to_shots_under_noise() {
        let spec = hea(3, 1);
        let noise = NoiseModel::uniform(0.1);
        let params: Vec<f64> = (0..spec.n_params()).map(|i| 0.2 * i as f64).collect();
        let counts = sample_counts(&spec, &params, 500, Some(&noise), 9).unwrap();
        assert_eq!(counts.values().sum::<usize>(), 500);
    }
}
