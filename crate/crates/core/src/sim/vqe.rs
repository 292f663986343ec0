//! VQE driver over a compressed Hamiltonian.
//!
//! Noiseless mode: BFGS with central finite-difference gradients and a
//! backtracking (monotone) line search. Noisy mode: Nelder-Mead on
//! trajectory-averaged energies, since finite differences are
//! meaningless under stochastic bit flips.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ansatz::AnsatzSpec;
use super::circuit::run_circuit;
use super::compressed::CompressedHamiltonian;
use super::noise::NoiseModel;
use super::SimError;

#[derive(Clone, Debug)]
pub struct OptConfig {
    pub max_iters: usize,
    /// Convergence threshold on the energy change per iteration.
    pub tol: f64,
    /// Trajectories averaged per energy evaluation in noisy mode.
    pub trajectories: usize,
    /// Central finite-difference step (noiseless mode).
    pub fd_step: f64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self { max_iters: 200, tol: 1e-8, trajectories: 200, fd_step: 1e-5 }
    }
}

#[derive(Clone, Debug)]
pub struct VqeResult {
    pub energy: f64,
    pub params: Vec<f64>,
    /// Best energy after each iteration.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

pub fn vqe_minimize(
    h: &CompressedHamiltonian,
    spec: &AnsatzSpec,
    cfg: &OptConfig,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<VqeResult, SimError> {
    if spec.q() != h.q() {
        return Err(SimError::DimensionMismatch { state_q: spec.q(), h_q: h.q() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n_params();
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.1..0.1)).collect();

    let noisy = noise.map_or(false, |n| !n.is_noiseless());
    let mut evals = 0usize;
    let mut energy_of = |x: &[f64], evals: &mut usize| -> Result<f64, SimError> {
        *evals += 1;
        let e = if noisy {
            let noise = noise.unwrap();
            // common random numbers: the same trajectory seeds at every
            // evaluation give a deterministic objective the simplex can
            // actually descend
            let mut acc = 0.0;
            for k in 0..cfg.trajectories.max(1) {
                let traj_seed =
                    seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(k as u64);
                let state = run_circuit(spec, x, Some(noise), traj_seed)?;
                acc += h.expectation(&state)?;
            }
            acc / cfg.trajectories.max(1) as f64
        } else {
            h.expectation(&run_circuit(spec, x, None, 0)?)?
        };
        if !e.is_finite() {
            return Err(SimError::NonFiniteEnergy(*evals));
        }
        Ok(e)
    };

    let (energy, params, trace) = if noisy {
        nelder_mead(&mut energy_of, &mut evals, x0, cfg)?
    } else {
        bfgs(&mut energy_of, &mut evals, x0, cfg)?
    };
    Ok(VqeResult { energy, params, trace, evaluations: evals })
}

type EnergyFn<'a> = dyn FnMut(&[f64], &mut usize) -> Result<f64, SimError> + 'a;

fn bfgs(
    f: &mut EnergyFn,
    evals: &mut usize,
    x0: Vec<f64>,
    cfg: &OptConfig,
) -> Result<(f64, Vec<f64>, Vec<f64>), SimError> {
    let n = x0.len();
    let mut x = DVector::from_vec(x0);
    let mut fx = f(x.as_slice(), evals)?;
    let mut trace = vec![fx];
    if n == 0 {
        return Ok((fx, vec![], trace));
    }
    let mut hinv = DMatrix::<f64>::identity(n, n);
    let mut grad = fd_gradient(f, evals, &x, cfg.fd_step)?;

    for _ in 0..cfg.max_iters {
        let dir = -(&hinv * &grad);
        // backtracking Armijo line search keeps the trace monotone
        let slope = grad.dot(&dir);
        if slope >= 0.0 {
            hinv = DMatrix::identity(n, n);
            continue;
        }
        let mut step = 1.0;
        let mut x_new = &x + step * &dir;
        let mut f_new = f(x_new.as_slice(), evals)?;
        let mut tries = 0;
        while f_new > fx + 1e-4 * step * slope && tries < 40 {
            step *= 0.5;
            x_new = &x + step * &dir;
            f_new = f(x_new.as_slice(), evals)?;
            tries += 1;
        }
        if f_new >= fx {
            trace.push(fx);
            break;
        }

        let grad_new = fd_gradient(f, evals, &x_new, cfg.fd_step)?;
        let s = &x_new - &x;
        let y = &grad_new - &grad;
        let sy = s.dot(&y);
        if sy > 1e-12 {
            let rho = 1.0 / sy;
            let i = DMatrix::<f64>::identity(n, n);
            let left = &i - rho * &s * y.transpose();
            let right = &i - rho * &y * s.transpose();
            hinv = &left * hinv * &right + rho * &s * s.transpose();
        }

        let delta = fx - f_new;
        x = x_new;
        fx = f_new;
        grad = grad_new;
        trace.push(fx);
        if delta < cfg.tol {
            break;
        }
    }
    Ok((fx, x.iter().copied().collect(), trace))
}

fn fd_gradient(
    f: &mut EnergyFn,
    evals: &mut usize,
    x: &DVector<f64>,
    step: f64,
) -> Result<DVector<f64>, SimError> {
    let mut g = DVector::zeros(x.len());
    let mut xp = x.clone();
    for i in 0..x.len() {
        xp[i] = x[i] + step;
        let fp = f(xp.as_slice(), evals)?;
        xp[i] = x[i] - step;
        let fm = f(xp.as_slice(), evals)?;
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * step);
    }
    Ok(g)
}

fn nelder_mead(
    f: &mut EnergyFn,
    evals: &mut usize,
    x0: Vec<f64>,
    cfg: &OptConfig,
) -> Result<(f64, Vec<f64>, Vec<f64>), SimError> {
    let n = x0.len();
    if n == 0 {
        let e = f(&x0, evals)?;
        return Ok((e, x0, vec![e]));
    }
    let spread = 0.25;
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    {
        let e = f(&x0, evals)?;
        simplex.push((x0.clone(), e));
    }
    for i in 0..n {
        let mut v = x0.clone();
        v[i] += spread;
        let e = f(&v, evals)?;
        simplex.push((v, e));
    }

    let mut trace = Vec::new();
    for _ in 0..cfg.max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        trace.push(simplex[0].1);
        if (simplex[n].1 - simplex[0].1).abs() < cfg.tol {
            break;
        }
        // centroid of all but the worst
        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for i in 0..n {
                centroid[i] += v[i] / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let at = |alpha: f64| -> Vec<f64> {
            (0..n).map(|i| centroid[i] + alpha * (centroid[i] - worst.0[i])).collect()
        };

        let refl = at(1.0);
        let f_refl = f(&refl, evals)?;
        if f_refl < simplex[0].1 {
            let exp = at(2.0);
            let f_exp = f(&exp, evals)?;
            simplex[n] = if f_exp < f_refl { (exp, f_exp) } else { (refl, f_refl) };
        } else if f_refl < simplex[n - 1].1 {
            simplex[n] = (refl, f_refl);
        } else {
            let contr = at(-0.5);
            let f_contr = f(&contr, evals)?;
            if f_contr < worst.1 {
                simplex[n] = (contr, f_contr);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for i in 0..n {
                        entry.0[i] = best[i] + 0.5 * (entry.0[i] - best[i]);
                    }
                    entry.1 = f(&entry.0, evals)?;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    trace.push(simplex[0].1);
    let (params, energy) = simplex.swap_remove(0);
    Ok((energy, params, trace))
}
