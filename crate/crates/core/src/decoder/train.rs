//! Supervised training of the decoder network on freshly sampled
//! weight-N configurations and their codewords. Samples follow the
//! low-excitation distribution the decoder sees in production, where
//! near-reference configurations dominate the shot stream.

use ndarray::{Array1, Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::OccupationString;
use crate::encoder::EncoderMatrix;

use super::mlp::{repair_to_weight, sigmoid, MlpDecoder};
use super::DecoderError;

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub seed: u64,
    /// Hidden width = multiplier * N * M.
    pub hidden_multiplier: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub t_max: usize,
    pub eval_every: usize,
    pub eval_samples: usize,
    /// Exact-match accuracy at which training stops early.
    pub target_accuracy: f64,
    /// Per-electron promotion probability of the training and
    /// evaluation distribution; see [`sample_low_excitation`].
    pub excitation_rate: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            hidden_multiplier: 1,
            learning_rate: 1e-3,
            batch_size: 256,
            t_max: 20_000,
            eval_every: 250,
            eval_samples: 2048,
            target_accuracy: 0.999,
            excitation_rate: 0.25,
        }
    }
}

/// Draws a weight-`n` string from the low-excitation distribution: the
/// reference fills the `n` lowest positions, then each electron is
/// independently promoted with probability `rate` to a uniformly
/// chosen unoccupied position. At `rate = 0` this is the reference
/// itself; at `rate = 1` every electron scatters.
pub fn sample_low_excitation(
    m: usize,
    n: usize,
    rate: f64,
    rng: &mut impl Rng,
) -> OccupationString {
    debug_assert!(n <= m);
    let mut occupied = vec![false; m];
    occupied[..n].fill(true);
    if n < m {
        for i in 0..n {
            if rng.gen_bool(rate) {
                let empties: Vec<usize> = (0..m).filter(|&j| !occupied[j]).collect();
                let target = empties[rng.gen_range(0..empties.len())];
                occupied[i] = false;
                occupied[target] = true;
            }
        }
    }
    let pos: Vec<usize> = (0..m).filter(|&j| occupied[j]).collect();
    OccupationString::from_occupied(&pos, m)
}

#[derive(Clone, Debug)]
pub struct TrainReport {
    pub steps_run: usize,
    pub best_accuracy: f64,
    pub final_loss: f64,
    pub train_seconds: f64,
}

/// Trains a decoder network for encoder `g` on the weight-`n` sector.
/// Samples are drawn on the fly, a held-out set scores exact-match
/// accuracy after weight repair, and the best-scoring parameters win.
pub fn train_nn_fed(
    g: &EncoderMatrix,
    n: usize,
    cfg: &TrainConfig,
) -> Result<(MlpDecoder, TrainReport), DecoderError> {
    if n == 0 || n > g.m() {
        return Err(DecoderError::BadConfig(format!(
            "electron count {n} outside 1..={}",
            g.m()
        )));
    }
    if cfg.batch_size == 0 || cfg.hidden_multiplier == 0 {
        return Err(DecoderError::BadConfig("zero batch size or hidden width".into()));
    }
    if !(0.0..=1.0).contains(&cfg.excitation_rate) {
        return Err(DecoderError::BadConfig(format!(
            "excitation rate {} outside [0, 1]",
            cfg.excitation_rate
        )));
    }
    let start = std::time::Instant::now();
    let (m, q) = (g.m(), g.q());
    let hidden = cfg.hidden_multiplier * n * m;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    // held-out evaluation set, drawn before any training batch
    let held_out: Vec<OccupationString> = (0..cfg.eval_samples)
        .map(|_| sample_low_excitation(m, n, cfg.excitation_rate, &mut rng))
        .collect();

    let mut net = init_params(m, q, hidden, n, super::encoder_fingerprint(g), &mut rng);
    let mut adam = Adam::new(&net, cfg.learning_rate);

    let mut best = net.clone();
    let mut best_acc = exact_match_accuracy(&net, g, &held_out);
    let mut final_loss = f64::NAN;
    let mut steps_run = 0;

    for step in 1..=cfg.t_max {
        steps_run = step;
        let (x, y) = sample_batch(g, n, cfg.batch_size, cfg.excitation_rate, &mut rng);
        let loss = train_step(&mut net, &mut adam, &x, &y);
        if !loss.is_finite() {
            return Err(DecoderError::TrainingFailure { step });
        }
        final_loss = loss;

        if step % cfg.eval_every == 0 || step == cfg.t_max {
            let acc = exact_match_accuracy(&net, g, &held_out);
            if acc > best_acc {
                best_acc = acc;
                best = net.clone();
            }
            if best_acc >= cfg.target_accuracy {
                break;
            }
        }
    }

    Ok((
        best,
        TrainReport {
            steps_run,
            best_accuracy: best_acc,
            final_loss,
            train_seconds: start.elapsed().as_secs_f64(),
        },
    ))
}

/// Fraction of samples whose repaired decode reproduces the input
/// configuration exactly.
pub fn exact_match_accuracy(
    net: &MlpDecoder,
    g: &EncoderMatrix,
    samples: &[crate::bits::OccupationString],
) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let n = net.n_electrons();
    let mut hits = 0usize;
    // batched forward pass over the whole set
    let x = Array2::from_shape_fn((samples.len(), net.q()), |(i, j)| {
        let c = g.encode(&samples[i]).expect("length-checked");
        if c.get(j) {
            1.0
        } else {
            -1.0
        }
    });
    let h = (x.dot(&net.w1.t()) + &net.b1).mapv(f64::tanh);
    let p = (h.dot(&net.w2.t()) + &net.b2).mapv(sigmoid);
    for (i, s) in samples.iter().enumerate() {
        let row = p.row(i).to_owned();
        if repair_to_weight(&row, n, net.m()) == *s {
            hits += 1;
        }
    }
    hits as f64 / samples.len() as f64
}

fn init_params(
    m: usize,
    q: usize,
    hidden: usize,
    n: usize,
    fingerprint: u64,
    rng: &mut ChaCha8Rng,
) -> MlpDecoder {
    let mut uniform = |rows: usize, cols: usize| {
        let bound = (6.0 / (rows + cols) as f64).sqrt();
        Array2::from_shape_fn((rows, cols), |_| rng.gen_range(-bound..bound))
    };
    MlpDecoder {
        w1: uniform(hidden, q),
        b1: Array1::zeros(hidden),
        w2: uniform(m, hidden),
        b2: Array1::zeros(m),
        n_electrons: n,
        fingerprint,
    }
}

fn sample_batch(
    g: &EncoderMatrix,
    n: usize,
    batch: usize,
    rate: f64,
    rng: &mut ChaCha8Rng,
) -> (Array2<f64>, Array2<f64>) {
    let (m, q) = (g.m(), g.q());
    let mut x = Array2::zeros((batch, q));
    let mut y = Array2::zeros((batch, m));
    for i in 0..batch {
        let s = sample_low_excitation(m, n, rate, rng);
        let c = g.encode(&s).expect("length-checked");
        for j in 0..q {
            x[(i, j)] = if c.get(j) { 1.0 } else { -1.0 };
        }
        for j in 0..m {
            y[(i, j)] = if s.get(j) { 1.0 } else { 0.0 };
        }
    }
    (x, y)
}

/// One forward/backward pass plus an Adam update; returns the mean
/// binary cross-entropy of the batch.
fn train_step(net: &mut MlpDecoder, adam: &mut Adam, x: &Array2<f64>, y: &Array2<f64>) -> f64 {
    let batch = x.nrows() as f64;
    let h = (x.dot(&net.w1.t()) + &net.b1).mapv(f64::tanh);
    let p = (h.dot(&net.w2.t()) + &net.b2).mapv(sigmoid);

    let eps = 1e-12;
    let loss = -(y * &p.mapv(|v| (v + eps).ln())
        + (1.0 - y) * &p.mapv(|v| (1.0 - v + eps).ln()))
    .mean()
    .unwrap();

    // d(BCE)/d(pre-sigmoid) = p - y
    let dz2 = (&p - y) / batch;
    let gw2 = dz2.t().dot(&h);
    let gb2 = dz2.sum_axis(Axis(0));
    let dh = dz2.dot(&net.w2);
    let dz1 = dh * (1.0 - &h * &h);
    let gw1 = dz1.t().dot(x);
    let gb1 = dz1.sum_axis(Axis(0));

    adam.update(net, &gw1, &gb1, &gw2, &gb2);
    loss
}

struct Adam {
    lr: f64,
    t: i32,
    m_w1: Array2<f64>,
    v_w1: Array2<f64>,
    m_b1: Array1<f64>,
    v_b1: Array1<f64>,
    m_w2: Array2<f64>,
    v_w2: Array2<f64>,
    m_b2: Array1<f64>,
    v_b2: Array1<f64>,
}

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

impl Adam {
    fn new(net: &MlpDecoder, lr: f64) -> Self {
        Self {
            lr,
            t: 0,
            m_w1: Array2::zeros(net.w1.raw_dim()),
            v_w1: Array2::zeros(net.w1.raw_dim()),
            m_b1: Array1::zeros(net.b1.raw_dim()),
            v_b1: Array1::zeros(net.b1.raw_dim()),
            m_w2: Array2::zeros(net.w2.raw_dim()),
            v_w2: Array2::zeros(net.w2.raw_dim()),
            m_b2: Array1::zeros(net.b2.raw_dim()),
            v_b2: Array1::zeros(net.b2.raw_dim()),
        }
    }

    fn update(
        &mut self,
        net: &mut MlpDecoder,
        gw1: &Array2<f64>,
        gb1: &Array1<f64>,
        gw2: &Array2<f64>,
        gb2: &Array1<f64>,
    ) {
        self.t += 1;
        let c1 = 1.0 - BETA1.powi(self.t);
        let c2 = 1.0 - BETA2.powi(self.t);
        let lr = self.lr;

        macro_rules! step {
            ($m:expr, $v:expr, $g:expr, $p:expr) => {
                $m.zip_mut_with($g, |m, &g| *m = BETA1 * *m + (1.0 - BETA1) * g);
                $v.zip_mut_with($g, |v, &g| *v = BETA2 * *v + (1.0 - BETA2) * g * g);
                ndarray::Zip::from(&mut $p).and(&$m).and(&$v).for_each(|p, &m, &v| {
                    *p -= lr * (m / c1) / ((v / c2).sqrt() + ADAM_EPS);
                });
            };
        }
        step!(self.m_w1, self.v_w1, gw1, net.w1);
        step!(self.m_b1, self.v_b1, gb1, net.b1);
        step!(self.m_w2, self.v_w2, gw2, net.w2);
        step!(self.m_b2, self.v_b2, gb2, net.b2);
    }
}
