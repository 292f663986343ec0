//! Hyperparameter probe for the decoder network (not a shipped tool).

use qsci_core::chem::SpinOrbitalOrdering;
use qsci_core::decoder::{train_nn_fed, TrainConfig};
use qsci_core::encoder::{generate_encoder, Strategy};

fn main() {
    let a: Vec<String> = std::env::args().collect();
    let m: usize = a[1].parse().unwrap();
    let q: usize = a[2].parse().unwrap();
    let n: usize = a[3].parse().unwrap();
    let cfg = TrainConfig {
        hidden_multiplier: a[4].parse().unwrap(),
        t_max: a[5].parse().unwrap(),
        learning_rate: a[6].parse().unwrap(),
        batch_size: a.get(7).map(|s| s.parse().unwrap()).unwrap_or(256),
        seed: a.get(8).map(|s| s.parse().unwrap()).unwrap_or(0),
        excitation_rate: a.get(9).map(|s| s.parse().unwrap()).unwrap_or(0.25),
        ..Default::default()
    };
    let g = generate_encoder(m, q, Strategy::Chemical,
                             &SpinOrbitalOrdering::identity(m), None, 42, 1)
        .unwrap();
    let (_, report) = train_nn_fed(&g, n, &cfg).unwrap();
    println!(
        "m={m} q={q} n={n} mult={} tmax={} lr={} batch={} rate={}: acc={:.4} steps={} {:.1}s",
        cfg.hidden_multiplier, cfg.t_max, cfg.learning_rate, cfg.batch_size,
        cfg.excitation_rate, report.best_accuracy, report.steps_run, report.train_seconds
    );
}
