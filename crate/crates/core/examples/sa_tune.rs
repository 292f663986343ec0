//! Parameter sweep helper for the search decoders (not a shipped tool).

use qsci_core::decoder::{benchmark_decoders, BenchMethod, SearchConfig, TrainConfig};

fn main() {
    let a: Vec<String> = std::env::args().collect();
    let method = match a[1].as_str() {
        "ga" => BenchMethod::Genetic,
        _ => BenchMethod::Annealing,
    };
    let cfg = SearchConfig {
        population: a[2].parse().unwrap(),
        generations: a[3].parse().unwrap(),
        restarts: a[4].parse().unwrap(),
        steps: match a[5].as_str() {
            "auto" => None,
            s => Some(s.parse().unwrap()),
        },
        t0: a[6].parse().unwrap(),
        cooling: a[7].parse().unwrap(),
        ..Default::default()
    };
    let shots: usize = a.get(8).map(|s| s.parse().unwrap()).unwrap_or(200);
    let rows = benchmark_decoders(
        &[(30, 23, 4), (70, 34, 4)],
        shots,
        &[method],
        &TrainConfig::default(),
        &cfg,
        42,
    )
    .unwrap();
    print!("{}", qsci_core::decoder::benchmark_csv(&rows));
}
