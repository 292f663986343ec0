//! Quick accuracy probe on the benchmark grid (not a shipped tool).

use qsci_core::decoder::{benchmark_decoders, BenchMethod, SearchConfig, TrainConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let shots: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(200);
    let methods: Vec<BenchMethod> = match args.get(2).map(String::as_str) {
        Some("nn") => vec![BenchMethod::Nn],
        Some("ga") => vec![BenchMethod::Genetic],
        Some("sa") => vec![BenchMethod::Annealing],
        _ => vec![BenchMethod::Genetic, BenchMethod::Annealing],
    };
    let instances: Vec<(usize, usize, usize)> = match args.get(3).map(String::as_str) {
        Some("small") => vec![(30, 23, 4)],
        Some("large") => vec![(70, 34, 4)],
        _ => vec![(30, 23, 4), (40, 26, 4), (50, 29, 4), (60, 31, 4), (70, 34, 4)],
    };
    let rows = benchmark_decoders(
        &instances,
        shots,
        &methods,
        &TrainConfig::default(),
        &SearchConfig::default(),
        42,
    )
    .unwrap();
    print!("{}", qsci_core::decoder::benchmark_csv(&rows));
}
