//! Per-run output directory: result.csv, candidates.txt, meta.txt.

use std::fmt::Write as _;
use std::path::Path;

use super::config::{DecoderPlan, ExperimentConfig, TrialStatePlan};
use super::run::QsciResult;
use super::PipelineError;

/// Round table: `round,e_best,n_configs,accepted`. Energies in Hartree.
pub fn result_csv(result: &QsciResult) -> String {
    let mut out = String::from("round,e_best,n_configs,accepted\n");
    let mut e_best = f64::INFINITY;
    for r in &result.rounds {
        if r.accepted {
            e_best = r.energy.unwrap();
        }
        let shown = if e_best.is_finite() { format!("{e_best:.12}") } else { String::new() };
        let _ = writeln!(out, "{},{},{},{}", r.round, shown, r.n_configs, r.accepted);
    }
    out
}

fn candidates_txt(result: &QsciResult) -> String {
    let mut out = String::new();
    for d in result.s_r.configs() {
        let _ = writeln!(out, "{d}");
    }
    out
}

fn meta_txt(cfg: &ExperimentConfig, result: &QsciResult) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "version {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(w, "fixture {}", cfg.fixture);
    let _ = writeln!(w, "n_electrons {}", cfg.n_electrons);
    match cfg.sz {
        Some((a, b)) => { let _ = writeln!(w, "sz {a} {b}"); }
        None => { let _ = writeln!(w, "sz none"); }
    }
    let _ = writeln!(w, "encoder_q {}", cfg.encoder.q);
    let _ = writeln!(w, "encoder_strategy {}", cfg.encoder.strategy);
    let _ = writeln!(w, "encoder_base_seed {}", cfg.encoder.seed);
    let _ = writeln!(w, "encoder_bias_lowest {}", cfg.encoder.bias_lowest);
    let _ = writeln!(w, "run_seed {}", cfg.seed);
    let _ = writeln!(w, "rounds {}", cfg.rounds);
    let _ = writeln!(w, "shots {}", cfg.shots);
    let _ = writeln!(w, "r_top {}", cfg.r_top);
    let _ = writeln!(w, "tolerance {:e}", cfg.tolerance);
    let _ = writeln!(w, "accuracy_floor {}", cfg.accuracy_floor);
    let _ = writeln!(w, "max_rejects {}", cfg.max_rejects);
    match &cfg.trial {
        TrialStatePlan::ExactPlusNoise { target_fidelity } => {
            let _ = writeln!(w, "trial exact-noise fidelity={target_fidelity}");
        }
        TrialStatePlan::Vqe { layers, max_iters, trajectories } => {
            let _ = writeln!(
                w,
                "trial vqe layers={layers} max_iters={max_iters} trajectories={trajectories}"
            );
        }
    }
    match &cfg.decoder {
        DecoderPlan::Exact => { let _ = writeln!(w, "decoder exact"); }
        DecoderPlan::Nn(t) => {
            let _ = writeln!(
                w,
                "decoder nn seed={} hidden_multiplier={} learning_rate={} batch_size={} \
                 t_max={} target_accuracy={}",
                t.seed, t.hidden_multiplier, t.learning_rate, t.batch_size, t.t_max,
                t.target_accuracy
            );
        }
    }
    match &cfg.noise {
        Some(n) => { let _ = writeln!(w, "noise {}", crate::sim::serialize_noise_model(n).trim()); }
        None => { let _ = writeln!(w, "noise none"); }
    }
    let _ = writeln!(w, "qubits {}", result.q);
    let _ = writeln!(w, "e_best_ha {:.12}", result.e_best);
    match result.reference_fci {
        Some(e) => { let _ = writeln!(w, "reference_fci_ha {e:.12}"); }
        None => { let _ = writeln!(w, "reference_fci_ha none"); }
    }
    let _ = writeln!(w, "rounds_run {}", result.rounds.len());
    for r in &result.rounds {
        let _ = writeln!(
            w,
            "round {} encoder_seed={} digest={:016x} skipped={}",
            r.round, r.encoder_seed, r.counts_digest, r.skipped
        );
    }
    out
}

/// Writes result.csv, candidates.txt, and meta.txt into `dir`,
/// creating it as needed.
pub fn write_run_outputs(
    dir: impl AsRef<Path>,
    cfg: &ExperimentConfig,
    result: &QsciResult,
) -> Result<(), PipelineError> {
    let dir = dir.as_ref();
    let io = |e: std::io::Error| PipelineError::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join("result.csv"), result_csv(result)).map_err(io)?;
    std::fs::write(dir.join("candidates.txt"), candidates_txt(result)).map_err(io)?;
    std::fs::write(dir.join("meta.txt"), meta_txt(cfg, result)).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::run::RoundRecord;
    use crate::pipeline::CandidateSet;

    fn fake_result() -> QsciResult {
        let mut s_r = CandidateSet::new();
        s_r.merge(&["1100".parse().unwrap(), "0011".parse().unwrap()]);
        QsciResult {
            e_best: -1.125,
            s_r,
            rounds: vec![
                RoundRecord {
                    round: 0,
                    encoder_seed: 7,
                    decoder_accuracy: Some(1.0),
                    trial_energy: Some(-1.0),
                    counts_digest: 0xabcd,
                    n_new: 2,
                    n_configs: 2,
                    energy: Some(-1.125),
                    accepted: true,
                    skipped: false,
                },
                RoundRecord {
                    round: 1,
                    encoder_seed: 8,
                    decoder_accuracy: Some(1.0),
                    trial_energy: Some(-1.0),
                    counts_digest: 0xabce,
                    n_new: 0,
                    n_configs: 2,
                    energy: None,
                    accepted: false,
                    skipped: false,
                },
            ],
            reference_fci: Some(-1.13),
            q: 3,
            shots_per_round: 100,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = result_csv(&fake_result());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "round,e_best,n_configs,accepted");
        assert_eq!(lines[1], "0,-1.125000000000,2,true");
        assert_eq!(lines[2], "1,-1.125000000000,2,false");
    }

    #[test]
    fn writes_all_three_files() {
        let dir = std::env::temp_dir().join(format!("qsci-out-{}", std::process::id()));
        let cfg = crate::pipeline::config::tests_sample_config();
        write_run_outputs(&dir, &cfg, &fake_result()).unwrap();
        let cands = std::fs::read_to_string(dir.join("candidates.txt")).unwrap();
        assert_eq!(cands, "1100\n0011\n");
        let meta = std::fs::read_to_string(dir.join("meta.txt")).unwrap();
        assert!(meta.contains("e_best_ha -1.125000000000"));
        assert!(meta.contains("encoder_strategy chemical"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
