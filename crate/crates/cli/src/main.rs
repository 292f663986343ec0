//! `qsci`: command-line driver for the compressed-subspace CI library.
//!
//! Exit codes: 0 success, 2 configuration error, 3 fixture error,
//! 4 convergence failure (soft; results are still written).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsci_core::chem::{chemical_ordering, ChemError};
use qsci_core::ci::full_ci;
use qsci_core::decoder::{
    benchmark_csv, benchmark_decoders, save_checkpoint, train_nn_fed, BenchMethod,
    SearchConfig, TrainConfig,
};
use qsci_core::encoder::{generate_encoder, parse_encoder, serialize_encoder, Strategy};
use qsci_core::pipeline::{
    make_noisy_trial_state, run_baseline_qsci, run_lossy_qsci, strategy_comparison,
    strategy_csv, write_run_outputs, ExperimentConfig, PipelineError, StrategyConfig,
};
use qsci_core::{IntegralTable, SpinOrbitalOrdering};

const EXIT_CONFIG: u8 = 2;
const EXIT_FIXTURE: u8 = 3;
const EXIT_NO_CONVERGENCE: u8 = 4;

#[derive(Parser)]
#[command(name = "qsci", about = "Compressed-subspace selected configuration interaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an FCIDUMP file and print a summary.
    Parse {
        fixture: PathBuf,
    },
    /// Full-CI reference energy for an (N, Sz) sector.
    Fci {
        fixture: PathBuf,
        #[arg(long)]
        n: usize,
        /// Spin sector as `n_alpha,n_beta`.
        #[arg(long, value_parser = parse_sz)]
        sz: Option<(usize, usize)>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Generate an encoder and print its text form.
    Encode {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "chemical")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// FCIDUMP used for the chemical bit ordering; identity order
        /// without it.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the neural decoder against a serialized encoder.
    TrainDecoder {
        /// Encoder text file (`qsci encode` output).
        #[arg(long)]
        encoder: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        t_max: Option<usize>,
        #[arg(long)]
        learning_rate: Option<f64>,
        #[arg(long)]
        batch_size: Option<usize>,
        #[arg(long)]
        hidden_multiplier: Option<usize>,
        /// Checkpoint output path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decoder benchmark over (m,q,n) instances; emits CSV.
    BenchDecoders {
        /// Instances as `m,q,n` triples.
        #[arg(long, value_parser = parse_instance, num_args = 1..,
              default_values = ["30,23,4", "40,27,4", "50,30,4", "60,32,4", "70,34,4"])]
        instance: Vec<(usize, usize, usize)>,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Methods to run (nn, ga, sa).
        #[arg(long, value_parser = parse_method, num_args = 1..,
              default_values = ["nn", "ga", "sa"])]
        method: Vec<BenchMethod>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the sample-decode-diagonalize loop from a TOML config.
    Qsci {
        config: PathBuf,
        /// Uncompressed reference run instead of the lossy pipeline.
        #[arg(long)]
        baseline: bool,
        /// Output directory for result.csv, candidates.txt, meta.txt.
        #[arg(long, default_value = "qsci-out")]
        out: PathBuf,
    },
    /// Encoder-strategy comparison; emits the sorted error curves.
    Strategies {
        fixture: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_sz)]
        sz: Option<(usize, usize)>,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0.9)]
        fidelity: f64,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        #[arg(long, default_value_t = 500)]
        shots: usize,
        #[arg(long, default_value_t = 20)]
        r_top: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mix a sector ground state down to a target fidelity and report
    /// the achieved overlap.
    TrialState {
        fixture: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_sz)]
        sz: Option<(usize, usize)>,
        #[arg(long)]
        fidelity: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_sz(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected n_alpha,n_beta")?;
    Ok((
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn parse_instance(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected m,q,n".into());
    }
    let f = |i: usize| parts[i].trim().parse::<usize>().map_err(|e| format!("{e}"));
    Ok((f(0)?, f(1)?, f(2)?))
}

fn parse_method(s: &str) -> Result<BenchMethod, String> {
    match s {
        "nn" => Ok(BenchMethod::Nn),
        "ga" => Ok(BenchMethod::Genetic),
        "sa" => Ok(BenchMethod::Annealing),
        other => Err(format!("unknown method {other:?} (expected nn, ga, sa)")),
    }
}

enum CliError {
    Config(String),
    Fixture(String),
    NoConvergence,
}

impl From<ChemError> for CliError {
    fn from(e: ChemError) -> Self {
        CliError::Fixture(e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Chem(c) => CliError::Fixture(c.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(CliError::Fixture(msg)) => {
            eprintln!("fixture error: {msg}");
            ExitCode::from(EXIT_FIXTURE)
        }
        Err(CliError::NoConvergence) => {
            eprintln!("warning: run did not converge; results written");
            ExitCode::from(EXIT_NO_CONVERGENCE)
        }
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Parse { fixture } => {
            let t = IntegralTable::load(&fixture)?;
            println!("fixture {}", fixture.display());
            println!("spatial_orbitals {}", t.n_spatial());
            println!("spin_orbitals {}", t.m_spin());
            println!("electrons {}", t.n_electrons());
            println!("core_energy_ha {:.12}", t.core_energy());
            Ok(())
        }
        Command::Fci { fixture, n, sz, tol } => {
            let t = IntegralTable::load(&fixture)?;
            let r = full_ci(&t, n, sz, tol)
                .map_err(|e| CliError::Config(e.to_string()))?;
            println!("energy_ha {:.12}", r.energy);
            println!("residual {:.3e}", r.residual);
            Ok(())
        }
        Command::Encode { m, q, strategy, seed, fixture, out } => {
            let strategy: Strategy =
                strategy.parse().map_err(CliError::Config)?;
            let ordering = match &fixture {
                Some(p) => chemical_ordering(&IntegralTable::load(p)?),
                None => SpinOrbitalOrdering::identity(m),
            };
            if strategy == Strategy::BiasedChemical {
                return Err(CliError::Config(
                    "biased-chemical generation needs a bias set; use the qsci \
                     subcommand, which derives one from the fixture"
                        .into(),
                ));
            }
            let g = generate_encoder(m, q, strategy, &ordering, None, seed, 1)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let text = serialize_encoder(&g);
            match out {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::TrainDecoder {
            encoder,
            n,
            seed,
            t_max,
            learning_rate,
            batch_size,
            hidden_multiplier,
            out,
        } => {
            let text = std::fs::read_to_string(&encoder)
                .map_err(|e| CliError::Config(format!("{}: {e}", encoder.display())))?;
            let g = parse_encoder(&text).map_err(|e| CliError::Config(e.to_string()))?;
            let d = TrainConfig::default();
            let cfg = TrainConfig {
                seed,
                t_max: t_max.unwrap_or(d.t_max),
                learning_rate: learning_rate.unwrap_or(d.learning_rate),
                batch_size: batch_size.unwrap_or(d.batch_size),
                hidden_multiplier: hidden_multiplier.unwrap_or(d.hidden_multiplier),
                ..d
            };
            let (net, report) =
                train_nn_fed(&g, n, &cfg).map_err(|e| CliError::Config(e.to_string()))?;
            save_checkpoint(&net, &out).map_err(|e| CliError::Config(e.to_string()))?;
            println!("steps {}", report.steps_run);
            println!("accuracy {:.4}", report.best_accuracy);
            println!("train_s {:.3}", report.train_seconds);
            println!("checkpoint {}", out.display());
            Ok(())
        }
        Command::BenchDecoders { instance, shots, seed, method, out } => {
            let rows = benchmark_decoders(
                &instance,
                shots,
                &method,
                &TrainConfig::default(),
                &SearchConfig::default(),
                seed,
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            let csv = benchmark_csv(&rows);
            match out {
                Some(p) => std::fs::write(&p, csv)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Qsci { config, baseline, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let result = if baseline {
                run_baseline_qsci(&cfg)?
            } else {
                run_lossy_qsci(&cfg)?
            };
            write_run_outputs(&out, &cfg, &result)?;
            println!("e_best_ha {:.12}", result.e_best);
            if let Some(fci) = result.reference_fci {
                println!("reference_fci_ha {fci:.12}");
            }
            println!("n_configs {}", result.s_r.len());
            println!("outputs {}", out.display());
            if !result.e_best.is_finite() {
                return Err(CliError::NoConvergence);
            }
            Ok(())
        }
        Command::Strategies {
            fixture,
            n,
            sz,
            q,
            fidelity,
            seeds,
            rounds,
            shots,
            r_top,
            seed,
            out,
        } => {
            let cfg = StrategyConfig {
                fixture: fixture.display().to_string(),
                n_electrons: n,
                sz,
                q,
                target_fidelity: fidelity,
                n_seeds: seeds,
                rounds,
                shots,
                r_top,
                seed,
                ..Default::default()
            };
            let outcomes = strategy_comparison(
                &cfg,
                &[Strategy::Random, Strategy::Chemical, Strategy::BiasedChemical],
            )?;
            let csv = strategy_csv(&outcomes);
            match out {
                Some(p) => std::fs::write(&p, csv)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                None => print!("{csv}"),
            }
            for o in &outcomes {
                println!("median {} {:.6}", o.strategy, o.median_error());
            }
            Ok(())
        }
        Command::TrialState { fixture, n, sz, fidelity, seed } => {
            let t = IntegralTable::load(&fixture)?;
            let full = full_ci(&t, n, sz, 1e-9)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let psi = make_noisy_trial_state(&full.vector, fidelity, seed)?;
            let overlap: f64 = psi.iter().zip(&full.vector).map(|(a, g)| a * g).sum();
            println!("target_fidelity {fidelity}");
            println!("achieved_fidelity {:.6}", overlap * overlap);
            println!("support_dim {}", psi.len());
            Ok(())
        }
    }
}
