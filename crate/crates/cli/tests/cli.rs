//! End-to-end CLI checks: exit codes, output files, stdout shapes.

use std::process::{Command, Output};

fn qsci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn parse_reports_fixture_summary() {
    let out = qsci(&["parse", &fixture("h2_sto3g_0.735.fcidump")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("spin_orbitals 4"));
    assert!(text.contains("electrons 2"));
}

#[test]
fn missing_fixture_is_exit_3() {
    let out = qsci(&["parse", "no_such_file.fcidump"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn fci_matches_known_energy() {
    let out = qsci(&["fci", &fixture("h2_sto3g_0.735.fcidump"), "--n", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let energy: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("energy_ha "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((energy - -1.137306).abs() < 1e-5, "energy {energy}");
}

#[test]
fn encode_emits_header_and_bad_strategy_is_exit_2() {
    let out = qsci(&["encode", "--m", "12", "--q", "8", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("RLE 12 8 chemical 5"), "got {text:?}");
    assert_eq!(text.lines().count(), 1 + 8);

    let bad = qsci(&["encode", "--m", "12", "--q", "8", "--strategy", "bogus"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn train_decoder_writes_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let enc = dir.path().join("enc.txt");
    let ckpt = dir.path().join("net.ckpt");
    let out = qsci(&[
        "encode", "--m", "10", "--q", "8", "--out", enc.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = qsci(&[
        "train-decoder",
        "--encoder", enc.to_str().unwrap(),
        "--n", "2",
        "--t-max", "300",
        "--out", ckpt.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(ckpt.is_file());
    assert!(stdout(&out).contains("accuracy "));
}

#[test]
fn bench_decoders_csv_shape() {
    let out = qsci(&[
        "bench-decoders",
        "--instance", "8,6,2",
        "--shots", "5",
        "--method", "ga",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,q,n,method,train_s,decode_s,accuracy"));
    assert!(lines.next().unwrap().starts_with("8,6,2,ga,"));
}

#[test]
fn qsci_run_writes_outputs_and_bad_config_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.toml");
    let out_dir = dir.path().join("out");
    std::fs::write(
        &cfg_path,
        format!(
            r#"
fixture = "{}"
n_electrons = 2

[encoder]
q = 3
strategy = "chemical"
seed = 7

[run]
rounds = 4
shots = 100
r_top = 4
seed = 1

[trial]
mode = "exact-noise"
fidelity = 0.95
"#,
            fixture("h2_sto3g_0.735.fcidump")
        ),
    )
    .unwrap();
    let out = qsci(&[
        "qsci", cfg_path.to_str().unwrap(), "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["result.csv", "candidates.txt", "meta.txt"] {
        assert!(out_dir.join(f).is_file(), "missing {f}");
    }
    let csv = std::fs::read_to_string(out_dir.join("result.csv")).unwrap();
    assert!(csv.starts_with("round,e_best,n_configs,accepted\n"));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "rounds = 0").unwrap();
    let out = qsci(&["qsci", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn qsci_missing_fixture_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.toml");
    std::fs::write(
        &cfg_path,
        r#"
fixture = "definitely_absent.fcidump"
n_electrons = 2

[encoder]
q = 3
strategy = "chemical"

[run]
rounds = 2
shots = 50
r_top = 4

[trial]
mode = "exact-noise"
fidelity = 0.95
"#,
    )
    .unwrap();
    let out = qsci(&["qsci", cfg_path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn trial_state_reports_achieved_fidelity() {
    let out = qsci(&[
        "trial-state",
        &fixture("h2_sto3g_0.735.fcidump"),
        "--n", "2",
        "--fidelity", "0.9",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let achieved: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("achieved_fidelity "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((achieved - 0.9).abs() < 0.02, "achieved {achieved}");
}

#[test]
fn strategies_emits_sorted_error_csv() {
    let out = qsci(&[
        "strategies",
        &fixture("h2_631g_4.000.fcidump"),
        "--n", "2",
        "--q", "6",
        "--seeds", "3",
        "--rounds", "3",
        "--shots", "100",
        "--r-top", "6",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("strategy,rank,delta_e_ha"));
    assert!(text.contains("median random "));
    assert!(text.contains("median biased-chemical "));
}
