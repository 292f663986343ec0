//! Survivor-quality and protocol-strength probe for the strategy
//! comparison (not a shipped tool).

use std::collections::HashSet;

use qsci_core::chem::{chemical_ordering, IntegralTable};
use qsci_core::ci::{
    build_subspace_hamiltonian, enumerate_determinants, ground_state,
    hamiltonian_element,
};
use qsci_core::encoder::{generate_encoder, Strategy};
use qsci_core::pipeline::{
    lowest_diagonal_bias, mix_seed, strategy_comparison, StrategyConfig,
};

fn main() {
    let a: Vec<String> = std::env::args().collect();
    let rounds: usize = a.get(1).map(|s| s.parse().unwrap()).unwrap_or(10);
    let shots: usize = a.get(2).map(|s| s.parse().unwrap()).unwrap_or(500);
    let r_top: usize = a.get(3).map(|s| s.parse().unwrap()).unwrap_or(20);
    let n_seeds: usize = a.get(4).map(|s| s.parse().unwrap()).unwrap_or(20);

    let fixture = format!(
        "{}/../../fixtures/c2h4_sto3g_16_6.fcidump",
        env!("CARGO_MANIFEST_DIR")
    );
    let t = IntegralTable::load(&fixture).unwrap();
    let m = t.m_spin();
    let n = 6;
    let q = 12;
    let dets = enumerate_determinants(m, n, None).unwrap();
    let ordering = chemical_ordering(&t);
    let h_full = build_subspace_hamiltonian(&dets, &t);
    let full = ground_state(&h_full, 1e-8).unwrap();
    let psi_g = &full.vector;

    let mut walk: Vec<usize> = (0..dets.len()).collect();
    let diag: Vec<f64> =
        dets.iter().map(|d| hamiltonian_element(d, d, &t)).collect();
    walk.sort_by(|&x, &y| {
        diag[x]
            .partial_cmp(&diag[y])
            .unwrap()
            .then_with(|| dets[x].to_string().cmp(&dets[y].to_string()))
    });
    let top200: HashSet<usize> = walk[..200].iter().copied().collect();
    let bias = lowest_diagonal_bias(&t, n, None, 200).unwrap();

    // survivor quality per strategy, same seeds the comparison uses
    for (si, &strategy) in
        [Strategy::Random, Strategy::Chemical, Strategy::BiasedChemical]
            .iter()
            .enumerate()
    {
        let mut cover = Vec::new();
        let mut mass = Vec::new();
        let mut n_surv = Vec::new();
        for k in 0..n_seeds {
            let enc_seed = mix_seed(1, (si * n_seeds + k) as u64, 0x656e63);
            let g = generate_encoder(
                m,
                q,
                strategy,
                &ordering,
                if strategy == Strategy::BiasedChemical { Some(&bias) } else { None },
                enc_seed,
                1000,
            )
            .unwrap();
            let mut survivor: HashSet<usize> = Default::default();
            let mut taken: HashSet<u128> = Default::default();
            for &i in &walk {
                let c = g.encode(&dets[i]).unwrap();
                if taken.insert(c.mask()) {
                    survivor.insert(i);
                }
            }
            let covered =
                top200.iter().filter(|i| survivor.contains(i)).count();
            let captured: f64 =
                survivor.iter().map(|&i| psi_g[i] * psi_g[i]).sum();
            cover.push(covered);
            mass.push(captured);
            n_surv.push(survivor.len());
        }
        let mean = |v: &[usize]| v.iter().sum::<usize>() as f64 / v.len() as f64;
        let meanf = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        println!(
            "{strategy}: survivors {:.1} top200-cover {:.1} mass {:.6} (min {:.6})",
            mean(&n_surv),
            mean(&cover),
            meanf(&mass),
            mass.iter().cloned().fold(f64::INFINITY, f64::min),
        );
    }

    // survivor floors: ground energy over survivors within the top-800
    // ground-weight determinants, the asymptote sampling could reach
    let mut by_weight: Vec<usize> = (0..dets.len()).collect();
    by_weight.sort_by(|&x, &y| {
        (psi_g[y] * psi_g[y]).partial_cmp(&(psi_g[x] * psi_g[x])).unwrap()
    });
    let top_w: Vec<usize> = by_weight[..800].to_vec();
    for (si, &strategy) in
        [Strategy::Random, Strategy::Chemical, Strategy::BiasedChemical]
            .iter()
            .enumerate()
    {
        let mut floors = Vec::new();
        for k in 0..n_seeds {
            let enc_seed = mix_seed(1, (si * n_seeds + k) as u64, 0x656e63);
            let g = generate_encoder(
                m,
                q,
                strategy,
                &ordering,
                if strategy == Strategy::BiasedChemical { Some(&bias) } else { None },
                enc_seed,
                1000,
            )
            .unwrap();
            let mut survivor: HashSet<usize> = Default::default();
            let mut taken: HashSet<u128> = Default::default();
            for &i in &walk {
                let c = g.encode(&dets[i]).unwrap();
                if taken.insert(c.mask()) {
                    survivor.insert(i);
                }
            }
            let basis: Vec<_> = top_w
                .iter()
                .filter(|i| survivor.contains(i))
                .map(|&i| dets[i])
                .collect();
            let lost_w: f64 = top_w
                .iter()
                .filter(|i| !survivor.contains(i))
                .map(|&i| psi_g[i] * psi_g[i])
                .sum();
            if k < 3 {
                println!(
                    "  {strategy} k={k}: top800 kept {} lost-mass {:.6}",
                    basis.len(),
                    lost_w
                );
            }
            let h = build_subspace_hamiltonian(&basis, &t);
            let e = ground_state(&h, 1e-8).unwrap().energy;
            floors.push(e - full.energy);
        }
        let mut sorted = floors.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!(
            "{strategy} floor median {:.6} per-seed {:?}",
            0.5 * (sorted[n_seeds / 2 - 1] + sorted[n_seeds / 2]),
            floors.iter().map(|e| (e * 1e6).round() / 1e6).collect::<Vec<_>>()
        );
    }

    let cfg = StrategyConfig {
        fixture,
        n_electrons: n,
        q,
        target_fidelity: 0.9,
        n_seeds,
        rounds,
        shots,
        r_top,
        seed: 1,
        ..Default::default()
    };
    let start = std::time::Instant::now();
    let outs = strategy_comparison(
        &cfg,
        &[Strategy::Random, Strategy::Chemical, Strategy::BiasedChemical],
    )
    .unwrap();
    for o in &outs {
        println!(
            "{} median {:.6} errors {:?}",
            o.strategy,
            o.median_error(),
            o.errors.iter().map(|e| (e * 1e6).round() / 1e6).collect::<Vec<_>>()
        );
    }
    println!(
        "rounds={rounds} shots={shots} r_top={r_top} n_seeds={n_seeds} {:.1}s",
        start.elapsed().as_secs_f64()
    );
}
