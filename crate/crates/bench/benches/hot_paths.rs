//! Criterion timings for the inner-loop costs: encoding, lookup-table
//! construction, network decode, matrix elements, subspace assembly,
//! and the statevector simulator.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsci_core::chem::SpinOrbitalOrdering;
use qsci_core::ci::{build_subspace_hamiltonian, enumerate_determinants, hamiltonian_element};
use qsci_core::decoder::{sample_low_excitation, train_nn_fed, LookupTable, TrainConfig};
use qsci_core::encoder::{generate_encoder, Strategy};
use qsci_core::sim::{hea, run_circuit};
use qsci_core::{IntegralTable, OccupationString};

fn fixture(name: &str) -> IntegralTable {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    IntegralTable::load(path).expect("fixture present in repo")
}

fn bench_encode(c: &mut Criterion) {
    let g = generate_encoder(70, 34, Strategy::Chemical,
                             &SpinOrbitalOrdering::identity(70), None, 42, 1)
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let strings: Vec<OccupationString> =
        (0..256).map(|_| sample_low_excitation(70, 4, 0.25, &mut rng)).collect();
    c.bench_function("encode_70_34_x256", |b| {
        b.iter(|| {
            for s in &strings {
                black_box(g.encode(black_box(s)).unwrap());
            }
        })
    });
}

fn bench_lookup_build(c: &mut Criterion) {
    let g = generate_encoder(30, 23, Strategy::Chemical,
                             &SpinOrbitalOrdering::identity(30), None, 42, 1)
        .unwrap();
    c.bench_function("lookup_build_30_23_4", |b| {
        b.iter(|| black_box(LookupTable::build(&g, 4).unwrap()))
    });
}

fn bench_nn_decode(c: &mut Criterion) {
    let g = generate_encoder(30, 23, Strategy::Chemical,
                             &SpinOrbitalOrdering::identity(30), None, 42, 1)
        .unwrap();
    // a few hundred steps: decode cost does not depend on accuracy
    let cfg = TrainConfig { t_max: 200, eval_samples: 256, ..Default::default() };
    let (net, _) = train_nn_fed(&g, 4, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let codewords: Vec<_> = (0..256)
        .map(|_| g.encode(&sample_low_excitation(30, 4, 0.25, &mut rng)).unwrap())
        .collect();
    c.bench_function("nn_decode_30_23_4_x256", |b| {
        b.iter(|| {
            for cw in &codewords {
                black_box(net.decode(black_box(cw)).unwrap());
            }
        })
    });
}

fn bench_matrix_elements(c: &mut Criterion) {
    let t = fixture("c2h4_sto3g_16_6.fcidump");
    let dets = enumerate_determinants(t.m_spin(), 6, None).unwrap();
    let pairs: Vec<_> = (0..256)
        .map(|i| (&dets[(i * 37) % dets.len()], &dets[(i * 113) % dets.len()]))
        .collect();
    c.bench_function("slater_condon_16so_x256", |b| {
        b.iter(|| {
            for &(d1, d2) in &pairs {
                black_box(hamiltonian_element(black_box(d1), black_box(d2), &t));
            }
        })
    });
}

fn bench_subspace_build(c: &mut Criterion) {
    let t = fixture("c2h4_sto3g_16_6.fcidump");
    let dets = enumerate_determinants(t.m_spin(), 6, None).unwrap();
    let subset: Vec<_> = dets.iter().step_by(dets.len() / 200).cloned().collect();
    c.bench_function("subspace_build_200dets", |b| {
        b.iter(|| black_box(build_subspace_hamiltonian(black_box(&subset), &t)))
    });
}

fn bench_statevector(c: &mut Criterion) {
    let spec = hea(12, 3);
    let params: Vec<f64> = (0..spec.n_params()).map(|i| 0.1 * i as f64).collect();
    c.bench_function("hea_12q_3l_statevector", |b| {
        b.iter(|| black_box(run_circuit(&spec, black_box(&params), None, 0).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_encode,
    bench_lookup_build,
    bench_nn_decode,
    bench_matrix_elements,
    bench_subspace_build,
    bench_statevector,
);
criterion_main!(benches);
