//! Regenerates `fixtures/golden.csv`: full-CI reference energies for
//! every fixture sector the test suite pins.

use qsci_core::ci::{full_ci, write_golden, GoldenRow};
use qsci_core::IntegralTable;

fn main() {
    let root = format!("{}/../../fixtures", env!("CARGO_MANIFEST_DIR"));
    let sectors: &[(&str, usize)] = &[
        ("h2_sto3g_0.500", 2),
        ("h2_sto3g_0.735", 2),
        ("h2_sto3g_1.000", 2),
        ("h2_sto3g_1.500", 2),
        ("h2_631g_4.000", 2),
        ("lih_sto3g_2.500", 2),
        ("c2h4_sto3g_16_6", 6),
        ("c2_631g_16_4_r0.900", 4),
        ("c2_631g_16_4_r1.200", 4),
        ("c2_631g_16_4_r1.500", 4),
        ("c2_631g_16_4_r1.800", 4),
        ("c2_631g_16_4_r2.100", 4),
        ("c2_631g_16_4_r2.400", 4),
        ("c2_631g_16_4_r2.700", 4),
        ("c2_631g_16_4_r3.000", 4),
        ("c2_631g_20_4_r0.900", 4),
        ("c2_631g_20_4_r1.200", 4),
        ("c2_631g_20_4_r1.500", 4),
        ("c2_631g_20_4_r1.800", 4),
        ("c2_631g_20_4_r2.100", 4),
        ("c2_631g_20_4_r2.400", 4),
        ("c2_631g_20_4_r2.700", 4),
        ("c2_631g_20_4_r3.000", 4),
    ];
    let mut rows = Vec::new();
    for &(name, n) in sectors {
        let t = IntegralTable::load(format!("{root}/{name}.fcidump")).unwrap();
        let start = std::time::Instant::now();
        let r = full_ci(&t, n, None, 1e-9).unwrap();
        eprintln!(
            "{name} n={n}: {:.12} Ha (residual {:.2e}, {:.1}s)",
            r.energy,
            r.residual,
            start.elapsed().as_secs_f64()
        );
        rows.push(GoldenRow {
            fixture: name.into(),
            sector: format!("n={n}"),
            energy_ha: r.energy,
            residual: r.residual,
        });
    }
    write_golden(format!("{root}/golden.csv"), &rows).unwrap();
    eprintln!("wrote {} rows", rows.len());
}
