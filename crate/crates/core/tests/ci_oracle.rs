//! Cross-checks of the Slater-Condon engine against the explicit
//! fermionic-operator matrix and against dense diagonalization.

use qsci_core::chem::IntegralTable;
use qsci_core::ci::{
    build_subspace_hamiltonian, enumerate_determinants, full_ci, oracle,
};

fn fixture(name: &str) -> IntegralTable {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    IntegralTable::load(path).unwrap()
}

#[test]
fn h2_sto3g_matrix_matches_explicit_operator() {
    let t = fixture("h2_sto3g_0.735.fcidump");
    let dets = enumerate_determinants(t.m_spin(), 2, None).unwrap();
    assert_eq!(dets.len(), 6);
    let h = build_subspace_hamiltonian(&dets, &t);
    let reference = oracle::explicit_matrix(&dets, &t);
    for i in 0..dets.len() {
        for j in 0..dets.len() {
            assert!(
                (h.element(i, j) - reference[(i, j)]).abs() < 1e-10,
                "({i},{j}): {} vs {} [{} | {}]",
                h.element(i, j),
                reference[(i, j)],
                dets[i],
                dets[j]
            );
        }
    }
}

#[test]
fn h2_631g_matrix_matches_explicit_operator() {
    let t = fixture("h2_631g_4.000.fcidump");
    let dets = enumerate_determinants(t.m_spin(), 2, None).unwrap();
    assert_eq!(dets.len(), 28);
    let h = build_subspace_hamiltonian(&dets, &t);
    let reference = oracle::explicit_matrix(&dets, &t);
    for i in 0..dets.len() {
        for j in 0..dets.len() {
            assert!(
                (h.element(i, j) - reference[(i, j)]).abs() < 1e-10,
                "({i},{j}): {} vs {}",
                h.element(i, j),
                reference[(i, j)]
            );
        }
    }
}

#[test]
fn lih_matrix_matches_explicit_operator() {
    let t = fixture("lih_sto3g_2.500.fcidump");
    let dets = enumerate_determinants(t.m_spin(), 2, None).unwrap();
    assert_eq!(dets.len(), 45);
    let h = build_subspace_hamiltonian(&dets, &t);
    let reference = oracle::explicit_matrix(&dets, &t);
    for i in 0..dets.len() {
        for j in 0..dets.len() {
            assert!(
                (h.element(i, j) - reference[(i, j)]).abs() < 1e-10,
                "({i},{j}): {} vs {}",
                h.element(i, j),
                reference[(i, j)]
            );
        }
    }
}

#[test]
fn h2_sto3g_full_ci_energy() {
    // literature value for H2/STO-3G at 0.735 A
    let t = fixture("h2_sto3g_0.735.fcidump");
    let r = full_ci(&t, 2, None, 1e-9).unwrap();
    assert!(
        (r.energy - (-1.137306035753)).abs() < 1e-6,
        "got {}",
        r.energy
    );
}

#[test]
fn hf_determinant_diagonal_matches_scf_reference() {
    // diagonal element on the Hartree-Fock determinant equals the SCF
    // total energy recorded in the sidecar
    let t = fixture("h2_sto3g_0.735.fcidump");
    let hf: qsci_core::Determinant = "1100".parse::<qsci_core::OccupationString>()
        .unwrap();
    let e = qsci_core::ci::hamiltonian_element(&hf, &hf, &t);
    let reference = t.hf_total_energy().unwrap();
    assert!((e - reference).abs() < 1e-8, "{e} vs {reference}");
}
