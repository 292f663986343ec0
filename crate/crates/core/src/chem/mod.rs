//! Molecular integral ingestion.
//!
//! FCIDUMP files carry spatial-orbital integrals; spin is expanded on
//! the fly by the CI engine (restricted orbitals). All energies are in
//! Hartree, bond lengths in Angstrom.

mod fcidump;
mod ordering;

pub use fcidump::{parse_fcidump, serialize_fcidump, ChemError};
pub use ordering::{chemical_ordering, SpinOrbitalOrdering};

use std::path::Path;

use serde::Deserialize;

/// One- and two-electron integrals over spatial orbitals, with the
/// two-body tensor stored with full 8-fold permutation symmetry in
/// chemists' ordering `(pq|rs)`.
#[derive(Clone, Debug)]
pub struct IntegralTable {
    n_spatial: usize,
    n_electrons: usize,
    core_energy: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
    orbital_energies: Option<Vec<f64>>,
    hf_total_energy: Option<f64>,
}

impl IntegralTable {
    pub fn new(n_spatial: usize, n_electrons: usize, core_energy: f64) -> Self {
        Self {
            n_spatial,
            n_electrons,
            core_energy,
            one_body: vec![0.0; n_spatial * n_spatial],
            two_body: vec![0.0; n_spatial.pow(4)],
            orbital_energies: None,
            hf_total_energy: None,
        }
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    /// Spin-orbital count, `2 * n_spatial`.
    pub fn m_spin(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn core_energy(&self) -> f64 {
        self.core_energy
    }

    pub fn one_body(&self, p: usize, q: usize) -> f64 {
        self.one_body[p * self.n_spatial + q]
    }

    /// Chemists' notation `(pq|rs)`.
    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_spatial;
        self.two_body[((p * n + q) * n + r) * n + s]
    }

    /// Stores `h_pq` together with its transpose image.
    pub fn set_one_body(&mut self, p: usize, q: usize, v: f64) {
        let n = self.n_spatial;
        self.one_body[p * n + q] = v;
        self.one_body[q * n + p] = v;
    }

    /// Stores `(pq|rs)` in all 8 permutation images.
    pub fn set_two_body(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let n = self.n_spatial;
        for (a, b, c, d) in [
            (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
            (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
        ] {
            self.two_body[((a * n + b) * n + c) * n + d] = v;
        }
    }

    pub fn orbital_energies(&self) -> Option<&[f64]> {
        self.orbital_energies.as_deref()
    }

    pub fn set_orbital_energies(&mut self, e: Vec<f64>) {
        assert_eq!(e.len(), self.n_spatial);
        self.orbital_energies = Some(e);
    }

    /// Orbital energies if present, otherwise `diag(h_pq)` as a fallback
    /// estimate.
    pub fn orbital_energy_estimates(&self) -> Vec<f64> {
        match &self.orbital_energies {
            Some(e) => e.clone(),
            None => (0..self.n_spatial).map(|p| self.one_body(p, p)).collect(),
        }
    }

    /// Loads `<path>` as FCIDUMP text, plus orbital energies from a
    /// `<stem>.meta.toml` sidecar when one sits next to it.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ChemError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ChemError::Io(path.display().to_string(), e.to_string()))?;
        let mut table = parse_fcidump(&text)?;
        let sidecar = path.with_extension("meta.toml");
        if sidecar.exists() {
            let text = std::fs::read_to_string(&sidecar)
                .map_err(|e| ChemError::Io(sidecar.display().to_string(), e.to_string()))?;
            let meta: SidecarMeta = toml::from_str(&text)
                .map_err(|e| ChemError::Sidecar(e.to_string()))?;
            if let Some(e) = meta.orbital_energies {
                if e.len() != table.n_spatial {
                    return Err(ChemError::Sidecar(format!(
                        "sidecar lists {} orbital energies for {} orbitals",
                        e.len(),
                        table.n_spatial
                    )));
                }
                table.orbital_energies = Some(e);
            }
            table.hf_total_energy = meta.hf_total_energy;
        }
        Ok(table)
    }
}

// Optional HF reference carried by the sidecar; informational only.
#[derive(Debug, Deserialize)]
struct SidecarMeta {
    orbital_energies: Option<Vec<f64>>,
    hf_total_energy: Option<f64>,
}

impl IntegralTable {
    pub fn hf_total_energy(&self) -> Option<f64> {
        self.hf_total_energy
    }
}
