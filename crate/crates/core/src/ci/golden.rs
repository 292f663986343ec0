//! Golden-file CSV for reference energies:
//! `fixture,sector,energy_ha,residual` with 12 decimal digits.

use std::path::Path;

use super::CiError;

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenRow {
    pub fixture: String,
    pub sector: String,
    pub energy_ha: f64,
    pub residual: f64,
}

pub fn write_golden(path: impl AsRef<Path>, rows: &[GoldenRow]) -> Result<(), CiError> {
    let mut out = String::from("fixture,sector,energy_ha,residual\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.12},{:.12}\n",
            r.fixture, r.sector, r.energy_ha, r.residual
        ));
    }
    std::fs::write(path.as_ref(), out).map_err(|e| CiError::Golden(e.to_string()))
}

pub fn read_golden(path: impl AsRef<Path>) -> Result<Vec<GoldenRow>, CiError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| CiError::Golden(e.to_string()))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(CiError::Golden(format!("line {}: {line:?}", i + 1)));
        }
        rows.push(GoldenRow {
            fixture: f[0].into(),
            sector: f[1].into(),
            energy_ha: f[2]
                .parse()
                .map_err(|_| CiError::Golden(format!("line {}: bad energy", i + 1)))?,
            residual: f[3]
                .parse()
                .map_err(|_| CiError::Golden(format!("line {}: bad residual", i + 1)))?,
        });
    }
    Ok(rows)
}
