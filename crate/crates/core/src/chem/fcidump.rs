//! FCIDUMP text format.
//!
//! Header `&FCI NORB=n,NELEC=n,...` (namelist, terminated by `&END` or
//! `/`), then whitespace-separated `value i j k l` records with 1-based
//! indices. `i j 0 0` is one-body, `0 0 0 0` the core energy, anything
//! else a chemists'-ordering two-body entry `(ij|kl)`.

use thiserror::Error;

use super::IntegralTable;

#[derive(Debug, Error)]
pub enum ChemError {
    #[error("line {0}: malformed header: {1}")]
    Header(usize, String),
    #[error("line {0}: non-numeric field {1:?}")]
    BadNumber(usize, String),
    #[error("line {0}: malformed record: {1}")]
    BadRecord(usize, String),
    #[error("line {0}: orbital index {1} out of range (NORB = {2})")]
    IndexOutOfRange(usize, isize, usize),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("sidecar metadata: {0}")]
    Sidecar(String),
    #[error("non-finite value in integral table")]
    NonFinite,
}

pub fn parse_fcidump(text: &str) -> Result<IntegralTable, ChemError> {
    let mut lines = text.lines().enumerate();

    // namelist header, possibly spanning several lines
    let mut header = String::new();
    let mut header_end = 0;
    for (lineno, line) in &mut lines {
        header_end = lineno;
        let t = line.trim();
        header.push(' ');
        header.push_str(t);
        if t.ends_with("&END") || t.ends_with('/') || t.ends_with("$END") {
            break;
        }
    }
    if !header.trim_start().starts_with("&FCI") {
        return Err(ChemError::Header(1, "missing &FCI".into()));
    }
    let norb = header_field(&header, "NORB")
        .ok_or_else(|| ChemError::Header(1, "missing NORB".into()))?;
    let nelec = header_field(&header, "NELEC")
        .ok_or_else(|| ChemError::Header(1, "missing NELEC".into()))?;

    let mut table = IntegralTable::new(norb, nelec, 0.0);
    for (lineno, line) in text.lines().enumerate().skip(header_end + 1) {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(ChemError::BadRecord(lineno + 1, t.into()));
        }
        let v: f64 = fields[0]
            .parse()
            .map_err(|_| ChemError::BadNumber(lineno + 1, fields[0].into()))?;
        let mut idx = [0isize; 4];
        for (k, f) in fields[1..].iter().enumerate() {
            idx[k] = f
                .parse()
                .map_err(|_| ChemError::BadNumber(lineno + 1, (*f).into()))?;
        }
        for &i in &idx {
            if i < 0 || i as usize > norb {
                return Err(ChemError::IndexOutOfRange(lineno + 1, i, norb));
            }
        }
        let [i, j, k, l] = idx.map(|x| x as usize);
        match (i, j, k, l) {
            (0, 0, 0, 0) => table.core_energy = v,
            (_, _, 0, 0) if i > 0 && j > 0 => table.set_one_body(i - 1, j - 1, v),
            _ if i > 0 && j > 0 && k > 0 && l > 0 => {
                table.set_two_body(i - 1, j - 1, k - 1, l - 1, v)
            }
            _ => return Err(ChemError::BadRecord(lineno + 1, t.into())),
        }
    }
    if !table.core_energy.is_finite()
        || table.one_body.iter().any(|x| !x.is_finite())
        || table.two_body.iter().any(|x| !x.is_finite())
    {
        return Err(ChemError::NonFinite);
    }
    Ok(table)
}

fn header_field(header: &str, key: &str) -> Option<usize> {
    let pos = header.find(key)?;
    let rest = &header[pos + key.len()..];
    let rest = rest.trim_start().strip_prefix('=')?.trim_start();
    let end = rest
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(rest.len());
    rest[..end].parse().ok()
}

/// Writes the unique (8-fold symmetry reduced) nonzero entries with 16
/// significant digits, enough for a bit-exact numeric round-trip.
pub fn serialize_fcidump(t: &IntegralTable) -> String {
    let n = t.n_spatial();
    let mut out = format!(
        "&FCI NORB={},NELEC={},MS2=0,\n ORBSYM={}\n ISYM=1,\n&END\n",
        n,
        t.n_electrons(),
        "1,".repeat(n)
    );
    for i in 0..n {
        for j in 0..=i {
            for k in 0..=i {
                let lmax = if k == i { j } else { k };
                for l in 0..=lmax {
                    let v = t.two_body(i, j, k, l);
                    if v != 0.0 {
                        out.push_str(&format!(
                            "{:23.16E} {:4} {:4} {:4} {:4}\n",
                            v,
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1
                        ));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = t.one_body(i, j);
            if v != 0.0 {
                out.push_str(&format!(
                    "{:23.16E} {:4} {:4}    0    0\n",
                    v,
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    out.push_str(&format!("{:23.16E}    0    0    0    0\n", t.core_energy()));
    out
}
