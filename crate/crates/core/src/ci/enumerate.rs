//! Determinant enumeration and sampling.

use rand::Rng;

use crate::bits::OccupationString;
use crate::encoder::binomial;

use super::{CiError, Determinant, ENUMERATION_GUARD};

/// Optional fixed spin sector `(n_alpha, n_beta)`.
pub type SzConstraint = (usize, usize);

/// All weight-n strings over `m_spin` bits, optionally restricted to a
/// spin sector, in lexicographic order of their textual bitstring
/// (bit 0 is the leftmost character).
pub fn enumerate_determinants(
    m_spin: usize,
    n: usize,
    sz: Option<SzConstraint>,
) -> Result<Vec<Determinant>, CiError> {
    if n > m_spin {
        return Err(CiError::BadSector { m: m_spin, n });
    }
    if let Some((na, nb)) = sz {
        if na + nb != n {
            return Err(CiError::BadSpinConstraint { n_alpha: na, n_beta: nb, n });
        }
    }
    let count = binomial(m_spin, n);
    if count > ENUMERATION_GUARD {
        return Err(CiError::GuardExceeded(count, ENUMERATION_GUARD));
    }

    let mut out = Vec::new();
    let mut positions: Vec<usize> = (0..n).collect();
    if n == 0 {
        out.push(OccupationString::zero(m_spin));
    } else {
        loop {
            let d = OccupationString::from_occupied(&positions, m_spin);
            if sz_ok(&d, sz) {
                out.push(d);
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort_by_key(|d| textual_key(d));
                    return Ok(out);
                }
                i -= 1;
                if positions[i] != i + m_spin - n {
                    break;
                }
            }
            positions[i] += 1;
            for j in i + 1..n {
                positions[j] = positions[j - 1] + 1;
            }
        }
    }
    out.sort_by_key(|d| textual_key(d));
    Ok(out)
}

fn sz_ok(d: &Determinant, sz: Option<SzConstraint>) -> bool {
    match sz {
        None => true,
        Some((na, nb)) => {
            let alpha = d.occupied().filter(|p| p % 2 == 0).count();
            alpha == na && d.weight() as usize - alpha == nb
        }
    }
}

/// Sort key realizing textual lexicographic order: bit 0 most
/// significant.
pub(crate) fn textual_key(d: &Determinant) -> u128 {
    d.mask().reverse_bits() >> (128 - d.len())
}

/// A uniformly random weight-n string (partial Fisher-Yates over the
/// bit positions).
pub fn sample_determinant(m_spin: usize, n: usize, rng: &mut impl Rng) -> Determinant {
    debug_assert!(n <= m_spin);
    let mut pos: Vec<usize> = (0..m_spin).collect();
    for i in 0..n {
        let j = rng.gen_range(i..m_spin);
        pos.swap(i, j);
    }
    OccupationString::from_occupied(&pos[..n], m_spin)
}
