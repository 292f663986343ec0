//! Slater-Condon matrix elements.
//!
//! Phase convention: a determinant is the product of creation operators
//! applied in increasing bit-position order to the vacuum. The explicit
//! operator oracle shares the convention; the cross-check tests pin it.

use crate::chem::IntegralTable;

use super::Determinant;

#[inline]
fn spatial(p: usize) -> usize {
    p / 2
}

#[inline]
fn spin(p: usize) -> usize {
    p % 2
}

/// Parity (+1/-1) of the number of occupied positions strictly below
/// `p`.
#[inline]
fn parity_below(mask: u128, p: usize) -> f64 {
    let below = (mask & ((1u128 << p) - 1)).count_ones();
    if below % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `<d1|H|d2>` including the fermionic sign; the core energy enters on
/// the diagonal only.
pub fn hamiltonian_element(d1: &Determinant, d2: &Determinant, t: &IntegralTable) -> f64 {
    debug_assert_eq!(d1.len(), d2.len());
    debug_assert_eq!(d1.weight(), d2.weight());
    debug_assert_eq!(d1.len(), t.m_spin());

    let diff = d1.mask() ^ d2.mask();
    match diff.count_ones() {
        0 => diagonal(d1, t),
        2 => single(d1, d2, diff, t),
        4 => double(d1, d2, diff, t),
        _ => 0.0,
    }
}

fn diagonal(d: &Determinant, t: &IntegralTable) -> f64 {
    let occ: Vec<usize> = d.occupied().collect();
    let mut e = t.core_energy();
    for &i in &occ {
        e += t.one_body(spatial(i), spatial(i));
    }
    for (a, &i) in occ.iter().enumerate() {
        for &j in &occ[a + 1..] {
            let (p, q) = (spatial(i), spatial(j));
            e += t.two_body(p, p, q, q);
            if spin(i) == spin(j) {
                e -= t.two_body(p, q, q, p);
            }
        }
    }
    e
}

fn single(d1: &Determinant, d2: &Determinant, diff: u128, t: &IntegralTable) -> f64 {
    let a = (diff & d1.mask()).trailing_zeros() as usize; // only in d1
    let b = (diff & d2.mask()).trailing_zeros() as usize; // only in d2
    if spin(a) != spin(b) {
        return 0.0; // spin-forbidden
    }
    let (p, q) = (spatial(a), spatial(b));
    let mut e = t.one_body(p, q);
    let common = d1.mask() & d2.mask();
    let mut rest = common;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let pk = spatial(k);
        e += t.two_body(p, q, pk, pk);
        if spin(k) == spin(a) {
            e -= t.two_body(p, pk, pk, q);
        }
    }
    let sign = parity_below(d1.mask(), a) * parity_below(d2.mask(), b);
    sign * e
}

fn double(d1: &Determinant, d2: &Determinant, diff: u128, t: &IntegralTable) -> f64 {
    let only1 = diff & d1.mask();
    let only2 = diff & d2.mask();
    let a = only1.trailing_zeros() as usize;
    let b = 127 - (only1.leading_zeros() as usize);
    let c = only2.trailing_zeros() as usize;
    let d = 127 - (only2.leading_zeros() as usize);

    let mut e = 0.0;
    if spin(a) == spin(c) && spin(b) == spin(d) {
        e += t.two_body(spatial(a), spatial(c), spatial(b), spatial(d));
    }
    if spin(a) == spin(d) && spin(b) == spin(c) {
        e -= t.two_body(spatial(a), spatial(d), spatial(b), spatial(c));
    }
    if e == 0.0 {
        return 0.0;
    }
    // parity of aligning (a, b) out of d1 and (c, d) out of d2
    let m1 = d1.mask();
    let m2 = d2.mask();
    let sign = parity_below(m1, a)
        * parity_below(m1 & !(1 << a), b)
        * parity_below(m2, c)
        * parity_below(m2 & !(1 << c), d);
    sign * e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::OccupationString;

    #[test]
    fn more_than_double_excitation_vanishes() {
        let t = IntegralTable::new(4, 4, 0.0);
        let d1: OccupationString = "11100000".parse().unwrap();
        let d2: OccupationString = "00011100".parse().unwrap();
        assert_eq!(hamiltonian_element(&d1, &d2, &t), 0.0);
    }

    #[test]
    fn spin_forbidden_single_vanishes() {
        let mut t = IntegralTable::new(2, 1, 0.0);
        t.set_one_body(0, 1, 0.7);
        // alpha in orbital 0 -> beta in orbital 1
        let d1: OccupationString = "1000".parse().unwrap();
        let d2: OccupationString = "0001".parse().unwrap();
        assert_eq!(hamiltonian_element(&d1, &d2, &t), 0.0);
        // same-spin single survives
        let d3: OccupationString = "0010".parse().unwrap();
        assert_eq!(hamiltonian_element(&d1, &d3, &t), 0.7);
    }

    #[test]
    fn diagonal_includes_core_energy() {
        let t = IntegralTable::new(3, 2, -1.5);
        let d: OccupationString = "110000".parse().unwrap();
        assert_eq!(hamiltonian_element(&d, &d, &t), -1.5);
    }
}
