//! Heuristic decoders: search the weight-N sector for a preimage of a
//! codeword, scoring by Hamming distance between `G . s` and the target.
//!
//! Both searches operate in the encoder's permuted bit basis so the
//! matrix applies directly to the candidate mask; the winner is mapped
//! back to the orbital basis at the end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{Codeword, OccupationString};
use crate::encoder::EncoderMatrix;

use super::DecoderError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Genetic,
    Annealing,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub method: SearchMethod,
    pub seed: u64,
    /// Genetic: population size and generation count.
    pub population: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub tournament: usize,
    /// Annealing: restarts, steps per restart (`None` scales with the
    /// register, 9 per spin orbital), initial temperature, geometric
    /// cooling factor per step.
    pub restarts: usize,
    pub steps: Option<usize>,
    pub t0: f64,
    pub cooling: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            method: SearchMethod::Genetic,
            seed: 0,
            population: 64,
            generations: 200,
            mutation_rate: 0.05,
            tournament: 3,
            restarts: 1,
            steps: None,
            t0: 2.0,
            cooling: 0.995,
        }
    }
}

/// Best weight-`n` preimage candidate found for `c`. Exact when the
/// returned residual distance is zero.
pub fn search_decode(
    g: &EncoderMatrix,
    c: &Codeword,
    n: usize,
    cfg: &SearchConfig,
) -> Result<(OccupationString, u32), DecoderError> {
    if c.len() != g.q() {
        return Err(DecoderError::WidthMismatch { expected: g.q(), got: c.len() });
    }
    if n == 0 || n > g.m() {
        return Err(DecoderError::BadConfig(format!(
            "electron count {n} outside 1..={}",
            g.m()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let target = c.mask();
    let (best_mask, dist) = match cfg.method {
        SearchMethod::Genetic => genetic(g, target, n, cfg, &mut rng),
        SearchMethod::Annealing => annealing(g, target, n, cfg, &mut rng),
    };
    let permuted = OccupationString::from_mask(best_mask, g.m());
    Ok((g.ordering().inverse().apply(&permuted), dist))
}

#[inline]
fn distance(g: &EncoderMatrix, mask: u128, target: u128) -> u32 {
    (g.encode_mask(mask).mask() ^ target).count_ones()
}

fn random_member(m: usize, n: usize, rng: &mut ChaCha8Rng) -> u128 {
    let mut pos: Vec<usize> = (0..m).collect();
    for i in 0..n {
        let j = rng.gen_range(i..m);
        pos.swap(i, j);
    }
    pos[..n].iter().fold(0u128, |acc, &p| acc | 1 << p)
}

/// Swap a random occupied bit with a random unoccupied one.
fn swap_move(mask: u128, m: usize, n: usize, rng: &mut ChaCha8Rng) -> u128 {
    let occ = nth_set_bit(mask, rng.gen_range(0..n));
    let empty_mask = !mask & low_mask(m);
    let empty = nth_set_bit(empty_mask, rng.gen_range(0..m - n));
    mask ^ (1 << occ) ^ (1 << empty)
}

fn nth_set_bit(mut mask: u128, mut k: usize) -> u32 {
    loop {
        let b = mask.trailing_zeros();
        if k == 0 {
            return b;
        }
        mask &= mask - 1;
        k -= 1;
    }
}

fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn genetic(
    g: &EncoderMatrix,
    target: u128,
    n: usize,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> (u128, u32) {
    let m = g.m();
    let mut pop: Vec<(u128, u32)> = (0..cfg.population)
        .map(|_| {
            let s = random_member(m, n, rng);
            (s, distance(g, s, target))
        })
        .collect();
    let mut best = *pop.iter().min_by_key(|&&(_, d)| d).unwrap();

    for _ in 0..cfg.generations {
        if best.1 == 0 {
            break;
        }
        let mut next = Vec::with_capacity(cfg.population);
        next.push(best); // elitism
        // fresh blood keeps the pool from collapsing onto the elite
        for _ in 0..2 {
            let s = random_member(m, n, rng);
            next.push((s, distance(g, s, target)));
        }
        while next.len() < cfg.population {
            let pa = tournament(&pop, cfg.tournament, rng);
            let pb = tournament(&pop, cfg.tournament, rng);
            let mut child = crossover(pa, pb, m, n, rng);
            // expected mutation_rate swaps per occupied position
            for _ in 0..n {
                if rng.gen_bool(cfg.mutation_rate) {
                    child = swap_move(child, m, n, rng);
                }
            }
            let d = distance(g, child, target);
            next.push((child, d));
        }
        for &c in &next {
            if c.1 < best.1 {
                best = c;
            }
        }
        pop = next;
    }
    best
}

fn tournament(pop: &[(u128, u32)], k: usize, rng: &mut ChaCha8Rng) -> u128 {
    (0..k.max(1))
        .map(|_| pop[rng.gen_range(0..pop.len())])
        .min_by_key(|&(_, d)| d)
        .unwrap()
        .0
}

/// Uniform crossover followed by weight repair: disagreeing bits are
/// resolved by adding or removing random occupations until the child
/// has weight n again.
fn crossover(a: u128, b: u128, m: usize, n: usize, rng: &mut ChaCha8Rng) -> u128 {
    let pick: u128 = ((rng.gen::<u64>() as u128) << 64 | rng.gen::<u64>() as u128) & low_mask(m);
    let mut child = (a & pick) | (b & !pick);
    while (child.count_ones() as usize) > n {
        let drop = nth_set_bit(child, rng.gen_range(0..child.count_ones() as usize));
        child ^= 1 << drop;
    }
    while (child.count_ones() as usize) < n {
        let empty = !child & low_mask(m);
        let add = nth_set_bit(empty, rng.gen_range(0..empty.count_ones() as usize));
        child |= 1 << add;
    }
    child
}

fn annealing(
    g: &EncoderMatrix,
    target: u128,
    n: usize,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> (u128, u32) {
    let m = g.m();
    let steps = cfg.steps.unwrap_or(9 * m);
    let mut best: Option<(u128, u32)> = None;
    for _ in 0..cfg.restarts.max(1) {
        let mut cur = random_member(m, n, rng);
        let mut cur_d = distance(g, cur, target);
        let mut temp = cfg.t0;
        for _ in 0..steps {
            if cur_d == 0 {
                break;
            }
            let cand = swap_move(cur, m, n, rng);
            let cand_d = distance(g, cand, target);
            let delta = cand_d as f64 - cur_d as f64;
            if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
                cur = cand;
                cur_d = cand_d;
            }
            temp *= cfg.cooling;
        }
        if best.map_or(true, |(_, d)| cur_d < d) {
            best = Some((cur, cur_d));
        }
        if best.unwrap().1 == 0 {
            break;
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::SpinOrbitalOrdering;
    use crate::encoder::{generate_encoder, Strategy};

    fn encoder(m: usize, q: usize, seed: u64) -> EncoderMatrix {
        generate_encoder(m, q, Strategy::Chemical,
                         &SpinOrbitalOrdering::identity(m), None, seed, 10)
            .unwrap()
    }

    #[test]
    fn both_methods_solve_a_lossless_instance() {
        let g = encoder(12, 9, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for method in [SearchMethod::Genetic, SearchMethod::Annealing] {
            // generous budget: this checks correctness, not calibration
            let cfg = SearchConfig {
                method,
                seed: 3,
                restarts: 5,
                steps: Some(2000),
                ..Default::default()
            };
            for _ in 0..10 {
                let s = OccupationString::from_mask(random_member(12, 3, &mut rng), 12);
                let c = g.encode(&s).unwrap();
                let (found, d) = search_decode(&g, &c, 3, &cfg).unwrap();
                assert_eq!(d, 0, "{method:?} missed {s}");
                assert_eq!(g.encode(&found).unwrap(), c);
            }
        }
    }

    #[test]
    fn result_preserves_weight() {
        let g = encoder(20, 8, 2);
        let cfg = SearchConfig { generations: 5, steps: Some(50), ..Default::default() };
        let c: Codeword = "10110010".parse().unwrap();
        let (s, _) = search_decode(&g, &c, 4, &cfg).unwrap();
        assert_eq!(s.weight(), 4);
    }

    #[test]
    fn deterministic_in_seed() {
        let g = encoder(16, 10, 5);
        let c: Codeword = "1011001011".parse().unwrap();
        let cfg = SearchConfig { seed: 9, ..Default::default() };
        let a = search_decode(&g, &c, 4, &cfg).unwrap();
        let b = search_decode(&g, &c, 4, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn undoes_a_random_bit_order() {
        let g = generate_encoder(12, 12, Strategy::Random,
                                 &SpinOrbitalOrdering::identity(12), None, 17, 10)
            .unwrap();
        let s: OccupationString = "101000000100".parse().unwrap();
        let c = g.encode(&s).unwrap();
        let cfg = SearchConfig {
            method: SearchMethod::Annealing,
            restarts: 5,
            steps: Some(2000),
            ..Default::default()
        };
        let (found, d) = search_decode(&g, &c, 3, &cfg).unwrap();
        assert_eq!(d, 0);
        assert_eq!(found, s);
    }
}
