//! Seeded generators shared by the core property suites.
// Each test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use factorum_core::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, m_target: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (a, b) in pairs.into_iter().take(m_target) {
        g.add_edge(a, b).unwrap();
    }
    g
}

/// Random graph with every degree ≤ 3.
pub fn random_subcubic(rng: &mut impl Rng, n: usize, m_target: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    let mut added = 0;
    for (a, b) in pairs {
        if added == m_target {
            break;
        }
        if g.degree(a) < 3 && g.degree(b) < 3 {
            g.add_edge(a, b).unwrap();
            added += 1;
        }
    }
    g
}

/// Random constraint admissible for the solver, sized for degree `d`.
pub fn random_admissible_constraint(rng: &mut impl Rng, d: u32) -> DegreeConstraint {
    loop {
        match rng.gen_range(0..4) {
            0 => {
                let g = rng.gen_range(0..=d);
                let f = rng.gen_range(g..=d);
                return DegreeConstraint::interval(d, g, f).unwrap();
            }
            1 => {
                let g = rng.gen_range(0..=d);
                let top = (d - g) / 2;
                let f = g + 2 * rng.gen_range(0..=top);
                return DegreeConstraint::parity_interval(d, g, f).unwrap();
            }
            2 if d >= 3 => {
                let p = rng.gen_range(0..=d - 3);
                return DegreeConstraint::type1(d, p).unwrap();
            }
            3 if d >= 3 => {
                let p = rng.gen_range(0..=d - 3);
                return DegreeConstraint::type2(d, p).unwrap();
            }
            _ => continue,
        }
    }
}

pub fn int_weights(rng: &mut impl Rng, m: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..m).map(|_| parse_rational(&rng.gen_range(lo..=hi).to_string()).unwrap()).collect()
}

pub fn random_admissible_instance(
    rng: &mut impl Rng,
    n: usize,
    m_target: usize,
    lo: i64,
    hi: i64,
) -> Instance {
    let g = random_graph(rng, n, m_target);
    let constraints = g
        .vertices()
        .map(|v| random_admissible_constraint(rng, g.degree(v) as u32))
        .collect();
    let weights = int_weights(rng, g.edge_count(), lo, hi);
    Instance::new(g, constraints, weights).unwrap()
}

/// All factors of a small instance by exhaustive subset scan.
pub fn enumerate_factors(inst: &Instance) -> Vec<EdgeSet> {
    let m = inst.edge_count();
    assert!(m <= 16, "enumeration helper is for small instances");
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let set =
            EdgeSet::from_edges(inst.graph(), (0..m).filter(|&e| mask >> e & 1 == 1)).unwrap();
        if inst.is_factor(&set) {
            out.push(set);
        }
    }
    out
}
