//! Shared random-instance generators for the property suites.
// Each test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use factorum_core::{DegreeConstraint, EdgeSet, Factor, Graph, Instance, Rational};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Simple graph on n vertices with m edges drawn uniformly.
pub fn random_graph(r: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(r);
    Graph::from_edges(n, pairs.into_iter().take(m)).unwrap()
}

/// Interval or parity interval of the given arity.
pub fn random_g_constraint(r: &mut ChaCha8Rng, arity: u32) -> DegreeConstraint {
    let lo = r.gen_range(0..=arity);
    let hi = r.gen_range(lo..=arity);
    if r.gen_bool(0.5) {
        DegreeConstraint::interval(arity, lo, hi).unwrap()
    } else {
        let hi = lo + (hi - lo) / 2 * 2;
        DegreeConstraint::parity_interval(arity, lo, hi).unwrap()
    }
}

/// Any admissible constraint; degree-3-or-more vertices draw one of the
/// three-element families with the given probability.
pub fn random_admissible_constraint(
    r: &mut ChaCha8Rng,
    arity: u32,
    type_bias: f64,
) -> DegreeConstraint {
    if arity >= 3 && r.gen_bool(type_bias) {
        let p = r.gen_range(0..=arity - 3);
        if r.gen_bool(0.5) {
            DegreeConstraint::type1(arity, p).unwrap()
        } else {
            DegreeConstraint::type2(arity, p).unwrap()
        }
    } else {
        random_g_constraint(r, arity)
    }
}

pub fn random_weights(r: &mut ChaCha8Rng, m: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..m).map(|_| rat(r.gen_range(lo..=hi))).collect()
}

pub fn random_instance(
    r: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    type_bias: f64,
) -> Instance {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(0..=(n * (n - 1) / 2).min(max_m));
    let graph = random_graph(r, n, m);
    let constraints = graph
        .vertices()
        .map(|v| random_admissible_constraint(r, graph.degree(v) as u32, type_bias))
        .collect();
    let weights = random_weights(r, m, -5, 5);
    Instance::new(graph, constraints, weights).unwrap()
}

/// Every factor of a small instance, by exhausting edge subsets.
pub fn all_factors(inst: &Instance) -> Vec<Factor> {
    let m = inst.edge_count();
    assert!(m <= 16, "exhaustive factor enumeration cap");
    (0..1u64 << m)
        .filter_map(|mask| {
            let mut edges = EdgeSet::with_capacity(m);
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    edges.insert(e);
                }
            }
            inst.is_factor(&edges).then(|| inst.factor(edges).unwrap())
        })
        .collect()
}
