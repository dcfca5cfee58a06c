//! Shared generators for the structural property suites: random admissible
//! instances with their factor lists, random degree-forced instances, and
//! the twelve-vertex showcase example.
// Each test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use factorum_core::{
    rational_int, DegreeConstraint, EdgeSet, Factor, Graph, Instance, Rational,
};
use factorum_structure::KeyInstance;
use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> Rational {
    rational_int(n)
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

/// Random subcubic graph with every vertex covered: edges are drawn while
/// both endpoints have spare degree, then uncovered vertices are dropped.
/// Returns None when no edge survives.
fn random_subcubic_edges(
    r: &mut ChaCha8Rng,
    n: usize,
    attempts: usize,
) -> Option<(usize, Vec<(usize, usize)>)> {
    let mut degree = vec![0usize; n];
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for _ in 0..attempts {
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        if a == b || present[a][b] || degree[a] == 3 || degree[b] == 3 {
            continue;
        }
        present[a][b] = true;
        present[b][a] = true;
        degree[a] += 1;
        degree[b] += 1;
        edges.push((a.min(b), a.max(b)));
    }
    if edges.is_empty() {
        return None;
    }
    let mut remap = vec![usize::MAX; n];
    let mut covered = 0;
    for v in 0..n {
        if degree[v] > 0 {
            remap[v] = covered;
            covered += 1;
        }
    }
    let edges = edges.into_iter().map(|(a, b)| (remap[a], remap[b])).collect();
    Some((covered, edges))
}

fn degree_forced_constraint(r: &mut ChaCha8Rng, degree: usize) -> DegreeConstraint {
    match degree {
        1 => DegreeConstraint::interval(1, 0, 1).unwrap(),
        2 => DegreeConstraint::parity_interval(2, 0, 2).unwrap(),
        3 if r.gen_bool(0.5) => DegreeConstraint::type1(3, 0).unwrap(),
        3 => DegreeConstraint::type2(3, 0).unwrap(),
        d => unreachable!("subcubic degrees only, got {d}"),
    }
}

/// Random degree-forced instance with strictly positive total weight.
pub fn random_key_instance(r: &mut ChaCha8Rng, max_n: usize) -> KeyInstance {
    loop {
        let n = r.gen_range(2..=max_n);
        let attempts = r.gen_range(n..=2 * n);
        let Some((covered, edges)) = random_subcubic_edges(r, n, attempts) else {
            continue;
        };
        let graph = Graph::from_edges(covered, edges).unwrap();
        let constraints = graph
            .vertices()
            .map(|v| degree_forced_constraint(r, graph.degree(v)))
            .collect();
        let mut weights = random_weights(r, graph.edge_count(), -4, 4);
        let mut total: Rational = weights.iter().sum();
        if total < Rational::zero() {
            for w in &mut weights {
                *w = -w.clone();
            }
            total = -total;
        }
        if total.is_zero() {
            weights[0] += rat(1);
        }
        let inst = Instance::new(graph, constraints, weights).unwrap();
        return KeyInstance::new(inst).unwrap();
    }
}

/// Degree-forced instance with two vertex-disjoint halves and all-positive
/// weights: the total strictly exceeds every factor that misses a half.
pub fn two_part_key_instance(r: &mut ChaCha8Rng, max_half: usize) -> KeyInstance {
    loop {
        let na = r.gen_range(2..=max_half);
        let nb = r.gen_range(2..=max_half);
        let tries_a = r.gen_range(na..=2 * na);
        let tries_b = r.gen_range(nb..=2 * nb);
        let Some((ca, mut edges)) = random_subcubic_edges(r, na, tries_a) else {
            continue;
        };
        let Some((cb, eb)) = random_subcubic_edges(r, nb, tries_b) else {
            continue;
        };
        edges.extend(eb.into_iter().map(|(a, b)| (ca + a, ca + b)));
        let graph = Graph::from_edges(ca + cb, edges).unwrap();
        let constraints = graph
            .vertices()
            .map(|v| degree_forced_constraint(r, graph.degree(v)))
            .collect();
        let weights = random_weights(r, graph.edge_count(), 1, 4);
        let inst = Instance::new(graph, constraints, weights).unwrap();
        return KeyInstance::new(inst).unwrap();
    }
}

/// The twelve-vertex showcase: two triangles joined through a path system
/// with three odd-capable and one even-capable branch vertex. Its unique
/// optimum is the full edge set, of weight 6.
///
/// Vertices: 0 and 9 carry triangles (1, 2 and 10, 11); 0-3-4 reaches the
/// even-capable vertex 4; 4-5-7 and 4-6-7 run parallel to 7; 7-8-9 closes
/// the chain. Triangle edges weigh 1/3, path edges 1/2.
pub fn figure_instance() -> KeyInstance {
    let graph = Graph::from_edges(
        12,
        [
            (0, 1),
            (1, 2),
            (2, 0),
            (0, 3),
            (3, 4),
            (4, 5),
            (5, 7),
            (4, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 10),
            (10, 11),
            (11, 9),
        ],
    )
    .unwrap();
    let t1 = || DegreeConstraint::type1(3, 0).unwrap();
    let t2 = || DegreeConstraint::type2(3, 0).unwrap();
    let d2 = || DegreeConstraint::parity_interval(2, 0, 2).unwrap();
    let constraints = vec![
        t1(),
        d2(),
        d2(),
        d2(),
        t2(),
        d2(),
        d2(),
        t1(),
        d2(),
        t1(),
        d2(),
        d2(),
    ];
    let third = Rational::new(1.into(), 3.into());
    let half = Rational::new(1.into(), 2.into());
    let weights = vec![
        third.clone(),
        third.clone(),
        third.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        half.clone(),
        third.clone(),
        third.clone(),
        third,
    ];
    let inst = Instance::new(graph, constraints, weights).unwrap();
    KeyInstance::new(inst).unwrap()
}
