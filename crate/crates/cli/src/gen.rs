//! Seeded instance generators: random admissible instances for corpora and
//! verification sweeps, the twelve-vertex showcase, and a scaling family
//! with a linear share of three-element constraints.

use factorum_core::{rational_int, DegreeConstraint, Graph, Instance, Rational};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("{m} edges do not fit a simple graph on {n} vertices")]
    TooManyEdges { n: usize, m: usize },
    #[error("no constraint classes selected")]
    NoClasses,
    #[error("empty weight range")]
    EmptyWeightRange,
}

/// Constraint families the generator can draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassChoice {
    Interval,
    Parity,
    Type1,
    Type2,
}

impl ClassChoice {
    pub const ALL: [ClassChoice; 4] = [
        ClassChoice::Interval,
        ClassChoice::Parity,
        ClassChoice::Type1,
        ClassChoice::Type2,
    ];

    pub fn parse(token: &str) -> Option<ClassChoice> {
        match token {
            "interval" => Some(ClassChoice::Interval),
            "parity" => Some(ClassChoice::Parity),
            "type1" => Some(ClassChoice::Type1),
            "type2" => Some(ClassChoice::Type2),
            _ => None,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Simple graph on n vertices with m edges drawn uniformly.
pub fn random_graph(r: &mut ChaCha8Rng, n: usize, m: usize) -> Result<Graph, GenError> {
    let cap = n.saturating_sub(1) * n / 2;
    if m > cap {
        return Err(GenError::TooManyEdges { n, m });
    }
    let mut pairs = Vec::with_capacity(cap);
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(r);
    Ok(Graph::from_edges(n, pairs.into_iter().take(m)).expect("distinct pairs stay simple"))
}

fn random_interval(r: &mut ChaCha8Rng, arity: u32) -> DegreeConstraint {
    let g = r.gen_range(0..=arity);
    let f = r.gen_range(g..=arity);
    DegreeConstraint::interval(arity, g, f).expect("bounds drawn in range")
}

fn random_parity(r: &mut ChaCha8Rng, arity: u32) -> DegreeConstraint {
    let g = r.gen_range(0..=arity);
    let f = g + (r.gen_range(g..=arity) - g) / 2 * 2;
    DegreeConstraint::parity_interval(arity, g, f).expect("bounds drawn in range")
}

/// One constraint drawn from the allowed classes. Three-element classes
/// need arity at least 3; smaller vertices fall back to the two interval
/// families.
pub fn random_constraint(
    r: &mut ChaCha8Rng,
    arity: u32,
    classes: &[ClassChoice],
) -> DegreeConstraint {
    let viable: Vec<ClassChoice> = classes
        .iter()
        .copied()
        .filter(|c| arity >= 3 || matches!(c, ClassChoice::Interval | ClassChoice::Parity))
        .collect();
    let pick = if viable.is_empty() {
        if r.gen_bool(0.5) {
            ClassChoice::Interval
        } else {
            ClassChoice::Parity
        }
    } else {
        viable[r.gen_range(0..viable.len())]
    };
    match pick {
        ClassChoice::Interval => random_interval(r, arity),
        ClassChoice::Parity => random_parity(r, arity),
        ClassChoice::Type1 => {
            DegreeConstraint::type1(arity, r.gen_range(0..=arity - 3)).expect("arity >= 3")
        }
        ClassChoice::Type2 => {
            DegreeConstraint::type2(arity, r.gen_range(0..=arity - 3)).expect("arity >= 3")
        }
    }
}

/// Reproducible random admissible instance: same parameters and seed give
/// identical output, including across processes.
pub fn generate(
    n: usize,
    m: usize,
    classes: &[ClassChoice],
    weight_lo: i64,
    weight_hi: i64,
    seed: u64,
) -> Result<Instance, GenError> {
    if classes.is_empty() {
        return Err(GenError::NoClasses);
    }
    if weight_lo > weight_hi {
        return Err(GenError::EmptyWeightRange);
    }
    let mut r = rng(seed);
    let graph = random_graph(&mut r, n, m)?;
    let constraints = graph
        .vertices()
        .map(|v| random_constraint(&mut r, graph.degree(v) as u32, classes))
        .collect();
    let weights = (0..m)
        .map(|_| rational_int(r.gen_range(weight_lo..=weight_hi)))
        .collect();
    Ok(Instance::new(graph, constraints, weights).expect("arities match degrees"))
}

/// The twelve-vertex showcase: two weight-1 triangles joined through four
/// weight-1 two-edge paths, every branch vertex wanting odd degree except
/// one. Its unique optimum is the whole graph, of weight 6, and no factor
/// avoiding the even-capable hub comes close.
pub fn showcase_instance() -> Instance {
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
    .expect("fixed edge list is simple");
    let t1 = || DegreeConstraint::type1(3, 0).expect("static label");
    let t2 = || DegreeConstraint::type2(3, 0).expect("static label");
    let d2 = || DegreeConstraint::parity_interval(2, 0, 2).expect("static label");
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
    let third = || Rational::new(1.into(), 3.into());
    let half = || Rational::new(1.into(), 2.into());
    let weights = vec![
        third(),
        third(),
        third(),
        half(),
        half(),
        half(),
        half(),
        half(),
        half(),
        half(),
        half(),
        third(),
        third(),
        third(),
    ];
    Instance::new(graph, constraints, weights).expect("arities match degrees")
}

/// Benchmark family: a ring of n vertices (n divisible by 4) with a chord
/// every fourth vertex, whose lower endpoint carries the {0,2,3} label.
/// That puts n/4 vertices in the three-element class while every label
/// keeps 0 feasible, so feasibility questions never explode.
pub fn scaling_instance(n: usize, seed: u64) -> Instance {
    assert!(n >= 8 && n % 4 == 0, "ring size must be a positive multiple of 4");
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n / 4).map(|i| (4 * i, 4 * i + 2)));
    let graph = Graph::from_edges(n, edges).expect("ring plus short chords is simple");
    let constraints = graph
        .vertices()
        .map(|v| {
            if v % 4 == 0 {
                DegreeConstraint::type2(3, 0).expect("static label")
            } else if graph.degree(v) == 3 {
                DegreeConstraint::interval(3, 0, 3).expect("static label")
            } else {
                DegreeConstraint::parity_interval(2, 0, 2).expect("static label")
            }
        })
        .collect();
    let mut r = rng(seed);
    let weights = (0..graph.edge_count()).map(|_| rational_int(r.gen_range(-3..=5))).collect();
    Instance::new(graph, constraints, weights).expect("arities match degrees")
}
