use factorum_core::{EdgeId, EdgeSet, Graph, Rational};
use factorum_matching::{
    max_weight_perfect_matching, max_weight_perfect_matching_certified, verify_certificate,
    verify_matching, Matching, MatchingProblem,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn random_graph(r: &mut ChaCha8Rng, n: usize, m_target: usize) -> Graph {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(r);
    Graph::from_edges(n, pairs.into_iter().take(m_target)).expect("simple graph")
}

fn problem(g: Graph, ws: Vec<Rational>) -> MatchingProblem {
    MatchingProblem::new(g, ws).expect("aligned weights")
}

/// All perfect matchings, as edge sets, by pairing the lowest uncovered
/// vertex with each available neighbor.
fn all_perfect_matchings(g: &Graph) -> Vec<EdgeSet> {
    fn rec(g: &Graph, covered: &mut [bool], picked: &mut Vec<EdgeId>, out: &mut Vec<EdgeSet>) {
        let v = match covered.iter().position(|&c| !c) {
            None => {
                out.push(EdgeSet::from_edges(g, picked.iter().copied()).expect("valid ids"));
                return;
            }
            Some(v) => v,
        };
        covered[v] = true;
        for &(e, w) in g.neighbors(v) {
            if !covered[w] {
                covered[w] = true;
                picked.push(e);
                rec(g, covered, picked, out);
                picked.pop();
                covered[w] = false;
            }
        }
        covered[v] = false;
    }
    let mut covered = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    rec(g, &mut covered, &mut Vec::new(), &mut out);
    out
}

fn exhaustive_optima(p: &MatchingProblem) -> Option<(Rational, Vec<EdgeSet>)> {
    let pms = all_perfect_matchings(p.graph());
    let best = pms.iter().map(|s| p.weight_of(s)).max()?;
    let argmax = pms
        .into_iter()
        .filter(|s| p.weight_of(s) == best)
        .collect();
    Some((best, argmax))
}

#[test]
fn solver_agrees_with_exhaustive_search() {
    let mut r = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    let mut solved = 0usize;
    let mut infeasible = 0usize;
    for case in 0..520 {
        // Mostly even orders and denser graphs, so feasible cases dominate
        // while infeasible ones still appear.
        let n = if case % 4 == 0 {
            r.gen_range(2..=10usize)
        } else {
            2 * r.gen_range(1..=5usize)
        };
        let max_m = n * (n - 1) / 2;
        let lo = (n / 2).min(max_m);
        let m = r.gen_range(lo..=max_m);
        let g = random_graph(&mut r, n, m);
        let ws: Vec<Rational> = (0..g.edge_count())
            .map(|_| rat(r.gen_range(-9..=9)))
            .collect();
        let p = problem(g, ws);

        let reference = exhaustive_optima(&p);
        let solved_pair = max_weight_perfect_matching_certified(&p);
        match (&reference, &solved_pair) {
            (None, None) => infeasible += 1,
            (Some((best, argmax)), Some((m0, cert))) => {
                assert_eq!(m0.weight(), best);
                assert!(verify_matching(&p, m0));
                assert!(verify_certificate(&p, m0, cert));

                let lexmin = max_weight_perfect_matching(&p).expect("feasible");
                assert_eq!(lexmin.weight(), best);
                let min_set = argmax.iter().min().expect("nonempty");
                assert_eq!(lexmin.edges(), min_set);
                solved += 1;
            }
            (a, b) => panic!(
                "feasibility disagreement: exhaustive={:?} solver={:?}",
                a.is_some(),
                b.is_some()
            ),
        }
    }
    assert!(solved >= 300, "only {solved} feasible cases");
    assert!(infeasible >= 30, "only {infeasible} infeasible cases");
}

#[test]
fn rational_weights_agree_with_scaled_integer_run() {
    let mut r = ChaCha8Rng::seed_from_u64(0xabcdef);
    let mut checked = 0usize;
    for _ in 0..200 {
        let n = 2 * r.gen_range(1..=5usize);
        let m = r.gen_range(n / 2..=(n * (n - 1) / 2).max(n / 2));
        let g = random_graph(&mut r, n, m);
        let ws: Vec<Rational> = (0..g.edge_count())
            .map(|_| ratio(r.gen_range(-30..=30), r.gen_range(1..=8)))
            .collect();
        let scale: BigInt = ws
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled: Vec<Rational> = ws
            .iter()
            .map(|w| w * Rational::from_integer(scale.clone()))
            .collect();
        assert!(scaled.iter().all(|w| w.denom().is_one()));

        let p = problem(g.clone(), ws);
        let ps = problem(g, scaled);
        match (
            max_weight_perfect_matching(&p),
            max_weight_perfect_matching(&ps),
        ) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                assert_eq!(
                    a.weight() * Rational::from_integer(scale),
                    *b.weight()
                );
                assert_eq!(a.edges(), b.edges());
                checked += 1;
            }
            _ => panic!("feasibility must not depend on weight scaling"),
        }
    }
    assert!(checked >= 80, "only {checked} feasible cases");
}

#[test]
fn weight_translation_shifts_optimum_and_keeps_argmin() {
    let mut r = ChaCha8Rng::seed_from_u64(0x51ce);
    let mut checked = 0usize;
    for _ in 0..150 {
        let n = 2 * r.gen_range(1..=5usize);
        let max_m = n * (n - 1) / 2;
        let m = r.gen_range(0..=max_m);
        let g = random_graph(&mut r, n, m);
        let ws: Vec<Rational> = (0..g.edge_count())
            .map(|_| rat(r.gen_range(-9..=9)))
            .collect();
        let c = ratio(r.gen_range(-8..=8), r.gen_range(1..=3));
        let shifted: Vec<Rational> = ws.iter().map(|w| w + &c).collect();

        let p = problem(g.clone(), ws);
        let q = problem(g, shifted);
        match (max_weight_perfect_matching(&p), max_weight_perfect_matching(&q)) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                let half_n = rat(n as i64 / 2);
                assert_eq!(a.weight() + &c * half_n, *b.weight());
                assert_eq!(a.edges(), b.edges());
                checked += 1;
            }
            _ => panic!("translation cannot change feasibility"),
        }
    }
    assert!(checked >= 50, "only {checked} feasible cases");
}

#[test]
fn fixed_examples() {
    // Single edge: forced.
    let g = Graph::from_edges(2, [(0, 1)]).unwrap();
    let p = problem(g, vec![rat(5)]);
    let m = max_weight_perfect_matching(&p).expect("feasible");
    assert_eq!(m.edges().to_vec(), vec![0]);
    assert_eq!(*m.weight(), rat(5));

    // 4-cycle, weights 3,1,3,1 around: the two weight-3 opposite edges win.
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let p = problem(g, vec![rat(3), rat(1), rat(3), rat(1)]);
    let m = max_weight_perfect_matching(&p).expect("feasible");
    assert_eq!(m.edges().to_vec(), vec![0, 2]);
    assert_eq!(*m.weight(), rat(6));

    // Triangle: odd vertex count.
    let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let p = problem(g, vec![rat(1), rat(1), rat(1)]);
    assert!(max_weight_perfect_matching(&p).is_none());

    // Even order but an exposed vertex.
    let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
    let p = problem(g, vec![rat(1), rat(1)]);
    assert!(max_weight_perfect_matching(&p).is_none());

    // Empty graph: the empty matching is perfect.
    let g = Graph::new(0);
    let p = problem(g, vec![]);
    let m = max_weight_perfect_matching(&p).expect("trivially feasible");
    assert!(m.edges().is_empty());
    assert!(m.weight().is_zero());
}

#[test]
fn matching_verifier_rejects_defects() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let p = problem(g.clone(), vec![rat(3), rat(1), rat(3), rat(1)]);

    // Adjacent edges.
    let bad = Matching::new(
        EdgeSet::from_edges(&g, [0, 1]).unwrap(),
        rat(4),
    );
    assert!(!verify_matching(&p, &bad));

    // Non-perfect.
    let partial = Matching::new(EdgeSet::from_edges(&g, [0]).unwrap(), rat(3));
    assert!(!verify_matching(&p, &partial));

    // Perfect but with a corrupted weight field.
    let corrupt = Matching::new(EdgeSet::from_edges(&g, [0, 2]).unwrap(), rat(7));
    assert!(!verify_matching(&p, &corrupt));

    let good = Matching::new(EdgeSet::from_edges(&g, [0, 2]).unwrap(), rat(6));
    assert!(verify_matching(&p, &good));
}

#[test]
fn certificate_verifier_rejects_tampering() {
    // Odd cycle forces a genuine blossom: 5-cycle plus a tail.
    let g = Graph::from_edges(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)],
    )
    .unwrap();
    let ws = vec![rat(4), rat(5), rat(4), rat(5), rat(4), rat(3)];
    let p = problem(g, ws);
    let (m, cert) = max_weight_perfect_matching_certified(&p).expect("feasible");
    assert!(verify_certificate(&p, &m, &cert));

    let mut lifted = cert.clone();
    lifted.vertex_duals[0] += rat(1);
    assert!(!verify_certificate(&p, &m, &lifted));

    let mut dropped = cert.clone();
    dropped.vertex_duals[3] -= ratio(1, 2);
    assert!(!verify_certificate(&p, &m, &dropped));

    if !cert.blossoms.is_empty() {
        let mut fat = cert.clone();
        fat.blossoms[0].1 += rat(1);
        assert!(!verify_certificate(&p, &m, &fat));
    }
}
