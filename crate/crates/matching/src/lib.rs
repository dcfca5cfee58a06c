//! Exact maximum-weight perfect matching on general graphs.
//!
//! The solver is Edmonds' blossom algorithm in its primal-dual form. Weights
//! are exact rationals; when every weight is a small integer the solver runs
//! on `i128` duals, otherwise it runs on rationals directly. Every perfect
//! optimum comes with a [`DualCertificate`] whose complementary-slackness
//! conditions can be re-checked independently of the solver.

mod blossom;
mod weight;

pub use weight::BlossomWeight;

use factorum_core::{EdgeSet, Graph, Rational, VertexId};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("graph has {expected} edges but {got} weights were supplied")]
    WeightCountMismatch { expected: usize, got: usize },
}

/// A weighted graph on which a maximum-weight perfect matching is sought.
/// Negative weights are allowed; an odd vertex count is simply infeasible.
#[derive(Debug, Clone)]
pub struct MatchingProblem {
    graph: Graph,
    weights: Vec<Rational>,
}

impl MatchingProblem {
    pub fn new(graph: Graph, weights: Vec<Rational>) -> Result<Self, MatchingError> {
        if weights.len() != graph.edge_count() {
            return Err(MatchingError::WeightCountMismatch {
                expected: graph.edge_count(),
                got: weights.len(),
            });
        }
        Ok(MatchingProblem { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_of(&self, edges: &EdgeSet) -> Rational {
        edges
            .iter()
            .map(|e| self.weights[e].clone())
            .fold(Rational::zero(), |acc, w| acc + w)
    }
}

/// A set of pairwise disjoint edges together with its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: EdgeSet,
    weight: Rational,
}

impl Matching {
    pub fn new(edges: EdgeSet, weight: Rational) -> Self {
        Matching { edges, weight }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }
}

/// Dual solution certifying optimality of a perfect matching: vertex duals
/// u(v) plus the surviving odd sets with positive dual z. Optimality follows
/// from complementary slackness, checked by [`verify_certificate`].
#[derive(Debug, Clone)]
pub struct DualCertificate {
    pub vertex_duals: Vec<Rational>,
    pub blossoms: Vec<(Vec<VertexId>, Rational)>,
}

/// True iff `m` is a perfect matching of `p`'s graph and its stored weight
/// is the exact sum of its member edge weights.
pub fn verify_matching(p: &MatchingProblem, m: &Matching) -> bool {
    let g = p.graph();
    if m.edges().capacity() != g.edge_count() {
        return false;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in m.edges().iter() {
        let (a, b) = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d != 1) {
        return false;
    }
    p.weight_of(m.edges()) == *m.weight()
}

/// Checks the complementary-slackness conditions tying `m` to `cert`:
/// every edge has nonnegative reduced slack, matched edges are tight, listed
/// odd sets have strictly positive dual and are fully matched inside. A true
/// result proves `m` is a maximum-weight perfect matching, independently of
/// how it was computed.
pub fn verify_certificate(p: &MatchingProblem, m: &Matching, cert: &DualCertificate) -> bool {
    let g = p.graph();
    let n = g.vertex_count();
    if !verify_matching(p, m) || cert.vertex_duals.len() != n {
        return false;
    }
    for (members, z) in &cert.blossoms {
        if members.len() < 3 || members.len() % 2 == 0 {
            return false;
        }
        if members.windows(2).any(|w| w[0] >= w[1]) || members.last().map_or(false, |&v| v >= n) {
            return false;
        }
        if *z <= Rational::zero() {
            return false;
        }
        // z > 0 requires the set to be saturated from within.
        let inside = m
            .edges()
            .iter()
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                members.binary_search(&a).is_ok() && members.binary_search(&b).is_ok()
            })
            .count();
        if inside != (members.len() - 1) / 2 {
            return false;
        }
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        let mut slack =
            cert.vertex_duals[a].clone() + cert.vertex_duals[b].clone() - p.weights()[e].clone();
        for (members, z) in &cert.blossoms {
            if members.binary_search(&a).is_ok() && members.binary_search(&b).is_ok() {
                slack += z.clone();
            }
        }
        if slack < Rational::zero() {
            return false;
        }
        if m.edges().contains(e) && !slack.is_zero() {
            return false;
        }
    }
    true
}

struct RawSolution {
    mate: Vec<usize>,
    vertex_duals: Vec<Rational>,
    blossoms: Vec<(Vec<VertexId>, Rational)>,
}

fn raw_from_engine<W: BlossomWeight>(n: usize, edges: &[(usize, usize, W)]) -> RawSolution {
    let out = blossom::solve_matching(n, edges, true);
    let two = Rational::from_integer(BigInt::from(2));
    RawSolution {
        mate: out.mate,
        vertex_duals: out
            .vertex_duals
            .iter()
            .map(|d| d.to_rational() / &two)
            .collect(),
        blossoms: out
            .blossoms
            .into_iter()
            .filter(|(_, z)| *z > W::zero())
            .map(|(vs, z)| (vs, z.to_rational()))
            .collect(),
    }
}

/// Numerators this small keep every dual computation inside i128.
const INT_FAST_PATH_BITS: u64 = 62;

fn solve_raw(p: &MatchingProblem) -> RawSolution {
    let g = p.graph();
    let n = g.vertex_count();
    let integral = p
        .weights
        .iter()
        .all(|w| w.denom().is_one() && w.numer().bits() <= INT_FAST_PATH_BITS);
    if integral {
        let edges: Vec<(usize, usize, i128)> = g
            .edge_ids()
            .map(|e| {
                let (a, b) = g.endpoints(e);
                let w = p.weights[e].numer().to_i128().expect("checked magnitude");
                (a, b, w)
            })
            .collect();
        raw_from_engine(n, &edges)
    } else {
        let edges: Vec<(usize, usize, Rational)> = g
            .edge_ids()
            .map(|e| {
                let (a, b) = g.endpoints(e);
                (a, b, p.weights[e].clone())
            })
            .collect();
        raw_from_engine(n, &edges)
    }
}

/// Maximum-weight perfect matching with its dual certificate, or None when
/// the graph admits no perfect matching. Single solver run; the tie among
/// equal-weight optima falls wherever the search order lands.
pub fn max_weight_perfect_matching_certified(
    p: &MatchingProblem,
) -> Option<(Matching, DualCertificate)> {
    let g = p.graph();
    let n = g.vertex_count();
    if n % 2 != 0 {
        return None;
    }
    if n == 0 {
        let m = Matching::new(EdgeSet::with_capacity(g.edge_count()), Rational::zero());
        let cert = DualCertificate {
            vertex_duals: Vec::new(),
            blossoms: Vec::new(),
        };
        return Some((m, cert));
    }
    let raw = solve_raw(p);
    if raw.mate.iter().any(|&m| m == blossom::UNMATCHED) {
        return None;
    }
    let mut edges = EdgeSet::with_capacity(g.edge_count());
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        if raw.mate[a] == b {
            edges.insert(e);
        }
    }
    debug_assert_eq!(edges.len(), n / 2);
    let weight = p.weight_of(&edges);
    let matching = Matching::new(edges, weight);
    let cert = DualCertificate {
        vertex_duals: raw.vertex_duals,
        blossoms: raw.blossoms,
    };
    debug_assert!(verify_certificate(p, &matching, &cert));
    Some((matching, cert))
}

/// Optimal weight of a perfect matching on the subgraph spanned by the
/// uncovered vertices, or None if that subgraph has none.
fn best_completion(p: &MatchingProblem, covered: &[bool]) -> Option<Rational> {
    let g = p.graph();
    let mut map = vec![usize::MAX; g.vertex_count()];
    let mut count = 0usize;
    for v in g.vertices() {
        if !covered[v] {
            map[v] = count;
            count += 1;
        }
    }
    if count == 0 {
        return Some(Rational::zero());
    }
    let mut sub = Graph::new(count);
    let mut weights = Vec::new();
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        if !covered[a] && !covered[b] {
            sub.add_edge(map[a], map[b]).expect("subgraph edge");
            weights.push(p.weights()[e].clone());
        }
    }
    let subp = MatchingProblem::new(sub, weights).expect("weights aligned");
    max_weight_perfect_matching_certified(&subp).map(|(m, _)| m.weight().clone())
}

/// Maximum-weight perfect matching, or None when no perfect matching exists.
/// Deterministic: among all optima, returns the one whose edge set is
/// lexicographically smallest (built greedily by ascending edge id, each
/// candidate edge kept iff some optimum contains everything chosen so far
/// plus it).
pub fn max_weight_perfect_matching(p: &MatchingProblem) -> Option<Matching> {
    let (best, _) = max_weight_perfect_matching_certified(p)?;
    let g = p.graph();
    let n = g.vertex_count();
    if n == 0 {
        return Some(best);
    }
    let target = best.weight().clone();
    let mut covered = vec![false; n];
    let mut forced = EdgeSet::with_capacity(g.edge_count());
    let mut forced_weight = Rational::zero();
    let mut remaining = n;
    for e in g.edge_ids() {
        if remaining == 0 {
            break;
        }
        let (a, b) = g.endpoints(e);
        if covered[a] || covered[b] {
            continue;
        }
        covered[a] = true;
        covered[b] = true;
        let trial_weight = forced_weight.clone() + p.weights()[e].clone();
        let keeps_optimum = best_completion(p, &covered)
            .map_or(false, |rest| trial_weight.clone() + rest == target);
        if keeps_optimum {
            forced.insert(e);
            forced_weight = trial_weight;
            remaining -= 2;
        } else {
            covered[a] = false;
            covered[b] = false;
        }
    }
    debug_assert!(remaining == 0 && forced_weight == target);
    Some(Matching::new(forced, target))
}
