//! Weighted general-factor instances: a graph, one degree constraint per
//! vertex, exact rational edge weights, the sub-instance constructors used
//! by the recursion, and an exhaustive reference optimizer.

use crate::constraint::{ConstraintError, DegreeConstraint, SplitBranch};
use crate::graph::{EdgeSet, Graph, GraphError, VertexId};
use crate::rational::Rational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("expected {expected} constraints, got {got}")]
    ConstraintCount { expected: usize, got: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("constraint arity {arity} at vertex {vertex} does not match degree {degree}")]
    ArityMismatch { vertex: VertexId, arity: u32, degree: usize },
    #[error("vertex {0} does not carry a type constraint")]
    NotTypeVertex(VertexId),
    #[error("edge set is not a factor: degree {degree} at vertex {vertex} not in {constraint}")]
    NotAFactor { vertex: VertexId, degree: usize, constraint: String },
    #[error("pinned vertex {0} is outside the type-vertex set")]
    PinOutsideT(VertexId),
    #[error("edge count {0} exceeds the brute-force cap {1}")]
    BruteForceCap(usize, usize),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The instance Ω = (G, π, ω): graph, per-vertex degree constraints with
/// arity equal to the vertex degree, and exact rational edge weights.
#[derive(Debug, Clone)]
pub struct Instance {
    graph: Graph,
    constraints: Vec<DegreeConstraint>,
    weights: Vec<Rational>,
}

/// A factor: edge subset whose degree at every vertex is feasible. The
/// weight is computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    edges: EdgeSet,
    weight: Rational,
}

impl Factor {
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

/// Pinning request for a slice: the type vertices in `pinned` get the
/// complement of their base-factor parity class, all other type vertices
/// get the class itself. At most two pins where the algorithm uses it;
/// arbitrary here.
#[derive(Debug, Clone, Default)]
pub struct SliceSpec {
    pinned: Vec<VertexId>,
}

impl SliceSpec {
    pub fn new(pinned: impl IntoIterator<Item = VertexId>) -> Self {
        let mut pinned: Vec<VertexId> = pinned.into_iter().collect();
        pinned.sort_unstable();
        pinned.dedup();
        SliceSpec { pinned }
    }

    pub fn pinned(&self) -> &[VertexId] {
        &self.pinned
    }
}

/// One line of a validation report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ArityMismatch { vertex: VertexId, arity: u32, degree: usize },
    NotSolverAdmissible { vertex: VertexId, constraint: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ArityMismatch { vertex, arity, degree } => write!(
                f,
                "vertex {vertex}: constraint arity {arity} differs from degree {degree}"
            ),
            Violation::NotSolverAdmissible { vertex, constraint } => write!(
                f,
                "vertex {vertex}: constraint {constraint} is outside the solvable families"
            ),
        }
    }
}

/// Result of `Instance::validate`: hard invariant violations plus solver
/// admissibility. An instance with violations can still be fed to the
/// brute-force optimizer, which accepts arbitrary feasible sets.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub solver_admissible: bool,
}

impl Instance {
    /// Builds an instance, enforcing count and arity invariants.
    /// Admissibility for the polynomial solver is reported by `validate`,
    /// not enforced here: the brute-force oracle accepts more.
    pub fn new(
        graph: Graph,
        constraints: Vec<DegreeConstraint>,
        weights: Vec<Rational>,
    ) -> Result<Self, InstanceError> {
        if constraints.len() != graph.vertex_count() {
            return Err(InstanceError::ConstraintCount {
                expected: graph.vertex_count(),
                got: constraints.len(),
            });
        }
        if weights.len() != graph.edge_count() {
            return Err(InstanceError::WeightCount {
                expected: graph.edge_count(),
                got: weights.len(),
            });
        }
        for v in graph.vertices() {
            let arity = constraints[v].arity();
            let degree = graph.degree(v);
            if arity as usize != degree {
                return Err(InstanceError::ArityMismatch { vertex: v, arity, degree });
            }
        }
        Ok(Instance { graph, constraints, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn constraint(&self, v: VertexId) -> &DegreeConstraint {
        &self.constraints[v]
    }

    pub fn constraints(&self) -> &[DegreeConstraint] {
        &self.constraints
    }

    pub fn weight(&self, e: usize) -> &Rational {
        &self.weights[e]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Re-checks invariants and reports solver admissibility per vertex.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut solver_admissible = true;
        for v in self.graph.vertices() {
            let c = &self.constraints[v];
            if c.arity() as usize != self.graph.degree(v) {
                violations.push(Violation::ArityMismatch {
                    vertex: v,
                    arity: c.arity(),
                    degree: self.graph.degree(v),
                });
            }
            if !c.is_admissible() {
                solver_admissible = false;
                violations.push(Violation::NotSolverAdmissible {
                    vertex: v,
                    constraint: c.to_string(),
                });
            }
        }
        let solver_admissible = solver_admissible
            && violations.iter().all(|v| matches!(v, Violation::NotSolverAdmissible { .. }));
        ValidationReport { violations, solver_admissible }
    }

    /// True iff every vertex (covered or not) has a feasible degree in `s`.
    pub fn is_factor(&self, s: &EdgeSet) -> bool {
        self.graph
            .vertices()
            .all(|v| self.constraints[v].contains(s.degree_in(&self.graph, v) as u32))
    }

    /// Sum of member edge weights.
    pub fn weight_of(&self, s: &EdgeSet) -> Rational {
        s.iter().map(|e| &self.weights[e]).sum()
    }

    /// Wraps an edge set into a factor after checking feasibility.
    pub fn factor(&self, edges: EdgeSet) -> Result<Factor, InstanceError> {
        for v in self.graph.vertices() {
            let degree = edges.degree_in(&self.graph, v);
            if !self.constraints[v].contains(degree as u32) {
                return Err(InstanceError::NotAFactor {
                    vertex: v,
                    degree,
                    constraint: self.constraints[v].to_string(),
                });
            }
        }
        let weight = self.weight_of(&edges);
        Ok(Factor { edges, weight })
    }

    /// Vertices whose constraint is type-1 or type-2, ascending.
    pub fn t_set(&self) -> Vec<VertexId> {
        self.graph
            .vertices()
            .filter(|&v| self.constraints[v].classify().in_t())
            .collect()
    }

    /// Replaces the constraint at a type vertex by one half of its parity
    /// split; the vertex leaves the type set.
    pub fn restrict_parity(&self, u: VertexId, branch: SplitBranch) -> Result<Instance, InstanceError> {
        if !self.constraints[u].classify().in_t() {
            return Err(InstanceError::NotTypeVertex(u));
        }
        let mut constraints = self.constraints.clone();
        constraints[u] = constraints[u].split_branch(branch)?;
        Ok(Instance {
            graph: self.graph.clone(),
            constraints,
            weights: self.weights.clone(),
        })
    }

    /// The slice instance: at pinned type vertices the constraint becomes
    /// the complement of the base factor's parity class, at the remaining
    /// type vertices the class itself, elsewhere unchanged. The result has
    /// interval/parity-interval constraints only.
    pub fn slice(&self, base: &Factor, spec: &SliceSpec) -> Result<Instance, InstanceError> {
        self.factor(base.edges.clone())?;
        let t: Vec<VertexId> = self.t_set();
        for &w in spec.pinned() {
            if !t.contains(&w) {
                return Err(InstanceError::PinOutsideT(w));
            }
        }
        let mut constraints = self.constraints.clone();
        for &v in &t {
            let degree = base.edges.degree_in(&self.graph, v) as u32;
            let class = self.constraints[v].max_parity_subset(degree)?;
            constraints[v] = if spec.pinned().contains(&v) {
                self.constraints[v].complement_within(&class)?
            } else {
                class
            };
        }
        Ok(Instance {
            graph: self.graph.clone(),
            constraints,
            weights: self.weights.clone(),
        })
    }

    /// Type vertices where the two factors' degrees differ in parity.
    pub fn t_odd(&self, f: &Factor, g: &Factor) -> Vec<VertexId> {
        self.t_set()
            .into_iter()
            .filter(|&v| {
                let df = f.edges.degree_in(&self.graph, v);
                let dg = g.edges.degree_in(&self.graph, v);
                df % 2 != dg % 2
            })
            .collect()
    }

    /// Substitutes the constraint at one vertex (arity must match; used by
    /// structural constructions).
    pub fn with_constraint(&self, v: VertexId, c: DegreeConstraint) -> Result<Instance, InstanceError> {
        if c.arity() as usize != self.graph.degree(v) {
            return Err(InstanceError::ArityMismatch {
                vertex: v,
                arity: c.arity(),
                degree: self.graph.degree(v),
            });
        }
        let mut constraints = self.constraints.clone();
        constraints[v] = c;
        Ok(Instance {
            graph: self.graph.clone(),
            constraints,
            weights: self.weights.clone(),
        })
    }
}

/// Hard cap on the exhaustive optimizer.
pub const BRUTE_FORCE_EDGE_CAP: usize = 24;

/// Exact maximum-weight factor by exhaustive search over edge subsets with
/// per-vertex degree pruning. Accepts any feasible sets (not restricted to
/// the solvable families). Ties break toward the lexicographically
/// smallest edge set. Returns `None` when no factor exists.
pub fn brute_force_opt(inst: &Instance) -> Result<Option<Factor>, InstanceError> {
    let m = inst.edge_count();
    if m > BRUTE_FORCE_EDGE_CAP {
        return Err(InstanceError::BruteForceCap(m, BRUTE_FORCE_EDGE_CAP));
    }
    let graph = inst.graph();
    let n = graph.vertex_count();
    // Isolated vertices are untouched by every subset; they must accept 0.
    for v in graph.vertices() {
        if graph.degree(v) == 0 && !inst.constraint(v).contains(0) {
            return Ok(None);
        }
    }
    let mut chosen = vec![0u32; n]; // decided incident edges taken
    let mut remaining: Vec<u32> = (0..n).map(|v| graph.degree(v) as u32).collect();
    let mut picked: Vec<usize> = Vec::new();
    let mut weight = Rational::zero();
    let mut best: Option<(Rational, Vec<usize>)> = None;

    // A vertex stays viable iff some feasible value lies in
    // [chosen, chosen + remaining].
    fn viable(inst: &Instance, v: VertexId, chosen: u32, remaining: u32) -> bool {
        let mask = inst.constraint(v).mask();
        let window = if chosen + remaining >= 63 {
            u64::MAX
        } else {
            (1u64 << (chosen + remaining + 1)) - 1
        };
        mask & ((window >> chosen) << chosen) != 0
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        inst: &Instance,
        e: usize,
        chosen: &mut Vec<u32>,
        remaining: &mut Vec<u32>,
        picked: &mut Vec<usize>,
        weight: &mut Rational,
        best: &mut Option<(Rational, Vec<usize>)>,
    ) {
        let m = inst.edge_count();
        if e == m {
            let better = match best {
                None => true,
                Some((bw, bset)) => *weight > *bw || (*weight == *bw && *picked < *bset),
            };
            if better {
                *best = Some((weight.clone(), picked.clone()));
            }
            return;
        }
        let (a, b) = inst.graph().endpoints(e);
        // Branch 1: take the edge.
        chosen[a] += 1;
        chosen[b] += 1;
        remaining[a] -= 1;
        remaining[b] -= 1;
        if viable(inst, a, chosen[a], remaining[a]) && viable(inst, b, chosen[b], remaining[b]) {
            picked.push(e);
            *weight += inst.weight(e);
            descend(inst, e + 1, chosen, remaining, picked, weight, best);
            *weight -= inst.weight(e);
            picked.pop();
        }
        chosen[a] -= 1;
        chosen[b] -= 1;
        // Branch 2: skip the edge.
        if viable(inst, a, chosen[a], remaining[a]) && viable(inst, b, chosen[b], remaining[b]) {
            descend(inst, e + 1, chosen, remaining, picked, weight, best);
        }
        remaining[a] += 1;
        remaining[b] += 1;
    }

    descend(inst, 0, &mut chosen, &mut remaining, &mut picked, &mut weight, &mut best);
    match best {
        None => Ok(None),
        Some((_, edges)) => {
            let set = EdgeSet::from_edges(graph, edges)?;
            Ok(Some(inst.factor(set).expect("search result is a factor")))
        }
    }
}
