//! Reduction from instances with interval and parity-interval constraints to
//! maximum-weight perfect matching.
//!
//! Each vertex becomes its gadget; each original edge e = (x, y) becomes a
//! three-edge connector path stub_x - c_e - c'_e - stub_y with weights
//! (0, w(e), 0). In a perfect matching the middle edge is in exactly when
//! both legs are out, which forces both stubs onto their internal gadget
//! edges; so the stubs covered inside a gadget are precisely the endpoints
//! of active edges, and the gadget admits such a matching exactly when the
//! active count lies in the modeled degree set. Optional gadget vertices get
//! a zero-weight pendant partner, and all pendants plus a parity dummy form
//! a zero-weight clique that absorbs whichever pendants go unused.

use crate::gadget::{build_interval_gadget, build_parity_gadget, GadgetError};
use factorum_core::{EdgeId, EdgeSet, Graph, GraphError, Instance, Rational, VertexId};
use factorum_matching::{Matching, MatchingError, MatchingProblem};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("vertex {0} needs an interval or parity-interval constraint for the matching reduction")]
    NonIntervalConstraint(VertexId),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// The composed matching problem together with the maps back to the original
/// instance: which matching edge is the weight-carrying middle of each
/// original edge, and which matching vertices realize each original vertex.
#[derive(Debug)]
pub struct ReducedGraph {
    problem: MatchingProblem,
    /// Original edge id -> (left leg, middle, right leg) edge ids.
    connectors: Vec<(EdgeId, EdgeId, EdgeId)>,
    /// Original vertex -> its gadget's vertex ids, stubs first in incident
    /// edge-id order.
    gadget_vertices: Vec<Vec<VertexId>>,
    original_edges: usize,
}

impl ReducedGraph {
    pub fn problem(&self) -> &MatchingProblem {
        &self.problem
    }

    /// The matching edge carrying the weight of original edge `e`.
    pub fn middle_edge(&self, e: EdgeId) -> EdgeId {
        self.connectors[e].1
    }

    /// The zero-weight connector legs of original edge `e`.
    pub fn leg_edges(&self, e: EdgeId) -> (EdgeId, EdgeId) {
        (self.connectors[e].0, self.connectors[e].2)
    }

    pub fn gadget_vertices(&self, v: VertexId) -> &[VertexId] {
        &self.gadget_vertices[v]
    }

    /// Reads a factor off a perfect matching: original edge e is active
    /// exactly when its middle connector edge is matched.
    pub fn decode(&self, m: &Matching) -> EdgeSet {
        let mut active = EdgeSet::with_capacity(self.original_edges);
        for e in 0..self.original_edges {
            if m.edges().contains(self.middle_edge(e)) {
                active.insert(e);
            }
        }
        active
    }
}

/// Builds the composed matching problem for an instance whose constraints
/// are all intervals or parity intervals.
pub fn reduce_instance(inst: &Instance) -> Result<ReducedGraph, ReduceError> {
    let graph = inst.graph();
    let n = graph.vertex_count();
    let m = graph.edge_count();

    let mut blueprints = Vec::with_capacity(n);
    for v in graph.vertices() {
        let c = inst.constraint(v);
        let class = c.classify();
        let bp = if class.is_interval {
            build_interval_gadget(c.min(), c.max(), c.arity())?
        } else if class.is_parity_interval {
            build_parity_gadget(c.min(), c.max(), c.arity())?
        } else {
            return Err(ReduceError::NonIntervalConstraint(v));
        };
        blueprints.push(bp);
    }

    // Vertex layout: gadget blocks in vertex order, then connector pairs in
    // edge order, then pendants, then the parity dummy if needed.
    let mut base = Vec::with_capacity(n);
    let mut offset = 0;
    for bp in &blueprints {
        base.push(offset);
        offset += bp.vertex_count();
    }
    let connector_base = offset;
    let pendant_base = connector_base + 2 * m;
    let mut pendant_partner = Vec::new();
    for (v, bp) in blueprints.iter().enumerate() {
        for w in bp.optional_vertices() {
            pendant_partner.push(base[v] + w);
        }
    }
    let pendants = pendant_partner.len();
    let lower_sum: u64 = (0..n).map(|v| u64::from(inst.constraint(v).min())).sum();
    let dummies = ((pendants as u64 + lower_sum) % 2) as usize;
    let pool: Vec<VertexId> = (pendant_base..pendant_base + pendants + dummies).collect();
    let total = pendant_base + pendants + dummies;

    let mut composed = Graph::new(total);
    let mut weights = Vec::new();
    let zero = Rational::zero();

    for (v, bp) in blueprints.iter().enumerate() {
        for &(a, b) in bp.edges() {
            composed.add_edge(base[v] + a, base[v] + b)?;
            weights.push(zero.clone());
        }
    }

    // Stub i of vertex v serves the i-th incident edge in edge-id order.
    let mut stub_of = vec![std::collections::HashMap::new(); n];
    for v in graph.vertices() {
        let mut incident: Vec<EdgeId> = graph.neighbors(v).iter().map(|&(e, _)| e).collect();
        incident.sort_unstable();
        for (rank, e) in incident.into_iter().enumerate() {
            stub_of[v].insert(e, base[v] + rank);
        }
    }

    let mut connectors = Vec::with_capacity(m);
    for e in graph.edge_ids() {
        let (x, y) = graph.endpoints(e);
        let c = connector_base + 2 * e;
        let left = composed.add_edge(stub_of[x][&e], c)?;
        weights.push(zero.clone());
        let middle = composed.add_edge(c, c + 1)?;
        weights.push(inst.weight(e).clone());
        let right = composed.add_edge(c + 1, stub_of[y][&e])?;
        weights.push(zero.clone());
        connectors.push((left, middle, right));
    }

    for (i, &w) in pendant_partner.iter().enumerate() {
        composed.add_edge(w, pendant_base + i)?;
        weights.push(zero.clone());
    }
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i + 1..] {
            composed.add_edge(a, b)?;
            weights.push(zero.clone());
        }
    }

    let gadget_vertices = (0..n)
        .map(|v| (base[v]..base[v] + blueprints[v].vertex_count()).collect())
        .collect();
    Ok(ReducedGraph {
        problem: MatchingProblem::new(composed, weights)?,
        connectors,
        gadget_vertices,
        original_edges: m,
    })
}
