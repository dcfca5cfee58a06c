//! Matching gadgets: small graphs with labeled internal vertices whose
//! stub-coverage patterns realize a prescribed degree set.
//!
//! A gadget has `arity` stub vertices (numbered first) plus internal
//! vertices labeled required or optional. A stub pattern W is feasible when
//! some internal matching covers every stub in W, no stub outside W, and
//! every required vertex; optional vertices may go either way. The gadget
//! realizes degree k when every pattern of size k is feasible.

use factorum_core::{ConstraintError, DegreeConstraint};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("need 0 <= lo <= hi <= arity, got lo={lo}, hi={hi}, arity={arity}")]
    BadBounds { lo: u32, hi: u32, arity: u32 },
    #[error("parity gadget needs lo and hi of equal parity, got lo={lo}, hi={hi}")]
    ParityMismatch { lo: u32, hi: u32 },
    #[error("stub {stub} has internal degree {degree}, want exactly 1")]
    StubDegree { stub: usize, degree: usize },
    #[error("stubs {0} and {1} may not be adjacent")]
    StubStubEdge(usize, usize),
    #[error("edge endpoint {endpoint} out of range for {vertices} vertices")]
    EndpointOutOfRange { endpoint: usize, vertices: usize },
    #[error("loop or duplicate edge ({0}, {1})")]
    BadEdge(usize, usize),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// A validated gadget: stubs `0..arity`, then internal vertices with a
/// required flag each, an internal edge list, and the degree set the
/// construction is meant to realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetBlueprint {
    arity: usize,
    required: Vec<bool>,
    edges: Vec<(usize, usize)>,
    modeled: DegreeConstraint,
}

impl GadgetBlueprint {
    /// Validates the structural invariants: endpoints in range, no loops or
    /// duplicate edges, no stub-stub edges, and every stub with internal
    /// degree exactly one.
    pub fn new(
        arity: usize,
        required: Vec<bool>,
        edges: Vec<(usize, usize)>,
        modeled: DegreeConstraint,
    ) -> Result<Self, GadgetError> {
        let vertices = arity + required.len();
        let mut seen = HashSet::new();
        let mut stub_degree = vec![0usize; arity];
        for &(a, b) in &edges {
            for endpoint in [a, b] {
                if endpoint >= vertices {
                    return Err(GadgetError::EndpointOutOfRange { endpoint, vertices });
                }
            }
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(GadgetError::BadEdge(a, b));
            }
            if a < arity && b < arity {
                return Err(GadgetError::StubStubEdge(a, b));
            }
            for endpoint in [a, b] {
                if endpoint < arity {
                    stub_degree[endpoint] += 1;
                }
            }
        }
        if let Some((stub, &degree)) = stub_degree.iter().enumerate().find(|&(_, &d)| d != 1) {
            return Err(GadgetError::StubDegree { stub, degree });
        }
        Ok(GadgetBlueprint {
            arity,
            required,
            edges,
            modeled,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vertex_count(&self) -> usize {
        self.arity + self.required.len()
    }

    pub fn stubs(&self) -> std::ops::Range<usize> {
        0..self.arity
    }

    pub fn internals(&self) -> std::ops::Range<usize> {
        self.arity..self.vertex_count()
    }

    pub fn is_stub(&self, v: usize) -> bool {
        v < self.arity
    }

    /// True for internal vertices that every feasible matching must cover.
    /// Stubs are not labeled; their coverage is dictated by the pattern.
    pub fn is_required(&self, v: usize) -> bool {
        v >= self.arity && self.required[v - self.arity]
    }

    pub fn is_optional(&self, v: usize) -> bool {
        v >= self.arity && !self.required[v - self.arity]
    }

    pub fn optional_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.internals().filter(|&v| self.is_optional(v))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The degree set this gadget is built to realize.
    pub fn modeled(&self) -> &DegreeConstraint {
        &self.modeled
    }
}

/// Gadget realizing the interval `{lo..=hi}` at a vertex of degree `arity`.
///
/// Layout: stub i hangs off a required mirror vertex, and the `arity` mirrors
/// share a complete bipartite graph with an absorber layer of `arity - lo`
/// vertices, of which `hi - lo` are optional and the rest required. A pattern
/// of k covered stubs leaves `arity - k` mirrors for the absorbers, which fits
/// exactly when lo <= k <= hi.
pub fn build_interval_gadget(lo: u32, hi: u32, arity: u32) -> Result<GadgetBlueprint, GadgetError> {
    if lo > hi || hi > arity {
        return Err(GadgetError::BadBounds { lo, hi, arity });
    }
    let d = arity as usize;
    let absorbers = (arity - lo) as usize;
    let optional = (hi - lo) as usize;
    let mut required = vec![true; d];
    required.extend((0..absorbers).map(|j| j >= optional));
    let mut edges = Vec::with_capacity(d + d * absorbers);
    for i in 0..d {
        edges.push((i, d + i));
    }
    for i in 0..d {
        for j in 0..absorbers {
            edges.push((d + i, 2 * d + j));
        }
    }
    GadgetBlueprint::new(d, required, edges, DegreeConstraint::interval(arity, lo, hi)?)
}

/// Gadget realizing the parity interval `{lo, lo+2, ..., hi}` at a vertex of
/// degree `arity`; `lo` and `hi` must agree mod 2.
///
/// Same mirror/absorber layout as the interval gadget, but every absorber is
/// required and `(hi - lo) / 2` disjoint slack edges pair consecutive
/// absorbers. Each slack edge frees two absorbers from mirror duty at once,
/// so the reachable pattern sizes step by two.
pub fn build_parity_gadget(lo: u32, hi: u32, arity: u32) -> Result<GadgetBlueprint, GadgetError> {
    if lo > hi || hi > arity {
        return Err(GadgetError::BadBounds { lo, hi, arity });
    }
    if (hi - lo) % 2 != 0 {
        return Err(GadgetError::ParityMismatch { lo, hi });
    }
    let d = arity as usize;
    let absorbers = (arity - lo) as usize;
    let slack = ((hi - lo) / 2) as usize;
    let mut required = vec![true; d];
    required.extend(std::iter::repeat(true).take(absorbers));
    let mut edges = Vec::with_capacity(d + d * absorbers + slack);
    for i in 0..d {
        edges.push((i, d + i));
    }
    for i in 0..d {
        for j in 0..absorbers {
            edges.push((d + i, 2 * d + j));
        }
    }
    for t in 0..slack {
        edges.push((2 * d + 2 * t, 2 * d + 2 * t + 1));
    }
    GadgetBlueprint::new(
        d,
        required,
        edges,
        DegreeConstraint::parity_interval(arity, lo, hi)?,
    )
}
