//! Finding positive-weight basic factors: an exhaustive stream for small
//! instances and a constructive search that peels one edge-shrinking or
//! shape-producing step at a time.

use crate::key::{classify_shape, BasicFactor, KeyInstance};
use crate::StructureError;
use factorum_core::{
    DegreeConstraint, EdgeId, EdgeSet, Graph, Instance, PathDescriptor, Rational, VertexId,
};
use num_traits::Zero;

/// Upper bound on edge count for exhaustive basic-factor enumeration.
pub const ENUMERATION_EDGE_CAP: usize = 20;

/// Lazy scan over all edge subsets in ascending mask order, yielding each
/// basic factor exactly once.
pub struct BasicFactorStream<'a> {
    key: &'a KeyInstance,
    next: u64,
    limit: u64,
}

impl Iterator for BasicFactorStream<'_> {
    type Item = BasicFactor;

    fn next(&mut self) -> Option<BasicFactor> {
        let m = self.key.instance().edge_count();
        while self.next < self.limit {
            let mask = self.next;
            self.next += 1;
            let mut edges = EdgeSet::with_capacity(m);
            for e in 0..m {
                if mask & (1 << e) != 0 {
                    edges.insert(e);
                }
            }
            if let Ok(Some(bf)) = BasicFactor::new(self.key, edges) {
                return Some(bf);
            }
        }
        None
    }
}

/// Streams every basic factor of the instance, deterministically.
pub fn enumerate_basic_factors(
    key: &KeyInstance,
) -> Result<BasicFactorStream<'_>, StructureError> {
    let m = key.instance().edge_count();
    if m > ENUMERATION_EDGE_CAP {
        return Err(StructureError::EdgeCapExceeded { got: m, cap: ENUMERATION_EDGE_CAP });
    }
    Ok(BasicFactorStream { key, next: 0, limit: 1u64 << m })
}

/// Constructs a basic factor of strictly positive weight. Requires the
/// whole graph's weight to be positive; one is then guaranteed to exist.
///
/// The search never enumerates: it either recognizes the whole graph as
/// basic or produces a strictly smaller positive-weight factor to recurse
/// into, via a positive component, a cycle split, or splitting the graph
/// at a long bridge.
pub fn find_positive_basic_factor(key: &KeyInstance) -> Result<BasicFactor, StructureError> {
    if key.total_weight() <= Rational::zero() {
        return Err(StructureError::NonPositiveTotal);
    }
    let edges = search(key);
    let bf = BasicFactor::new(key, edges)
        .expect("the search returns factors")
        .expect("the search returns one of the five shapes");
    assert!(bf.is_positive(), "the search keeps the weight positive");
    Ok(bf)
}

/// A positive basic factor with even degree (possibly zero) at `u`.
/// Requires `u` of degree 1, or of degree 3 with an even-capable label;
/// the whole graph's weight must be positive and strictly heavier than
/// every basic factor. Both weight hypotheses are checked by a full
/// enumeration sweep, under the edge cap.
pub fn find_even_at_u_basic_factor(
    key: &KeyInstance,
    u: VertexId,
) -> Result<BasicFactor, StructureError> {
    let inst = key.instance();
    if u >= inst.vertex_count() {
        return Err(StructureError::UnsuitableVertex(u));
    }
    let degree = inst.graph().degree(u);
    if !(degree == 1 || key.is_type2(u)) {
        return Err(StructureError::UnsuitableVertex(u));
    }
    let total = key.total_weight();
    if total <= Rational::zero() {
        return Err(StructureError::NonPositiveTotal);
    }
    let mut candidate = None;
    for bf in enumerate_basic_factors(key)? {
        if bf.weight() >= &total {
            return Err(StructureError::HeavyBasicFactor);
        }
        if candidate.is_none() && bf.is_positive() && bf.degree_at(key, u) % 2 == 0 {
            candidate = Some(bf);
        }
    }
    Ok(candidate.expect("an even-degree positive basic factor exists under these hypotheses"))
}

/// One step of the search: either a positive basic factor of the current
/// instance, or a positive factor with strictly fewer edges to recurse
/// into.
enum Step {
    Basic(EdgeSet),
    Shrink(EdgeSet),
}

/// Core recursion: edges of a positive basic factor of `cur`, whose total
/// weight must be positive.
fn search(cur: &KeyInstance) -> EdgeSet {
    let inst = cur.instance();
    let g = inst.graph();
    let full = EdgeSet::full(g);
    if classify_shape(cur, &full).is_some() {
        return full;
    }
    match shrink_step(cur) {
        Step::Basic(s) => {
            debug_assert!(classify_shape(cur, &s).is_some());
            assert!(inst.weight_of(&s) > Rational::zero(), "basic steps stay positive");
            s
        }
        Step::Shrink(f) => {
            assert!(f.len() < g.edge_count(), "shrink steps drop an edge");
            assert!(inst.weight_of(&f) > Rational::zero(), "shrink steps stay positive");
            let (sub, _, emap) = cur.induced_by(&f).expect("shrink steps yield factors");
            let inner = search(&sub);
            let mut lifted = EdgeSet::with_capacity(g.edge_count());
            for e in inner.iter() {
                lifted.insert(emap[e]);
            }
            debug_assert!(classify_shape(cur, &lifted).is_some());
            lifted
        }
    }
}

fn shrink_step(cur: &KeyInstance) -> Step {
    let inst = cur.instance();
    let g = inst.graph();
    let components = g.edge_set_components(&EdgeSet::full(g));
    if components.len() > 1 {
        let comp = components
            .into_iter()
            .find(|c| inst.weight_of(c) > Rational::zero())
            .expect("a positive total has a positive component");
        return Step::Shrink(comp);
    }
    if g.is_two_connected() {
        two_connected_step(cur)
    } else {
        bridge_step(cur)
    }
}

/// Connected 2-connected case, split on how many type-1 vertices exist.
fn two_connected_step(cur: &KeyInstance) -> Step {
    let inst = cur.instance();
    let g = inst.graph();
    let m = g.edge_count();
    let type1: Vec<VertexId> = g.vertices().filter(|&v| cur.is_type1(v)).collect();
    match type1.len() {
        // Only type-2 branch vertices: any cycle through one of them has
        // at least two (a lone one would hang a bridge off the cycle).
        0 => {
            let hub = g
                .vertices()
                .find(|&v| g.degree(v) == 3)
                .expect("a 2-connected non-cycle has a degree-3 vertex");
            let c = g
                .find_cycle_through(hub)
                .expect("2-connected graphs have a cycle through every vertex");
            cycle_split(cur, &c)
        }
        // One type-1 vertex u: grow a theta around u, then trade it for a
        // cycle that avoids u entirely and splits cleanly.
        1 => {
            let u = type1[0];
            let c = g
                .find_cycle_through(u)
                .expect("2-connected graphs have a cycle through every vertex");
            let c_edges = c.edge_set(m);
            let p = g
                .find_escape_path(&c_edges, u)
                .expect("a third edge escapes the cycle and returns");
            let h = c_edges.union(&p.edge_set(m)).expect("same graph");
            let s = h
                .covered_vertices(g)
                .into_iter()
                .find(|&x| g.degree(x) > h.degree_in(g, x))
                .expect("the graph extends beyond the theta");
            let p2 = g
                .find_escape_path(&h, s)
                .expect("a third edge escapes the theta and returns");
            let r = p2.last();
            debug_assert!(cur.is_type2(s) && cur.is_type2(r));
            let mut banned = vec![false; g.vertex_count()];
            banned[u] = true;
            let back = g
                .bfs_path(s, r, &banned, Some(&h), None)
                .expect("a theta stays connected without one branch vertex");
            cycle_split(cur, &close_cycle(g, &p2, &back.reversed()))
        }
        // Two or more type-1 vertices: pull a cycle through two of them
        // and repair its type-2 count if it is exactly one.
        _ => {
            let c = g
                .cycle_through_pair(type1[0], type1[1])
                .expect("2-connected graphs have a cycle through any two vertices");
            let ring = &c.vertices()[..c.vertices().len() - 1];
            let twos: Vec<usize> =
                (0..ring.len()).filter(|&i| cur.is_type2(ring[i])).collect();
            if twos.len() != 1 {
                return cycle_split(cur, &c);
            }
            let pos_v = twos[0];
            let v = ring[pos_v];
            let c_edges = c.edge_set(m);
            let p = g
                .find_escape_path(&c_edges, v)
                .expect("a third edge escapes the cycle and returns");
            let x = p.last();
            debug_assert!(cur.is_type1(x));
            let pos_x = ring
                .iter()
                .position(|&y| y == x)
                .expect("the escape returns to the cycle");
            let w = ring
                .iter()
                .copied()
                .filter(|&y| cur.is_type1(y) && y != x)
                .min()
                .expect("the cycle holds two type-1 vertices");
            let escape_twos = p.vertices().iter().filter(|&&y| cur.is_type2(y)).count();
            if escape_twos >= 2 {
                // Close the escape with the cycle arc holding w: that
                // cycle has two of each type.
                let arc = ring_arc(g, &c, pos_x, pos_v);
                let ret = if arc.interior_vertices().contains(&w) {
                    arc
                } else {
                    ring_arc(g, &c, pos_v, pos_x).reversed()
                };
                return cycle_split(cur, &close_cycle(g, &p, &ret));
            }
            // v is the only type-2 of the theta h = c + p. Escape from w
            // and route back through v or past it, matching the escape's
            // type-2 content.
            let h = c_edges.union(&p.edge_set(m)).expect("same graph");
            let p2 = g
                .find_escape_path(&h, w)
                .expect("a third edge escapes the theta and returns");
            let s = p2.last();
            debug_assert!(cur.is_type1(s) && s != v && s != x);
            let back = if p2.vertices().iter().any(|&y| cur.is_type2(y)) {
                theta_path_through(g, &h, v, x, w, s)
            } else {
                let mut banned = vec![false; g.vertex_count()];
                banned[v] = true;
                g.bfs_path(w, s, &banned, Some(&h), None)
                    .expect("a theta stays connected without one branch vertex")
            };
            cycle_split(cur, &close_cycle(g, &p2, &back.reversed()))
        }
    }
}

/// Turns a cycle whose type-1 and type-2 counts are both away from one
/// into a step: a positive cycle yields itself or a positive arc between
/// type-1 vertices; a non-positive one is cut out of the graph along a
/// non-positive stretch between type-2 vertices.
fn cycle_split(cur: &KeyInstance, c: &PathDescriptor) -> Step {
    let inst = cur.instance();
    let g = inst.graph();
    let m = g.edge_count();
    let ring = &c.vertices()[..c.vertices().len() - 1];
    let ones: Vec<usize> = (0..ring.len()).filter(|&i| cur.is_type1(ring[i])).collect();
    let twos: Vec<usize> = (0..ring.len()).filter(|&i| cur.is_type2(ring[i])).collect();
    assert!(ones.len() != 1 && twos.len() != 1, "split cycles carry type counts away from one");
    let c_edges = c.edge_set(m);
    if inst.weight_of(&c_edges) > Rational::zero() {
        if ones.is_empty() {
            return Step::Basic(c_edges);
        }
        for (j, &start) in ones.iter().enumerate() {
            let arc = arc_edges(c, start, ones[(j + 1) % ones.len()], m);
            if inst.weight_of(&arc) > Rational::zero() {
                return Step::Basic(arc);
            }
        }
        unreachable!("arc weights sum to the positive cycle weight");
    }
    if twos.is_empty() {
        return Step::Shrink(EdgeSet::full(g).difference(&c_edges).expect("same graph"));
    }
    for (j, &start) in twos.iter().enumerate() {
        let arc = arc_edges(c, start, twos[(j + 1) % twos.len()], m);
        if inst.weight_of(&arc) <= Rational::zero() {
            return Step::Shrink(EdgeSet::full(g).difference(&arc).expect("same graph"));
        }
    }
    unreachable!("arc weights sum to the non-positive cycle weight");
}

/// Splits the graph at a long bridge, solves the side that is neither a
/// point nor a cycle with its anchor split open, and maps the answer back.
fn bridge_step(cur: &KeyInstance) -> Step {
    let inst = cur.instance();
    let g = inst.graph();
    let m = g.edge_count();
    let bridge = g
        .bridges()
        .into_iter()
        .min()
        .expect("a connected subcubic graph that is not 2-connected has a bridge");
    let mut span = EdgeSet::with_capacity(m);
    span.insert(bridge);
    let (ba, bb) = g.endpoints(bridge);
    let end_a = extend_through_degree_two(g, bridge, ba.min(bb), &mut span);
    let end_b = extend_through_degree_two(g, bridge, ba.max(bb), &mut span);
    debug_assert_ne!(end_a, end_b);
    let side_a = side_edges(g, end_a, &span);
    let (anchor, side) = if is_proper_side(g, &side_a) {
        (end_a, side_a)
    } else {
        let side_b = side_edges(g, end_b, &span);
        assert!(is_proper_side(g, &side_b), "one side is neither a point nor a cycle");
        (end_b, side_b)
    };

    let rest = EdgeSet::full(g).difference(&side).expect("same graph");
    let rest_w = inst.weight_of(&rest);
    let anchored: Vec<EdgeId> = g
        .neighbors(anchor)
        .iter()
        .map(|&(e, _)| e)
        .filter(|&e| side.contains(e))
        .collect();
    let [e1, e2] = anchored[..] else {
        panic!("a degree-3 bridge endpoint keeps two side edges");
    };
    debug_assert!(e1 < e2);

    // The side instance: the anchor splits into two degree-1 ends and the
    // weight of everything off the side rides on its first edge.
    let (sub, vmap, emap) = g.subgraph_spanned_by(&side);
    let anchor_sub = vmap.binary_search(&anchor).expect("the anchor spans its side");
    let e1_sub = emap.binary_search(&e1).expect("side edges map into the side");
    let e2_sub = emap.binary_search(&e2).expect("side edges map into the side");
    let far_end = sub.vertex_count();
    let mut split = Graph::new(sub.vertex_count() + 1);
    for j in sub.edge_ids() {
        let (x, y) = sub.endpoints(j);
        let (x, y) = if j != e2_sub {
            (x, y)
        } else if x == anchor_sub {
            (far_end, y)
        } else {
            (x, far_end)
        };
        split.add_edge(x, y).expect("splitting one endpoint keeps the graph simple");
    }
    let loose = DegreeConstraint::interval(1, 0, 1).expect("static label");
    let mut constraints: Vec<DegreeConstraint> = (0..sub.vertex_count())
        .map(|x| if x == anchor_sub { loose.clone() } else { inst.constraint(vmap[x]).clone() })
        .collect();
    constraints.push(loose);
    let mut weights: Vec<Rational> = emap.iter().map(|&e| inst.weight(e).clone()).collect();
    weights[e1_sub] += &rest_w;
    let side_key = KeyInstance::new(
        Instance::new(split, constraints, weights).expect("carried labels match degrees"),
    )
    .expect("splitting a degree-3 anchor keeps labels degree forced");

    let found = search(&side_key);
    let has1 = found.contains(e1_sub);
    let has2 = found.contains(e2_sub);
    let mut mapped = EdgeSet::with_capacity(m);
    for e in found.iter() {
        mapped.insert(emap[e]);
    }

    let union =
        |a: &EdgeSet, b: &EdgeSet| -> EdgeSet { a.union(b).expect("same graph") };
    let one_ok = inst.constraint(anchor).contains(1);
    match (has1, has2) {
        // The answer avoids the anchor: it transfers as found.
        (false, false) => Step::Basic(mapped),
        // The answer ends on the weighted edge: rejoining the off-side
        // part realizes the carried bonus, or one summand already wins.
        (true, false) => {
            if !one_ok {
                Step::Shrink(union(&mapped, &rest))
            } else if inst.weight_of(&mapped) > Rational::zero() {
                Step::Basic(mapped)
            } else {
                Step::Shrink(rest)
            }
        }
        // The answer ends on the plain edge: its weight is genuine.
        (false, true) => {
            if one_ok {
                Step::Basic(mapped)
            } else if inst.weight_of(&side) > Rational::zero() {
                Step::Shrink(side)
            } else {
                Step::Shrink(union(&mapped, &rest))
            }
        }
        // The answer runs end to end: it closes into a cycle through the
        // anchor, and rejoining the off-side part gives it degree 3.
        (true, true) => Step::Shrink(union(&mapped, &rest)),
    }
}

/// Walks from `start` (an endpoint of `through`) over degree-2 vertices,
/// adding the traversed edges to `span`, and returns the first vertex of
/// other degree.
fn extend_through_degree_two(
    g: &Graph,
    through: EdgeId,
    start: VertexId,
    span: &mut EdgeSet,
) -> VertexId {
    let mut e = through;
    let mut v = start;
    while g.degree(v) == 2 {
        let &(ne, nv) = g
            .neighbors(v)
            .iter()
            .find(|&&(id, _)| id != e)
            .expect("degree 2 leaves one way forward");
        span.insert(ne);
        e = ne;
        v = nv;
    }
    v
}

/// Edges reachable from `from` without crossing `span`.
fn side_edges(g: &Graph, from: VertexId, span: &EdgeSet) -> EdgeSet {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = EdgeSet::with_capacity(g.edge_count());
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &(e, w) in g.neighbors(v) {
            if span.contains(e) {
                continue;
            }
            out.insert(e);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out
}

/// Neither a single vertex (empty) nor a cycle (all degrees two).
fn is_proper_side(g: &Graph, side: &EdgeSet) -> bool {
    !side.is_empty()
        && side
            .covered_vertices(g)
            .into_iter()
            .any(|x| side.degree_in(g, x) != 2)
}

/// Closes `out` (a to b) with `ret` (b to a) into a simple cycle.
fn close_cycle(g: &Graph, out: &PathDescriptor, ret: &PathDescriptor) -> PathDescriptor {
    debug_assert_eq!(out.last(), ret.first());
    debug_assert_eq!(out.first(), ret.last());
    let mut vertices = out.vertices().to_vec();
    let mut edges = out.edge_ids().to_vec();
    vertices.extend_from_slice(&ret.vertices()[1..]);
    edges.extend_from_slice(ret.edge_ids());
    PathDescriptor::from_parts(g, vertices, edges).expect("edge-disjoint legs close a simple cycle")
}

/// The cycle walked forward from ring index `from` to ring index `to`.
fn ring_arc(g: &Graph, c: &PathDescriptor, from: usize, to: usize) -> PathDescriptor {
    let ring = &c.vertices()[..c.vertices().len() - 1];
    let mut vertices = vec![ring[from]];
    let mut edges = Vec::new();
    let mut i = from;
    while i != to {
        edges.push(c.edge_ids()[i]);
        i = (i + 1) % ring.len();
        vertices.push(ring[i]);
    }
    PathDescriptor::from_parts(g, vertices, edges).expect("cycle arcs are simple paths")
}

/// Edge set of the arc from ring index `start` to ring index `stop`.
fn arc_edges(c: &PathDescriptor, start: usize, stop: usize, capacity: usize) -> EdgeSet {
    let mut s = EdgeSet::with_capacity(capacity);
    let mut i = start;
    loop {
        s.insert(c.edge_ids()[i]);
        i = (i + 1) % c.edge_ids().len();
        if i == stop {
            return s;
        }
    }
}

/// Path from `w` to `s` inside the theta `h` (branch vertices `v`, `x`)
/// that passes through `v`. Both `w` and `s` sit strictly inside
/// branches; same-branch pairs detour over `x` via another branch.
fn theta_path_through(
    g: &Graph,
    h: &EdgeSet,
    v: VertexId,
    x: VertexId,
    w: VertexId,
    s: VertexId,
) -> PathDescriptor {
    let branches = theta_branches(g, h, v, x);
    let locate = |y: VertexId| -> (usize, usize) {
        branches
            .iter()
            .enumerate()
            .find_map(|(bi, b)| b.vertices().iter().position(|&z| z == y).map(|i| (bi, i)))
            .expect("the vertex sits on one branch")
    };
    let (bw, pw) = locate(w);
    let (bs, ps) = locate(s);
    if bw != bs {
        let to_v = path_prefix(g, &branches[bw], pw).reversed();
        let from_v = path_prefix(g, &branches[bs], ps);
        return join_paths(g, &[&to_v, &from_v]);
    }
    let b = &branches[bw];
    let (lo, hi) = if pw < ps { (pw, ps) } else { (ps, pw) };
    let detour = &branches[(0..branches.len()).find(|&i| i != bw).expect("three branches")];
    let low_to_v = path_prefix(g, b, lo).reversed();
    let x_to_high = path_suffix(g, b, hi).reversed();
    let low_to_high = join_paths(g, &[&low_to_v, detour, &x_to_high]);
    if pw < ps {
        low_to_high
    } else {
        low_to_high.reversed()
    }
}

/// The three branch paths of the theta `h`, each from `v` to `x`.
fn theta_branches(g: &Graph, h: &EdgeSet, v: VertexId, x: VertexId) -> Vec<PathDescriptor> {
    let starts: Vec<(EdgeId, VertexId)> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&(e, _)| h.contains(e))
        .collect();
    debug_assert_eq!(starts.len(), 3);
    starts
        .into_iter()
        .map(|(e0, n0)| {
            let mut vertices = vec![v, n0];
            let mut edges = vec![e0];
            let (mut pe, mut pv) = (e0, n0);
            while pv != x {
                let &(ne, nv) = g
                    .neighbors(pv)
                    .iter()
                    .find(|&&(ie, _)| ie != pe && h.contains(ie))
                    .expect("branch interiors continue to the far vertex");
                vertices.push(nv);
                edges.push(ne);
                pe = ne;
                pv = nv;
            }
            PathDescriptor::from_parts(g, vertices, edges).expect("theta branches are simple")
        })
        .collect()
}

/// First `upto` edges of `p` as a path.
fn path_prefix(g: &Graph, p: &PathDescriptor, upto: usize) -> PathDescriptor {
    PathDescriptor::from_parts(
        g,
        p.vertices()[..=upto].to_vec(),
        p.edge_ids()[..upto].to_vec(),
    )
    .expect("prefixes of simple paths are simple")
}

/// Edges of `p` from position `from` on, as a path.
fn path_suffix(g: &Graph, p: &PathDescriptor, from: usize) -> PathDescriptor {
    PathDescriptor::from_parts(
        g,
        p.vertices()[from..].to_vec(),
        p.edge_ids()[from..].to_vec(),
    )
    .expect("suffixes of simple paths are simple")
}

/// Chains paths that share consecutive endpoints.
fn join_paths(g: &Graph, parts: &[&PathDescriptor]) -> PathDescriptor {
    let mut vertices = parts[0].vertices().to_vec();
    let mut edges = parts[0].edge_ids().to_vec();
    for p in &parts[1..] {
        debug_assert_eq!(*vertices.last().expect("nonempty"), p.first());
        vertices.extend_from_slice(&p.vertices()[1..]);
        edges.extend_from_slice(p.edge_ids());
    }
    PathDescriptor::from_parts(g, vertices, edges).expect("segments share only their junctions")
}
