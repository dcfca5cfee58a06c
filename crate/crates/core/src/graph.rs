//! Undirected simple graphs with dense ids, edge-subset algebra, and the
//! connectivity/path primitives the structural arguments rely on.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (vertex count {1})")]
    VertexOutOfRange(VertexId, usize),
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1} rejected")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge {0} out of range (edge count {1})")]
    EdgeOutOfRange(EdgeId, usize),
    #[error("edge sets over different graphs (capacities {0} and {1})")]
    CapacityMismatch(usize, usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Undirected simple graph. Vertex ids are dense `0..n`, edge ids dense
/// `0..m` in insertion order; adjacency lists keep insertion order, which
/// fixes every tie-break downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(vertex_count);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Appends an edge, assigning the next dense id. Loops and parallel
    /// edges are rejected.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId, GraphError> {
        let n = self.vertex_count;
        if a >= n {
            return Err(GraphError::VertexOutOfRange(a, n));
        }
        if b >= n {
            return Err(GraphError::VertexOutOfRange(b, n));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.edge_between(a, b).is_some() {
            return Err(GraphError::ParallelEdge(a, b));
        }
        let id = self.edges.len();
        self.edges.push((a, b));
        self.adjacency[a].push((id, b));
        self.adjacency[b].push((id, a));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count
    }

    /// Endpoints of an edge, as inserted.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_ids(&self) -> std::ops::Range<EdgeId> {
        0..self.edges.len()
    }

    /// `(edge id, neighbor)` pairs at `v` in insertion order.
    pub fn neighbors(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency
            .get(a)?
            .iter()
            .find(|&&(_, w)| w == b)
            .map(|&(e, _)| e)
    }

    /// Given one endpoint of an edge, returns the other.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if v == a {
            b
        } else {
            debug_assert_eq!(v, b);
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Connected components as vertex lists, each ascending, ordered by
    /// smallest member. Isolated vertices form their own components.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(_, w) in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Bridge edges (deletion disconnects their component), ascending by
    /// edge id. Iterative DFS low-link.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut timer = 0;
        let mut out = Vec::new();
        // Stack frames: (vertex, edge used to enter, next adjacency index).
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, None, 0));
            while let Some(&(v, enter, idx)) = stack.last() {
                if idx < self.adjacency[v].len() {
                    stack.last_mut().expect("nonempty").2 = idx + 1;
                    let (e, w) = self.adjacency[v][idx];
                    if Some(e) == enter {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        // Back edge: v can reach w's discovery time.
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        // Tree edge (parent, v) is a bridge iff the subtree
                        // under v never reaches parent or above.
                        if low[v] > disc[parent] {
                            out.push(enter.expect("non-root frame has an entering edge"));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Cut vertices (articulation points), ascending.
    pub fn articulation_points(&self) -> Vec<VertexId> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut root_children = 0;
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, None, 0));
            while let Some(&(v, enter, idx)) = stack.last() {
                if idx < self.adjacency[v].len() {
                    stack.last_mut().expect("nonempty").2 = idx + 1;
                    let (e, w) = self.adjacency[v][idx];
                    if Some(e) == enter {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// True iff the graph has more than two vertices, is connected, and has
    /// no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.vertex_count > 2 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// A simple cycle through `v`, if any: for each pair of neighbors of
    /// `v` (adjacency order), search a path between them avoiding `v`.
    pub fn find_cycle_through(&self, v: VertexId) -> Option<PathDescriptor> {
        let nbrs = &self.adjacency[v];
        let mut banned = vec![false; self.vertex_count];
        banned[v] = true;
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let (ea, a) = nbrs[i];
                let (eb, b) = nbrs[j];
                if let Some(p) = self.bfs_path(a, b, &banned, None, None) {
                    let mut vertices = Vec::with_capacity(p.vertices.len() + 2);
                    let mut edge_ids = Vec::with_capacity(p.edge_ids.len() + 2);
                    vertices.push(v);
                    edge_ids.push(ea);
                    vertices.extend_from_slice(&p.vertices);
                    edge_ids.extend_from_slice(&p.edge_ids);
                    edge_ids.push(eb);
                    vertices.push(v);
                    let cycle = PathDescriptor::from_parts(self, vertices, edge_ids)
                        .expect("constructed cycle is valid");
                    return Some(cycle);
                }
            }
        }
        None
    }

    /// A path out of `u` that leaves the subgraph `h` immediately and
    /// returns to a vertex of `h`, with internal vertices outside `h` and
    /// no edges of `h`. Requires a 2-connected graph with
    /// `deg_h(u) = 2` and `deg(u) = 3`; the path starts with the unique
    /// non-`h` edge at `u`.
    pub fn find_escape_path(&self, h: &EdgeSet, u: VertexId) -> Result<PathDescriptor, GraphError> {
        if !self.is_two_connected() {
            return Err(GraphError::Precondition("escape path needs a 2-connected graph".into()));
        }
        if h.degree_in(self, u) != 2 || self.degree(u) != 3 {
            return Err(GraphError::Precondition(format!(
                "escape path needs deg_h(u)=2 and deg(u)=3 at u={u}"
            )));
        }
        let (exit_edge, exit_vertex) = self.adjacency[u]
            .iter()
            .copied()
            .find(|&(e, _)| !h.contains(e))
            .expect("degree 3 with two h-edges leaves one exit");
        let mut in_h = vec![false; self.vertex_count];
        for x in h.covered_vertices(self) {
            in_h[x] = true;
        }
        if in_h[exit_vertex] {
            let path = PathDescriptor::from_parts(self, vec![u, exit_vertex], vec![exit_edge])?;
            return Ok(path);
        }
        // BFS from the exit vertex through non-h vertices until an edge
        // reaches h again; the entering edge cannot be the exit edge and
        // cannot belong to h (its near endpoint is outside h).
        let allowed = |w: VertexId| !in_h[w];
        let target = |w: VertexId| in_h[w];
        let p = self
            .bfs_path_to_predicate(exit_vertex, allowed, target, Some(exit_edge))
            .ok_or_else(|| {
                GraphError::Precondition("no escape path; preconditions violated".into())
            })?;
        let mut vertices = vec![u];
        let mut edge_ids = vec![exit_edge];
        vertices.extend_from_slice(&p.vertices);
        edge_ids.extend_from_slice(&p.edge_ids);
        PathDescriptor::from_parts(self, vertices, edge_ids)
    }

    /// A simple cycle through both `x` and `y`: two internally disjoint
    /// x-y paths via unit-capacity vertex-split flow. Exists whenever the
    /// two vertices lie in a common 2-connected block.
    pub fn cycle_through_pair(&self, x: VertexId, y: VertexId) -> Option<PathDescriptor> {
        if x == y {
            return self.find_cycle_through(x);
        }
        let paths = self.two_disjoint_paths(x, y)?;
        let (p1, p2) = paths;
        // Cycle: x --p1--> y --reverse(p2)--> x.
        let mut vertices = p1.vertices.clone();
        let mut edge_ids = p1.edge_ids.clone();
        let rev = p2.reversed();
        vertices.extend_from_slice(&rev.vertices[1..]);
        edge_ids.extend_from_slice(&rev.edge_ids);
        Some(
            PathDescriptor::from_parts(self, vertices, edge_ids)
                .expect("disjoint paths make a simple cycle"),
        )
    }

    /// Two internally vertex-disjoint (and edge-disjoint) x-y paths, if
    /// they exist. Deterministic BFS augmentation on the vertex-split
    /// digraph.
    pub fn two_disjoint_paths(
        &self,
        x: VertexId,
        y: VertexId,
    ) -> Option<(PathDescriptor, PathDescriptor)> {
        if x == y {
            return None;
        }
        let n = self.vertex_count;
        // Node 2v = v_in, 2v+1 = v_out. Arc list with residual capacities.
        // Internal arc v_in->v_out capacity 1 (2 for x and y, though x_in
        // and y_out are never used from the source x_out to the sink y_in).
        let mut arcs: Vec<(usize, usize, i32)> = Vec::new(); // (from, to, cap)
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
        let push_arc = |arcs: &mut Vec<(usize, usize, i32)>,
                        out: &mut Vec<Vec<usize>>,
                        a: usize,
                        b: usize,
                        cap: i32| {
            out[a].push(arcs.len());
            arcs.push((a, b, cap));
            out[b].push(arcs.len());
            arcs.push((b, a, 0));
        };
        for v in 0..n {
            let cap = if v == x || v == y { 2 } else { 1 };
            push_arc(&mut arcs, &mut out, 2 * v, 2 * v + 1, cap);
        }
        for &(a, b) in &self.edges {
            push_arc(&mut arcs, &mut out, 2 * a + 1, 2 * b, 1);
            push_arc(&mut arcs, &mut out, 2 * b + 1, 2 * a, 1);
        }
        let source = 2 * x + 1;
        let sink = 2 * y;
        let mut flow = 0;
        for _ in 0..2 {
            // BFS over residual arcs in creation order.
            let mut prev: Vec<Option<usize>> = vec![None; 2 * n];
            let mut seen = vec![false; 2 * n];
            seen[source] = true;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(source);
            'bfs: while let Some(u) = queue.pop_front() {
                for &ai in &out[u] {
                    let (_, to, cap) = arcs[ai];
                    if cap > 0 && !seen[to] {
                        seen[to] = true;
                        prev[to] = Some(ai);
                        if to == sink {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !seen[sink] {
                break;
            }
            let mut node = sink;
            while node != source {
                let ai = prev[node].expect("augmenting path recorded");
                arcs[ai].2 -= 1;
                arcs[ai ^ 1].2 += 1;
                node = arcs[ai].0;
            }
            flow += 1;
        }
        if flow < 2 {
            return None;
        }
        // Extract the two paths by walking saturated external arcs.
        // used[e] guards against tracing the same unit twice.
        let mut used_arc = vec![false; arcs.len()];
        let extract = |used_arc: &mut Vec<bool>| -> PathDescriptor {
            let mut vertices = vec![x];
            let mut edge_ids = Vec::new();
            let mut v = x;
            while v != y {
                // Find an unvisited saturated arc v_out -> w_in.
                let mut advanced = false;
                for &ai in &out[2 * v + 1] {
                    if ai % 2 == 1 {
                        continue; // residual twin
                    }
                    let (from, to, cap) = arcs[ai];
                    if from != 2 * v + 1 || to % 2 != 0 || to == 2 * v {
                        continue;
                    }
                    // Original cap for external arcs is 1; saturated iff 0.
                    if cap == 0 && !used_arc[ai] {
                        used_arc[ai] = true;
                        let w = to / 2;
                        let e = self
                            .edge_between(v, w)
                            .expect("flow arc mirrors a graph edge");
                        vertices.push(w);
                        edge_ids.push(e);
                        v = w;
                        advanced = true;
                        break;
                    }
                }
                assert!(advanced, "flow decomposition must reach the sink");
            }
            PathDescriptor::from_parts(self, vertices, edge_ids).expect("flow path is simple")
        };
        let p1 = extract(&mut used_arc);
        let p2 = extract(&mut used_arc);
        Some((p1, p2))
    }

    /// Shortest path between two vertices, optionally restricted to edges
    /// of `within` and avoiding `banned` vertices (endpoints exempt).
    pub fn bfs_path(
        &self,
        from: VertexId,
        to: VertexId,
        banned: &[bool],
        within: Option<&EdgeSet>,
        skip_edge: Option<EdgeId>,
    ) -> Option<PathDescriptor> {
        if from == to {
            return PathDescriptor::from_parts(self, vec![from], vec![]).ok();
        }
        let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from);
        'bfs: while let Some(v) = queue.pop_front() {
            for &(e, w) in &self.adjacency[v] {
                if Some(e) == skip_edge || seen[w] {
                    continue;
                }
                if let Some(set) = within {
                    if !set.contains(e) {
                        continue;
                    }
                }
                if banned.get(w) == Some(&true) && w != to {
                    continue;
                }
                seen[w] = true;
                prev[w] = Some((v, e));
                if w == to {
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if !seen[to] {
            return None;
        }
        let mut vertices = vec![to];
        let mut edge_ids = Vec::new();
        let mut v = to;
        while v != from {
            let (p, e) = prev[v].expect("reached vertex has predecessor");
            edge_ids.push(e);
            vertices.push(p);
            v = p;
        }
        vertices.reverse();
        edge_ids.reverse();
        PathDescriptor::from_parts(self, vertices, edge_ids).ok()
    }

    /// BFS from `from` through vertices satisfying `allowed`, stopping at
    /// the first vertex satisfying `target`. The start vertex must be
    /// allowed; the final vertex need not be.
    fn bfs_path_to_predicate(
        &self,
        from: VertexId,
        allowed: impl Fn(VertexId) -> bool,
        target: impl Fn(VertexId) -> bool,
        skip_edge: Option<EdgeId>,
    ) -> Option<PathDescriptor> {
        let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from);
        let mut hit = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &(e, w) in &self.adjacency[v] {
                if Some(e) == skip_edge || seen[w] {
                    continue;
                }
                if target(w) {
                    prev[w] = Some((v, e));
                    hit = Some(w);
                    break 'bfs;
                }
                if !allowed(w) {
                    continue;
                }
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
        let to = hit?;
        let mut vertices = vec![to];
        let mut edge_ids = Vec::new();
        let mut v = to;
        while v != from {
            let (p, e) = prev[v].expect("reached vertex has predecessor");
            edge_ids.push(e);
            vertices.push(p);
            v = p;
        }
        vertices.reverse();
        edge_ids.reverse();
        PathDescriptor::from_parts(self, vertices, edge_ids).ok()
    }

    /// Standalone graph spanned by an edge subset: vertices are the covered
    /// ones (ascending), edges keep ascending id order. Returns the new
    /// graph plus maps from new vertex/edge ids back to the originals.
    pub fn subgraph_spanned_by(&self, h: &EdgeSet) -> (Graph, Vec<VertexId>, Vec<EdgeId>) {
        let vertex_map = h.covered_vertices(self);
        let mut back = vec![usize::MAX; self.vertex_count];
        for (new, &old) in vertex_map.iter().enumerate() {
            back[old] = new;
        }
        let mut g = Graph::new(vertex_map.len());
        let mut edge_map = Vec::with_capacity(h.len());
        for e in h.iter() {
            let (a, b) = self.edges[e];
            g.add_edge(back[a], back[b]).expect("subgraph of a simple graph is simple");
            edge_map.push(e);
        }
        (g, vertex_map, edge_map)
    }

    /// Connected components of the subgraph spanned by `h`, each as an
    /// edge set, ordered by smallest covered vertex.
    pub fn edge_set_components(&self, h: &EdgeSet) -> Vec<EdgeSet> {
        let mut comp_of = vec![usize::MAX; self.vertex_count];
        let mut components: Vec<EdgeSet> = Vec::new();
        for start in h.covered_vertices(self) {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut set = EdgeSet::with_capacity(self.edge_count());
            comp_of[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(e, w) in &self.adjacency[v] {
                    if !h.contains(e) {
                        continue;
                    }
                    set.insert(e);
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            components.push(set);
        }
        components
    }

    /// Decomposes an edge set whose vertices all have degree ≤ 2 in it into
    /// its components, each reported as a path (from its smaller endpoint)
    /// or a cycle (anchored at its smallest vertex, leaving by the smaller
    /// edge id). Errors if some vertex has degree ≥ 3 in `h`.
    pub fn decompose_paths_cycles(&self, h: &EdgeSet) -> Result<Vec<PathDescriptor>, GraphError> {
        let covered = h.covered_vertices(self);
        for &v in &covered {
            if h.degree_in(self, v) > 2 {
                return Err(GraphError::Precondition(format!(
                    "vertex {v} has degree > 2 in the edge set"
                )));
            }
        }
        let mut out = Vec::new();
        let mut used = EdgeSet::with_capacity(self.edge_count());
        let walk = |start: VertexId, used: &mut EdgeSet| -> PathDescriptor {
            let mut vertices = vec![start];
            let mut edge_ids = Vec::new();
            let mut v = start;
            loop {
                let next = self.adjacency[v]
                    .iter()
                    .copied()
                    .filter(|&(e, _)| h.contains(e) && !used.contains(e))
                    .min_by_key(|&(e, _)| e);
                match next {
                    Some((e, w)) => {
                        used.insert(e);
                        edge_ids.push(e);
                        vertices.push(w);
                        v = w;
                    }
                    None => break,
                }
            }
            PathDescriptor::from_parts(self, vertices, edge_ids)
                .expect("walk of a degree-≤2 component is simple")
        };
        // Paths first: start from degree-1 endpoints in ascending order.
        for &v in &covered {
            if h.degree_in(self, v) == 1 {
                let pending = self.adjacency[v]
                    .iter()
                    .any(|&(e, _)| h.contains(e) && !used.contains(e));
                if pending {
                    out.push(walk(v, &mut used));
                }
            }
        }
        // Remaining components are cycles.
        for &v in &covered {
            let pending = self.adjacency[v]
                .iter()
                .any(|&(e, _)| h.contains(e) && !used.contains(e));
            if pending {
                out.push(walk(v, &mut used));
            }
        }
        Ok(out)
    }
}

/// Subset of edge ids over a fixed graph, stored as a bitmask. The covered
/// vertex set is derived (no isolated vertices by convention). Ordering is
/// lexicographic on the ascending id sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    capacity: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn with_capacity(edge_count: usize) -> Self {
        EdgeSet {
            capacity: edge_count,
            words: vec![0; edge_count.div_ceil(64)],
        }
    }

    pub fn empty(graph: &Graph) -> Self {
        Self::with_capacity(graph.edge_count())
    }

    pub fn full(graph: &Graph) -> Self {
        let mut s = Self::empty(graph);
        for e in graph.edge_ids() {
            s.insert(e);
        }
        s
    }

    pub fn from_edges(
        graph: &Graph,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self, GraphError> {
        let mut s = Self::empty(graph);
        for e in edges {
            if e >= s.capacity {
                return Err(GraphError::EdgeOutOfRange(e, s.capacity));
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.capacity && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(e < self.capacity, "edge {e} out of range {}", self.capacity);
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: EdgeId) {
        if e < self.capacity {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    fn check_same(&self, other: &EdgeSet) -> Result<(), GraphError> {
        if self.capacity != other.capacity {
            return Err(GraphError::CapacityMismatch(self.capacity, other.capacity));
        }
        Ok(())
    }

    /// Exclusive or of memberships; errors when the operands belong to
    /// graphs of different sizes.
    pub fn sym_diff(&self, other: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.check_same(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(EdgeSet { capacity: self.capacity, words })
    }

    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.check_same(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Ok(EdgeSet { capacity: self.capacity, words })
    }

    pub fn intersection(&self, other: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.check_same(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Ok(EdgeSet { capacity: self.capacity, words })
    }

    pub fn difference(&self, other: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.check_same(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Ok(EdgeSet { capacity: self.capacity, words })
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.capacity == other.capacity
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Count of member edges incident to `v`; 0 when `v` is uncovered.
    pub fn degree_in(&self, graph: &Graph, v: VertexId) -> usize {
        graph.neighbors(v).iter().filter(|&&(e, _)| self.contains(e)).count()
    }

    /// Vertices covered by at least one member edge, ascending.
    pub fn covered_vertices(&self, graph: &Graph) -> Vec<VertexId> {
        let mut seen = vec![false; graph.vertex_count()];
        for e in self.iter() {
            let (a, b) = graph.endpoints(e);
            seen[a] = true;
            seen[b] = true;
        }
        (0..graph.vertex_count()).filter(|&v| seen[v]).collect()
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Walk description: a vertex sequence with the edges joining consecutive
/// entries. Internal vertices are distinct; a cycle repeats its first
/// vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDescriptor {
    vertices: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
}

impl PathDescriptor {
    /// Validates incidence and simplicity against the graph.
    pub fn from_parts(
        graph: &Graph,
        vertices: Vec<VertexId>,
        edge_ids: Vec<EdgeId>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::InvalidPath("empty vertex sequence".into()));
        }
        if edge_ids.len() + 1 != vertices.len() {
            return Err(GraphError::InvalidPath(format!(
                "{} vertices need {} edges, got {}",
                vertices.len(),
                vertices.len() - 1,
                edge_ids.len()
            )));
        }
        for (i, &e) in edge_ids.iter().enumerate() {
            if e >= graph.edge_count() {
                return Err(GraphError::EdgeOutOfRange(e, graph.edge_count()));
            }
            let (a, b) = graph.endpoints(e);
            let (x, y) = (vertices[i], vertices[i + 1]);
            if (a, b) != (x, y) && (a, b) != (y, x) {
                return Err(GraphError::InvalidPath(format!(
                    "edge {e} does not join {x} and {y}"
                )));
            }
        }
        let closed = vertices.len() > 1 && vertices.first() == vertices.last();
        let interior = if closed { &vertices[..vertices.len() - 1] } else { &vertices[..] };
        let mut sorted = interior.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != interior.len() {
            return Err(GraphError::InvalidPath("repeated internal vertex".into()));
        }
        if closed && edge_ids.len() < 3 {
            return Err(GraphError::InvalidPath("cycle shorter than a triangle".into()));
        }
        Ok(PathDescriptor { vertices, edge_ids })
    }

    /// Builds from a vertex sequence, looking up each joining edge.
    pub fn from_vertices(graph: &Graph, vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        let mut edge_ids = Vec::with_capacity(vertices.len().saturating_sub(1));
        for pair in vertices.windows(2) {
            let e = graph.edge_between(pair[0], pair[1]).ok_or_else(|| {
                GraphError::InvalidPath(format!("no edge between {} and {}", pair[0], pair[1]))
            })?;
            edge_ids.push(e);
        }
        Self::from_parts(graph, vertices, edge_ids)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.vertices.len() > 1 && self.vertices.first() == self.vertices.last()
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("nonempty")
    }

    pub fn reversed(&self) -> PathDescriptor {
        let mut vertices = self.vertices.clone();
        let mut edge_ids = self.edge_ids.clone();
        vertices.reverse();
        edge_ids.reverse();
        PathDescriptor { vertices, edge_ids }
    }

    pub fn edge_set(&self, capacity: usize) -> EdgeSet {
        let mut s = EdgeSet::with_capacity(capacity);
        for &e in &self.edge_ids {
            s.insert(e);
        }
        s
    }

    /// Internal vertices only (excludes the two path endpoints, or the
    /// anchor of a cycle).
    pub fn interior_vertices(&self) -> &[VertexId] {
        if self.is_cycle() {
            &self.vertices[1..self.vertices.len() - 1]
        } else if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }
}
