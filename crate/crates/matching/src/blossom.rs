//! Primal-dual blossom solver for maximum-weight matching on general
//! graphs, following the classic O(n^3) formulation: alternating-tree
//! growth with blossom shrinking, and dual adjustments chosen as the
//! minimum over the four standard bounds.
//!
//! Vertex duals are stored doubled (entry v holds 2u(v)); blossom duals are
//! stored plain and contribute 2z(b) to slacks. With integer weights every
//! stored value stays integral: the only division, half the slack of an edge
//! joining two S-blossoms, is exact because such slacks are always even.

use crate::weight::BlossomWeight;

pub(crate) const UNMATCHED: usize = usize::MAX;

/// Final solver state, reduced to what callers need: the matching as a
/// partner table plus the dual solution for certification.
pub(crate) struct Outcome<W> {
    /// mate[v] = partner vertex, or UNMATCHED.
    pub mate: Vec<usize>,
    /// Doubled vertex duals (entry v holds 2u(v)).
    pub vertex_duals: Vec<W>,
    /// Surviving nontrivial blossoms as (sorted member vertices, z).
    pub blossoms: Vec<(Vec<usize>, W)>,
}

pub(crate) fn solve_matching<W: BlossomWeight>(
    nvertex: usize,
    edges: &[(usize, usize, W)],
    maxcardinality: bool,
) -> Outcome<W> {
    Solver::new(nvertex, edges, maxcardinality).run()
}

/// Labels on top-level blossoms: 0 free, 1 = S, 2 = T; bit 2 doubles as the
/// breadcrumb mark while tracing alternating paths.
const FREE: usize = 0;
const S: usize = 1;
const T: usize = 2;

struct Solver<W> {
    nvertex: usize,
    nedge: usize,
    maxcardinality: bool,
    edges: Vec<(usize, usize, W)>,
    // Endpoints 2k and 2k+1 belong to edge k; endpoint[p] is its vertex.
    endpoint: Vec<usize>,
    // neighbend[v]: remote endpoints of v's incident edges.
    neighbend: Vec<Vec<usize>>,
    // mate[v]: remote endpoint of the matched edge, or UNMATCHED.
    mate: Vec<usize>,
    // Indexed by blossom (vertices are trivial blossoms 0..n, nontrivial n..2n).
    label: Vec<usize>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<W>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl<W: BlossomWeight> Solver<W> {
    fn new(nvertex: usize, edges: &[(usize, usize, W)], maxcardinality: bool) -> Self {
        let nedge = edges.len();
        let mut endpoint = Vec::with_capacity(2 * nedge);
        let mut neighbend = vec![Vec::new(); nvertex];
        for (k, e) in edges.iter().enumerate() {
            let (i, j) = (e.0, e.1);
            assert!(i != j && i < nvertex && j < nvertex);
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        // Start every vertex dual at max(0, max weight) so all slacks begin
        // nonnegative; blossom duals start at zero.
        let maxweight = edges
            .iter()
            .map(|e| e.2.clone())
            .max()
            .unwrap_or_else(W::zero);
        let initial = std::cmp::max(W::zero(), maxweight);
        let mut dualvar = vec![initial; nvertex];
        dualvar.extend((0..nvertex).map(|_| W::zero()));

        Solver {
            nvertex,
            nedge,
            maxcardinality,
            edges: edges.to_vec(),
            endpoint,
            neighbend,
            mate: vec![UNMATCHED; nvertex],
            label: vec![FREE; 2 * nvertex],
            labelend: vec![UNMATCHED; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![UNMATCHED; 2 * nvertex],
            blossomchilds: vec![Vec::new(); 2 * nvertex],
            blossombase: (0..nvertex)
                .chain(std::iter::repeat(UNMATCHED).take(nvertex))
                .collect(),
            blossomendps: vec![Vec::new(); 2 * nvertex],
            bestedge: vec![UNMATCHED; 2 * nvertex],
            blossombestedges: vec![Vec::new(); 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    /// Doubled slack of edge k (meaningless for edges inside a blossom).
    fn slack(&self, k: usize) -> W {
        let (i, j) = (self.edges[k].0, self.edges[k].1);
        self.dualvar[i].clone() + self.dualvar[j].clone() - self.edges[k].2.double()
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        if b < self.nvertex {
            leaves.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                if t < self.nvertex {
                    leaves.push(t);
                } else {
                    leaves.extend(self.blossom_leaves(t));
                }
            }
        }
        leaves
    }

    /// Label the top-level blossom of w with t, reached through remote
    /// endpoint p. New S-blossoms enqueue their vertices; new T-blossoms
    /// immediately push label S to the mate of their base.
    fn assign_label(&mut self, w: usize, t: usize, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == FREE && self.label[b] == FREE);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = UNMATCHED;
        self.bestedge[b] = UNMATCHED;
        if t == S {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else if t == T {
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != UNMATCHED);
            let mbase = self.mate[base];
            let v = self.endpoint[mbase];
            self.assign_label(v, S, mbase ^ 1);
        }
    }

    /// Trace back from v and w towards their tree roots, dropping breadcrumbs,
    /// to find either a common ancestor (the base of a new blossom) or two
    /// distinct roots (an augmenting path). Returns the base or UNMATCHED.
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = UNMATCHED;
        let mut v = v;
        let mut w = w;
        while v != UNMATCHED || w != UNMATCHED {
            let mut b = self.inblossom[v];
            if (self.label[b] & 4) != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert!(self.label[b] == S);
            path.push(b);
            self.label[b] = 5;
            debug_assert!(self.labelend[b] == self.mate[self.blossombase[b]]);
            if self.labelend[b] == UNMATCHED {
                // Reached a single root; this side is exhausted.
                v = UNMATCHED;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert!(self.label[b] == T);
                debug_assert!(self.labelend[b] != UNMATCHED);
                v = self.endpoint[self.labelend[b]];
            }
            if w != UNMATCHED {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = S;
        }
        base
    }

    /// Shrink the odd cycle through edge k (joining two S-blossoms) with the
    /// given base into a fresh blossom: collect children and connecting
    /// endpoints, relabel swallowed T-vertices to S, and rebuild the
    /// least-slack edge lists used for the delta3 bound.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w) = (self.edges[k].0, self.edges[k].1);
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];

        let b = self.unusedblossoms.pop().expect("blossom pool exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = UNMATCHED;
        self.blossomparent[bb] = b;

        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();

        // Walk the v side up to the base.
        while bv != bb {
            self.blossomparent[bv] = b;
            self.blossomchilds[b].push(bv);
            self.blossomendps[b].push(self.labelend[bv]);
            debug_assert!(
                self.label[bv] == T
                    || (self.label[bv] == S
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            debug_assert!(self.labelend[bv] != UNMATCHED);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        // Base first, then the v-side path reversed, then edge k's own
        // endpoint as the pivot, then the w side in forward order.
        self.blossomchilds[b].push(bb);
        self.blossomchilds[b].reverse();
        self.blossomendps[b].reverse();
        self.blossomendps[b].push(2 * k);

        while bw != bb {
            self.blossomparent[bw] = b;
            self.blossomchilds[b].push(bw);
            self.blossomendps[b].push(self.labelend[bw] ^ 1);
            debug_assert!(
                self.label[bw] == T
                    || (self.label[bw] == S
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            debug_assert!(self.labelend[bw] != UNMATCHED);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }

        debug_assert!(self.label[bb] == S);
        self.label[b] = S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = W::zero();

        for v in self.blossom_leaves(b) {
            if self.label[self.inblossom[v]] == T {
                // Swallowed T-vertices become S-vertices; scan them.
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        // Merge the children's least-slack edge tables.
        let mut bestedgeto = vec![UNMATCHED; 2 * self.nvertex];
        for bv in self.blossomchilds[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                self.blossom_leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j) = (self.edges[k].0, self.edges[k].1);
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == S
                        && (bestedgeto[bj] == UNMATCHED
                            || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv] = Vec::new();
            self.bestedge[bv] = UNMATCHED;
        }
        self.blossombestedges[b] = bestedgeto
            .into_iter()
            .filter(|&k| k != UNMATCHED)
            .collect();

        self.bestedge[b] = UNMATCHED;
        for k in self.blossombestedges[b].clone() {
            if self.bestedge[b] == UNMATCHED || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Undo blossom b: promote its children to top level and, when expanding
    /// a T-blossom mid-stage, push labels around the cycle so the alternating
    /// forest stays consistent.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = UNMATCHED;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == W::zero() {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }

        if !endstage && self.label[b] == T {
            // Relabel along the cycle from the entry child to the base, then
            // mark any other child that is externally reachable.
            debug_assert!(self.labelend[b] != UNMATCHED);
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&r| r == entrychild)
                .expect("entry child missing") as i32;
            let jstep: i32;
            let endptrick: usize;
            if (j & 1) != 0 {
                j -= self.blossomchilds[b].len() as i32;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }

            let mut p = self.labelend[b];
            while j != 0 {
                // Relabel the T-sub-blossom.
                let idx1 = self.endpoint[p ^ 1];
                let endp = pos_neg_index(&self.blossomendps[b], j - endptrick as i32);
                let idx2 = self.endpoint[endp ^ endptrick ^ 1];
                self.label[idx1] = FREE;
                self.label[idx2] = FREE;
                self.assign_label(idx1, T, p);

                // Step to the next S-sub-blossom and note its forward endpoint.
                self.allowedge[endp / 2] = true;
                j += jstep;
                p = pos_neg_index(&self.blossomendps[b], j - endptrick as i32) ^ endptrick;

                // Step to the next T-sub-blossom.
                self.allowedge[p / 2] = true;
                j += jstep;
            }

            // The base keeps label T directly; no push through its mate.
            let bv = pos_neg_index(&self.blossomchilds[b], j);
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = T;
            self.label[bv] = T;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = UNMATCHED;

            j += jstep;
            while pos_neg_index(&self.blossomchilds[b], j) != entrychild {
                let bv = pos_neg_index(&self.blossomchilds[b], j);
                if self.label[bv] == S {
                    j += jstep;
                    continue;
                }
                let mut v = UNMATCHED;
                for t in self.blossom_leaves(bv) {
                    v = t;
                    if self.label[v] != FREE {
                        break;
                    }
                }
                if self.label[v] != FREE {
                    debug_assert!(self.label[v] == T);
                    debug_assert!(self.inblossom[v] == bv);
                    self.label[v] = FREE;
                    let base_mate = self.mate[self.blossombase[bv]];
                    let idx = self.endpoint[base_mate];
                    self.label[idx] = FREE;
                    let lblend = self.labelend[v];
                    self.assign_label(v, T, lblend);
                }
                j += jstep;
            }
        }

        self.label[b] = FREE;
        self.labelend[b] = UNMATCHED;
        self.blossombase[b] = UNMATCHED;
        self.bestedge[b] = UNMATCHED;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombestedges[b] = Vec::new();
        self.unusedblossoms.push(b);
    }

    /// Swap matched and unmatched edges along the path inside blossom b from
    /// vertex v to the base, then rotate the child list so v becomes the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t != UNMATCHED && t >= self.nvertex {
            self.augment_blossom(t, v);
        }

        let i = self.blossomchilds[b]
            .iter()
            .position(|&r| r == t)
            .expect("child missing");
        let mut j = i as i32;
        let jstep: i32;
        let endptrick: usize;
        if (i & 1) != 0 {
            j -= self.blossomchilds[b].len() as i32;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }

        while j != 0 {
            j += jstep;
            let mut t = pos_neg_index(&self.blossomchilds[b], j);
            let p = pos_neg_index(&self.blossomendps[b], j - endptrick as i32) ^ endptrick;
            if t != UNMATCHED && t >= self.nvertex {
                let endp = self.endpoint[p];
                self.augment_blossom(t, endp);
            }
            j += jstep;
            t = pos_neg_index(&self.blossomchilds[b], j);
            if t != UNMATCHED && t >= self.nvertex {
                let endp = self.endpoint[p ^ 1];
                self.augment_blossom(t, endp);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }

        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert!(self.blossombase[b] == v);
    }

    /// Augment the matching along the path through edge k, tracing from both
    /// of its endpoints back to the respective tree roots.
    fn augment_matching(&mut self, k: usize) {
        let (v, w) = (self.edges[k].0, self.edges[k].1);
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert!(self.label[bs] == S);
                debug_assert!(self.labelend[bs] == self.mate[self.blossombase[bs]]);
                if bs != UNMATCHED && bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == UNMATCHED {
                    // Reached a single root.
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert!(self.label[bt] == T);
                debug_assert!(self.labelend[bt] != UNMATCHED);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert!(self.blossombase[bt] == t);
                if bt != UNMATCHED && bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn min_vertex_dual(&self) -> W {
        self.dualvar[..self.nvertex]
            .iter()
            .cloned()
            .min()
            .expect("no vertices")
    }

    fn run(mut self) -> Outcome<W> {
        if self.nedge > 0 {
            self.main_loop();
        }

        // Collect surviving blossoms (nested ones included) before the mate
        // table is rewritten to partner-vertex form.
        let mut blossoms = Vec::new();
        for b in self.nvertex..2 * self.nvertex {
            if self.blossombase[b] != UNMATCHED {
                let mut leaves = self.blossom_leaves(b);
                leaves.sort_unstable();
                blossoms.push((leaves, self.dualvar[b].clone()));
            }
        }

        for v in 0..self.nvertex {
            if self.mate[v] != UNMATCHED {
                self.mate[v] = self.endpoint[self.mate[v]];
            }
        }
        for v in 0..self.nvertex {
            debug_assert!(self.mate[v] == UNMATCHED || self.mate[self.mate[v]] == v);
        }

        Outcome {
            mate: self.mate,
            vertex_duals: self.dualvar[..self.nvertex].to_vec(),
            blossoms,
        }
    }

    fn main_loop(&mut self) {
        // Each stage either augments the matching by one edge or proves the
        // current matching has maximum cardinality.
        for _ in 0..self.nvertex {
            self.label = vec![FREE; 2 * self.nvertex];
            self.bestedge = vec![UNMATCHED; 2 * self.nvertex];
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b] = Vec::new();
            }
            self.allowedge = vec![false; self.nedge];
            self.queue = Vec::new();

            for v in 0..self.nvertex {
                if self.mate[v] == UNMATCHED && self.label[self.inblossom[v]] == FREE {
                    self.assign_label(v, S, UNMATCHED);
                }
            }

            let mut augmented = false;
            loop {
                // Substage: grow the forest along tight edges; if no growth
                // is possible, adjust duals by the least binding bound.
                while !self.queue.is_empty() && !augmented {
                    let v = self.queue.pop().unwrap();
                    debug_assert!(self.label[self.inblossom[v]] == S);
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut pending_slack = None;
                        if !self.allowedge[k] {
                            let ks = self.slack(k);
                            if ks <= W::zero() {
                                self.allowedge[k] = true;
                            } else {
                                pending_slack = Some(ks);
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == FREE {
                                // Free vertex: becomes T, its mate becomes S.
                                self.assign_label(w, T, p ^ 1);
                            } else if self.label[self.inblossom[w]] == S {
                                // S-S edge: new blossom or augmenting path.
                                let base = self.scan_blossom(v, w);
                                if base != UNMATCHED {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == FREE {
                                // Unreached vertex inside a T-blossom; record
                                // how it is reachable for later expansion.
                                debug_assert!(self.label[self.inblossom[w]] == T);
                                self.label[w] = T;
                                self.labelend[w] = p ^ 1;
                            }
                        } else {
                            let ks = pending_slack.expect("slack computed above");
                            if self.label[self.inblossom[w]] == S {
                                let b = self.inblossom[v];
                                if self.bestedge[b] == UNMATCHED
                                    || ks < self.slack(self.bestedge[b])
                                {
                                    self.bestedge[b] = k;
                                }
                            } else if self.label[w] == FREE {
                                if self.bestedge[w] == UNMATCHED
                                    || ks < self.slack(self.bestedge[w])
                                {
                                    self.bestedge[w] = k;
                                }
                            }
                        }
                    }
                }

                if augmented {
                    break;
                }

                // Dual adjustment. deltatype 1: vertex dual floor (only binds
                // outside max-cardinality mode); 2: S-to-free edge; 3: S-to-S
                // edge (halved); 4: T-blossom dual.
                let mut deltatype = -1;
                let mut delta = W::zero();
                let mut deltaedge = 0usize;
                let mut deltablossom = 0usize;

                if !self.maxcardinality {
                    deltatype = 1;
                    delta = std::cmp::max(W::zero(), self.min_vertex_dual());
                }

                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == FREE && self.bestedge[v] != UNMATCHED {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == UNMATCHED
                        && self.label[b] == S
                        && self.bestedge[b] != UNMATCHED
                    {
                        let d = self.slack(self.bestedge[b]).halve_exact();
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != UNMATCHED
                        && self.blossomparent[b] == UNMATCHED
                        && self.label[b] == T
                        && (deltatype == -1 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b].clone();
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                if deltatype == -1 {
                    // Forest is saturated: maximum cardinality reached. One
                    // final adjustment makes the duals verifiable.
                    debug_assert!(self.maxcardinality);
                    deltatype = 1;
                    delta = std::cmp::max(W::zero(), self.min_vertex_dual());
                }

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        0 => {}
                        1 => self.dualvar[v] = self.dualvar[v].clone() - delta.clone(),
                        2 => self.dualvar[v] = self.dualvar[v].clone() + delta.clone(),
                        _ => unreachable!("bad label"),
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != UNMATCHED && self.blossomparent[b] == UNMATCHED {
                        match self.label[b] {
                            0 => {}
                            1 => self.dualvar[b] = self.dualvar[b].clone() + delta.clone(),
                            2 => self.dualvar[b] = self.dualvar[b].clone() - delta.clone(),
                            _ => unreachable!("bad label"),
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j) = (self.edges[deltaedge].0, self.edges[deltaedge].1);
                        if self.label[self.inblossom[i]] == FREE {
                            i = j;
                        }
                        debug_assert!(self.label[self.inblossom[i]] == S);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let i = self.edges[deltaedge].0;
                        debug_assert!(self.label[self.inblossom[i]] == S);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(deltablossom, false),
                    _ => unreachable!("bad deltatype"),
                }
            }

            if !augmented {
                break;
            }

            // Stage cleanup: S-blossoms whose dual hit zero dissolve.
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == UNMATCHED
                    && self.blossombase[b] != UNMATCHED
                    && self.label[b] == S
                    && self.dualvar[b] == W::zero()
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

/// Python-style indexing: negative indices count from the back.
fn pos_neg_index(v: &[usize], index: i32) -> usize {
    let idx = if index >= 0 {
        index as usize
    } else {
        v.len() - (-index) as usize
    };
    v[idx]
}
