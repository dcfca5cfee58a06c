//! Folding a pair of factors into a key instance over their symmetric
//! difference, and lifting positive basic factors back into augmenting
//! subgraphs of the original instance.

use crate::key::{BasicFactor, KeyInstance};
use crate::StructureError;
use factorum_core::{
    DegreeConstraint, EdgeId, EdgeSet, Factor, Graph, Instance, Rational, VertexId,
};

/// A key instance folded from two factors of one instance, with the
/// bookkeeping to move edge sets back: which key vertices each original
/// vertex expanded into, and which original edge each key edge copies.
#[derive(Debug, Clone)]
pub struct NormalizationResult {
    key: KeyInstance,
    expansion: Vec<Vec<VertexId>>,
    key_to_orig: Vec<EdgeId>,
    orig: Instance,
    base: Factor,
    target: Factor,
}

impl NormalizationResult {
    pub fn key(&self) -> &KeyInstance {
        &self.key
    }

    /// Key vertices standing in for original vertex `v`, in allocation
    /// order (separation pairs first, then the residual group).
    pub fn expansion(&self, v: VertexId) -> &[VertexId] {
        &self.expansion[v]
    }

    /// Original edge behind key edge `e`.
    pub fn original_edge(&self, e: EdgeId) -> EdgeId {
        self.key_to_orig[e]
    }

    pub fn original(&self) -> &Instance {
        &self.orig
    }

    pub fn base(&self) -> &Factor {
        &self.base
    }

    pub fn target(&self) -> &Factor {
        &self.target
    }

    /// Total signed weight, which equals weight(target) - weight(base).
    pub fn signed_total(&self) -> Rational {
        self.key.total_weight()
    }
}

fn fresh_deg1() -> DegreeConstraint {
    DegreeConstraint::interval(1, 0, 1).expect("static label")
}

fn fresh_deg2() -> DegreeConstraint {
    DegreeConstraint::parity_interval(2, 0, 2).expect("static label")
}

/// Records that key vertex `x` carries the `v`-end of original edge `e`.
fn assign_end(
    slots: &mut [[Option<VertexId>; 2]],
    graph: &Graph,
    e: EdgeId,
    v: VertexId,
    x: VertexId,
) {
    let (a, _) = graph.endpoints(e);
    let side = usize::from(v != a);
    debug_assert!(slots[e][side].is_none());
    slots[e][side] = Some(x);
}

/// Folds the symmetric difference of two factors into a key instance.
///
/// Every original vertex is replaced by fresh vertices: one degree-2
/// {0,2} vertex per (base-edge, target-edge) pair, pairing lowest ids
/// first, and then fresh vertices for the one-sided residue as the
/// vertex's label class dictates. Interval labels spread the residue over
/// degree-1 {0,1} vertices; proper parity intervals pair it into degree-2
/// {0,2} vertices by ascending edge id; type labels keep it on a single
/// vertex whose label is forced by the residue size and by which split
/// half the base degree sits in. Each key edge copies one symmetric-
/// difference edge and carries its weight, negated on base edges.
pub fn normalize(
    inst: &Instance,
    f: &Factor,
    g: &Factor,
) -> Result<NormalizationResult, StructureError> {
    let base = inst.factor(f.edges().clone())?;
    let target = inst.factor(g.edges().clone())?;
    let graph = inst.graph();
    let delta = base
        .edges()
        .sym_diff(target.edges())
        .expect("factors of one instance share the edge universe");

    let mut constraints: Vec<DegreeConstraint> = Vec::new();
    let mut expansion: Vec<Vec<VertexId>> = vec![Vec::new(); graph.vertex_count()];
    let mut slots: Vec<[Option<VertexId>; 2]> = vec![[None, None]; graph.edge_count()];

    for v in graph.vertices() {
        let mut base_side: Vec<EdgeId> = Vec::new();
        let mut target_side: Vec<EdgeId> = Vec::new();
        for &(e, _) in graph.neighbors(v) {
            if delta.contains(e) {
                if base.edges().contains(e) {
                    base_side.push(e);
                } else {
                    target_side.push(e);
                }
            }
        }
        base_side.sort_unstable();
        target_side.sort_unstable();

        let pairs = base_side.len().min(target_side.len());
        for i in 0..pairs {
            let x = constraints.len();
            constraints.push(fresh_deg2());
            expansion[v].push(x);
            assign_end(&mut slots, graph, base_side[i], v, x);
            assign_end(&mut slots, graph, target_side[i], v, x);
        }

        let residue: &[EdgeId] = if base_side.len() > target_side.len() {
            &base_side[pairs..]
        } else {
            &target_side[pairs..]
        };
        let r = residue.len();
        if r == 0 {
            continue;
        }

        let class = inst.constraint(v).classify();
        if class.is_interval {
            for &e in residue {
                let x = constraints.len();
                constraints.push(fresh_deg1());
                expansion[v].push(x);
                assign_end(&mut slots, graph, e, v, x);
            }
        } else if class.is_parity_interval {
            assert_eq!(r % 2, 0, "parity-interval labels force an even residue");
            for pair in residue.chunks(2) {
                let x = constraints.len();
                constraints.push(fresh_deg2());
                expansion[v].push(x);
                assign_end(&mut slots, graph, pair[0], v, x);
                assign_end(&mut slots, graph, pair[1], v, x);
            }
        } else if class.in_t() {
            assert!(r <= 3, "type labels span a window of width three");
            let label = match r {
                1 => fresh_deg1(),
                2 => fresh_deg2(),
                3 => {
                    let (d0, d1) = inst
                        .constraint(v)
                        .split()
                        .expect("type labels split into parity halves");
                    let base_degree = base.edges().degree_in(graph, v) as u32;
                    if d1.contains(base_degree) {
                        DegreeConstraint::type1(3, 0).expect("static label")
                    } else {
                        debug_assert!(d0.contains(base_degree));
                        DegreeConstraint::type2(3, 0).expect("static label")
                    }
                }
                _ => unreachable!(),
            };
            let x = constraints.len();
            constraints.push(label);
            expansion[v].push(x);
            for &e in residue {
                assign_end(&mut slots, graph, e, v, x);
            }
        } else {
            return Err(StructureError::InadmissibleConstraint(v));
        }
    }

    let mut key_graph = Graph::new(constraints.len());
    let mut key_to_orig = Vec::with_capacity(delta.len());
    let mut weights = Vec::with_capacity(delta.len());
    for e in delta.iter() {
        let [a, b] = slots[e];
        let a = a.expect("every difference edge got both ends reattached");
        let b = b.expect("every difference edge got both ends reattached");
        key_graph
            .add_edge(a, b)
            .expect("distinct fresh endpoints keep the folded graph simple");
        key_to_orig.push(e);
        let w = inst.weight(e).clone();
        weights.push(if target.edges().contains(e) { w } else { -w });
    }

    let key = KeyInstance::new(
        Instance::new(key_graph, constraints, weights)
            .expect("fresh labels match degrees by construction"),
    )
    .expect("folded labels are degree forced");

    // Every replaced vertex carries exactly its difference edges.
    for v in graph.vertices() {
        let spread: usize = expansion[v]
            .iter()
            .map(|&x| key.instance().graph().degree(x))
            .sum();
        assert_eq!(spread, delta.degree_in(graph, v));
    }

    let result = NormalizationResult { key, expansion, key_to_orig, orig: inst.clone(), base, target };
    assert_eq!(
        result.signed_total(),
        result.target.weight() - result.base.weight(),
        "signed weights add up to the factor gap"
    );
    Ok(result)
}

/// Maps a positive basic factor of the folded key instance back to an
/// edge set H of the original graph and checks what the fold guarantees:
/// H lies inside the symmetric difference, flipping it against the base
/// factor stays feasible and gains exactly the basic factor's weight, at
/// most two vertices get odd degree in H, and odd type-labeled vertices
/// only occur where base and target already disagree in parity.
pub fn lift_basic_subgraph(
    norm: &NormalizationResult,
    bf: &BasicFactor,
) -> Result<EdgeSet, StructureError> {
    if !norm.key.instance().is_factor(bf.edges()) {
        return Err(StructureError::NotAFactor);
    }
    if !bf.is_positive() {
        return Err(StructureError::NonPositiveGain);
    }

    let graph = norm.orig.graph();
    let mut h = EdgeSet::with_capacity(graph.edge_count());
    for e in bf.edges().iter() {
        h.insert(norm.key_to_orig[e]);
    }

    let delta = norm
        .base
        .edges()
        .sym_diff(norm.target.edges())
        .expect("factors of one instance share the edge universe");
    assert!(h.is_subset_of(&delta));

    let flipped = norm
        .base
        .edges()
        .sym_diff(&h)
        .expect("lifted edges live in the original universe");
    assert!(
        norm.orig.is_factor(&flipped),
        "flipping the lifted subgraph keeps a factor"
    );
    let gain = norm.orig.weight_of(&flipped) - norm.base.weight();
    assert_eq!(&gain, bf.weight(), "the flip gains the signed weight");

    let odd: Vec<VertexId> = graph
        .vertices()
        .filter(|&v| h.degree_in(graph, v) % 2 == 1)
        .collect();
    assert!(odd.len() <= 2, "a basic shape leaves at most two odd ends");
    let parity_mismatch = norm.orig.t_odd(&norm.base, &norm.target);
    let t_set = norm.orig.t_set();
    for v in odd {
        if t_set.binary_search(&v).is_ok() {
            assert!(
                parity_mismatch.contains(&v),
                "odd type vertices only where the pair disagrees in parity"
            );
        }
    }

    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key::{classify_basic, BasicShape};
    use factorum_core::rational_int;
    use num_traits::Zero;

    fn ones(n: usize) -> Vec<Rational> {
        (0..n).map(|_| rational_int(1)).collect()
    }

    #[test]
    fn empty_base_against_cycle_copies_it() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = DegreeConstraint::parity_interval(2, 0, 2).unwrap();
        let inst = Instance::new(g, vec![c.clone(), c.clone(), c], ones(3)).unwrap();
        let f = inst.factor(EdgeSet::empty(inst.graph())).unwrap();
        let g = inst.factor(EdgeSet::full(inst.graph())).unwrap();

        let norm = normalize(&inst, &f, &g).unwrap();
        let key = norm.key().instance();
        assert_eq!(key.vertex_count(), 3);
        assert_eq!(key.edge_count(), 3);
        assert_eq!(norm.signed_total(), rational_int(3));
        for v in 0..3 {
            assert_eq!(norm.expansion(v).len(), 1);
        }
        assert_eq!((0..3).map(|e| norm.original_edge(e)).collect::<Vec<_>>(), [0, 1, 2]);

        // Lifting the cycle flips the base onto the target.
        let bf = BasicFactor::new(norm.key(), EdgeSet::full(key.graph()))
            .unwrap()
            .unwrap();
        assert_eq!(bf.shape(), &BasicShape::Cycle);
        let h = lift_basic_subgraph(&norm, &bf).unwrap();
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn opposite_edges_separate_into_a_path() {
        // a - v - b with the base owning the first edge and the target the
        // second: one separation at v, one residue end at a and at b.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let end = DegreeConstraint::interval(1, 0, 1).unwrap();
        let mid = DegreeConstraint::singleton(2, 1).unwrap();
        let inst = Instance::new(
            g,
            vec![end.clone(), mid, end],
            vec![rational_int(1), rational_int(2)],
        )
        .unwrap();
        let f = inst
            .factor(EdgeSet::from_edges(inst.graph(), [0]).unwrap())
            .unwrap();
        let g = inst
            .factor(EdgeSet::from_edges(inst.graph(), [1]).unwrap())
            .unwrap();

        let norm = normalize(&inst, &f, &g).unwrap();
        let key = norm.key().instance();
        assert_eq!(key.vertex_count(), 3);
        assert_eq!(norm.expansion(0), [0]);
        assert_eq!(norm.expansion(1), [1]);
        assert_eq!(norm.expansion(2), [2]);
        let sep: Vec<u32> = key.constraint(1).iter().collect();
        assert_eq!(sep, [0, 2]);
        assert_eq!(key.weight(0), &rational_int(-1));
        assert_eq!(key.weight(1), &rational_int(2));
        assert_eq!(norm.signed_total(), rational_int(1));

        let bf = BasicFactor::new(norm.key(), EdgeSet::full(key.graph()))
            .unwrap()
            .unwrap();
        assert!(matches!(bf.shape(), BasicShape::Path { .. }));
        let h = lift_basic_subgraph(&norm, &bf).unwrap();
        let flipped = f.edges().sym_diff(&h).unwrap();
        assert_eq!(flipped.to_vec(), g.edges().to_vec());
    }

    #[test]
    fn type_residues_keep_one_vertex_with_a_forced_label() {
        // A claw around a type-labeled hub; leaves are {0,1}.
        let claw = || Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaf = DegreeConstraint::interval(1, 0, 1).unwrap();
        let build = |hub: DegreeConstraint| {
            Instance::new(
                claw(),
                vec![hub, leaf.clone(), leaf.clone(), leaf.clone()],
                ones(3),
            )
            .unwrap()
        };
        let label_of = |norm: &NormalizationResult, x: VertexId| -> Vec<u32> {
            norm.key().instance().constraint(x).iter().collect()
        };

        // Residue of three target edges, base degree 0 in the singleton
        // half of {0,1,3}: the hub keeps that label.
        let inst = build(DegreeConstraint::type1(3, 0).unwrap());
        let f = inst.factor(EdgeSet::empty(inst.graph())).unwrap();
        let g = inst.factor(EdgeSet::full(inst.graph())).unwrap();
        let norm = normalize(&inst, &f, &g).unwrap();
        assert_eq!(norm.expansion(0).len(), 1);
        assert_eq!(label_of(&norm, norm.expansion(0)[0]), [0, 1, 3]);
        assert_eq!(norm.signed_total(), rational_int(3));

        // Swapped roles: base degree 3 sits in the even half, so the hub
        // flips to {0,2,3} and the signed total goes negative.
        let norm = normalize(&inst, &g, &f).unwrap();
        assert_eq!(label_of(&norm, norm.expansion(0)[0]), [0, 2, 3]);
        assert_eq!(norm.signed_total(), rational_int(-3));

        // Residue of two base edges on a {0,2,3} hub folds to {0,2}.
        let inst = build(DegreeConstraint::type2(3, 0).unwrap());
        let f = inst
            .factor(EdgeSet::from_edges(inst.graph(), [0, 1]).unwrap())
            .unwrap();
        let g = inst.factor(EdgeSet::empty(inst.graph())).unwrap();
        let norm = normalize(&inst, &f, &g).unwrap();
        assert_eq!(label_of(&norm, norm.expansion(0)[0]), [0, 2]);

        // Residue of one target edge folds to {0,1}.
        let g2 = inst.factor(EdgeSet::full(inst.graph())).unwrap();
        let norm = normalize(&inst, &f, &g2).unwrap();
        assert_eq!(norm.expansion(0).len(), 1);
        assert_eq!(label_of(&norm, norm.expansion(0)[0]), [0, 1]);
        assert_eq!(norm.signed_total(), rational_int(1));
    }

    #[test]
    fn gapped_labels_only_error_with_a_residue() {
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaf = DegreeConstraint::interval(1, 0, 1).unwrap();
        let hub = DegreeConstraint::new(3, [0, 3]).unwrap();
        let inst = Instance::new(
            claw,
            vec![hub, leaf.clone(), leaf.clone(), leaf],
            ones(3),
        )
        .unwrap();
        let f = inst.factor(EdgeSet::empty(inst.graph())).unwrap();
        let g = inst.factor(EdgeSet::full(inst.graph())).unwrap();

        assert!(matches!(
            normalize(&inst, &f, &g),
            Err(StructureError::InadmissibleConstraint(0))
        ));

        // Identical factors leave nothing to fold, so the gap never shows.
        let norm = normalize(&inst, &g, &g).unwrap();
        assert_eq!(norm.key().instance().edge_count(), 0);
        assert!(norm.signed_total().is_zero());
    }

    #[test]
    fn lifting_requires_positive_gain() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = DegreeConstraint::parity_interval(2, 0, 2).unwrap();
        let inst = Instance::new(g, vec![c.clone(), c.clone(), c], ones(3)).unwrap();
        let f = inst.factor(EdgeSet::full(inst.graph())).unwrap();
        let g = inst.factor(EdgeSet::empty(inst.graph())).unwrap();

        // Folding full against empty negates every weight.
        let norm = normalize(&inst, &f, &g).unwrap();
        let bf = BasicFactor::new(norm.key(), EdgeSet::full(norm.key().instance().graph()))
            .unwrap()
            .unwrap();
        assert_eq!(bf.weight(), &rational_int(-3));
        assert!(matches!(
            lift_basic_subgraph(&norm, &bf),
            Err(StructureError::NonPositiveGain)
        ));
        assert!(classify_basic(norm.key(), bf.edges()).unwrap().is_some());
    }
}
