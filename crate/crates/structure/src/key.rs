//! Key instances (subcubic graphs with degree-forced labels) and the five
//! basic-factor shapes.

use crate::StructureError;
use factorum_core::{DegreeConstraint, EdgeId, EdgeSet, Instance, Rational, VertexId};
use num_traits::Zero;

/// An instance whose graph is subcubic without isolated vertices and whose
/// labels are forced by degree: deg 1 carries {0,1}, deg 2 carries {0,2},
/// and deg 3 carries {0,1,3} or {0,2,3}. The wrapper validates once; the
/// structural search relies on the shape throughout.
#[derive(Debug, Clone)]
pub struct KeyInstance {
    inner: Instance,
}

impl KeyInstance {
    pub fn new(inst: Instance) -> Result<Self, StructureError> {
        match key_violation(&inst) {
            None => Ok(KeyInstance { inner: inst }),
            Some(reason) => Err(StructureError::NotKeyInstance(reason)),
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.inner
    }

    pub fn into_instance(self) -> Instance {
        self.inner
    }

    /// Weight of the whole graph.
    pub fn total_weight(&self) -> Rational {
        self.inner.weights().iter().sum()
    }

    /// Degree-3 vertex labeled {0,1,3}.
    pub fn is_type1(&self, v: VertexId) -> bool {
        self.inner.graph().degree(v) == 3 && self.inner.constraint(v).classify().is_type1
    }

    /// Degree-3 vertex labeled {0,2,3}.
    pub fn is_type2(&self, v: VertexId) -> bool {
        self.inner.graph().degree(v) == 3 && self.inner.constraint(v).classify().is_type2
    }

    /// The sub-instance induced by a factor: the graph shrinks to the
    /// factor's edges and every label is truncated to the new degree. The
    /// result is again a key instance. Returns it with the vertex and edge
    /// maps back to this instance's ids.
    pub fn induced_by(
        &self,
        f: &EdgeSet,
    ) -> Result<(KeyInstance, Vec<VertexId>, Vec<EdgeId>), StructureError> {
        if !self.inner.is_factor(f) {
            return Err(StructureError::NotAFactor);
        }
        let (sub, vertex_map, edge_map) = self.inner.graph().subgraph_spanned_by(f);
        let constraints: Vec<DegreeConstraint> = (0..sub.vertex_count())
            .map(|x| {
                let degree = sub.degree(x) as u32;
                let old = self.inner.constraint(vertex_map[x]);
                let kept = old.iter().filter(|&d| d <= degree);
                DegreeConstraint::new(degree, kept)
                    .expect("truncating a label to the new degree keeps it well formed")
            })
            .collect();
        let weights: Vec<Rational> =
            edge_map.iter().map(|&e| self.inner.weight(e).clone()).collect();
        let inst = Instance::new(sub, constraints, weights)
            .expect("induced sub-instance inherits matching arities");
        let key = KeyInstance::new(inst)
            .expect("a factor of a key instance induces a key instance");
        Ok((key, vertex_map, edge_map))
    }
}

/// Checks the degree-forced labeling of Definition-style key instances.
pub fn is_key_instance(inst: &Instance) -> bool {
    key_violation(inst).is_none()
}

fn key_violation(inst: &Instance) -> Option<String> {
    let g = inst.graph();
    for v in g.vertices() {
        let degree = g.degree(v);
        let c = inst.constraint(v);
        let values: Vec<u32> = c.iter().collect();
        let ok = match degree {
            1 => values == [0, 1],
            2 => values == [0, 2],
            3 => values == [0, 1, 3] || values == [0, 2, 3],
            _ => false,
        };
        if !ok {
            return Some(format!("vertex {v} has degree {degree} with label {c}"));
        }
    }
    None
}

/// The five forms a basic factor can take, with its distinguished
/// vertices: path endpoints, the tadpole's degree-3 junction and degree-1
/// tip, the dumbbell's two junctions, or the theta's two branch vertices
/// split by type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicShape {
    Path { ends: (VertexId, VertexId) },
    Cycle,
    Tadpole { junction: VertexId, tip: VertexId },
    Dumbbell { junctions: (VertexId, VertexId) },
    Theta { type1: VertexId, type2: VertexId },
}

/// A factor of a key instance in one of the five basic shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicFactor {
    edges: EdgeSet,
    shape: BasicShape,
    weight: Rational,
}

impl BasicFactor {
    /// Wraps an edge set when it is a factor of one of the five shapes.
    pub fn new(key: &KeyInstance, edges: EdgeSet) -> Result<Option<BasicFactor>, StructureError> {
        let shape = classify_basic(key, &edges)?;
        Ok(shape.map(|shape| {
            let weight = key.instance().weight_of(&edges);
            BasicFactor { edges, shape, weight }
        }))
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn shape(&self) -> &BasicShape {
        &self.shape
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn is_positive(&self) -> bool {
        self.weight > Rational::zero()
    }

    /// Degree of `v` in the factor (0 when untouched).
    pub fn degree_at(&self, key: &KeyInstance, v: VertexId) -> usize {
        self.edges.degree_in(key.instance().graph(), v)
    }
}

/// Identifies which of the five shapes a factor takes, or None. Shapes are
/// recognized from the degree sequence plus connectivity; the theta
/// additionally needs one branch vertex of each type.
pub fn classify_basic(
    key: &KeyInstance,
    s: &EdgeSet,
) -> Result<Option<BasicShape>, StructureError> {
    if !key.instance().is_factor(s) {
        return Err(StructureError::NotAFactor);
    }
    Ok(classify_shape(key, s))
}

/// Shape recognition without the factor check (callers guarantee it).
pub(crate) fn classify_shape(key: &KeyInstance, s: &EdgeSet) -> Option<BasicShape> {
    if s.is_empty() {
        return None;
    }
    let g = key.instance().graph();
    if g.edge_set_components(s).len() != 1 {
        return None;
    }
    let mut ones = Vec::new();
    let mut threes = Vec::new();
    for v in s.covered_vertices(g) {
        match s.degree_in(g, v) {
            1 => ones.push(v),
            2 => {}
            3 => threes.push(v),
            _ => return None,
        }
    }
    match (ones.as_slice(), threes.as_slice()) {
        ([a, b], []) => Some(BasicShape::Path { ends: (*a, *b) }),
        ([], []) => Some(BasicShape::Cycle),
        ([tip], [junction]) => Some(BasicShape::Tadpole { junction: *junction, tip: *tip }),
        ([], [a, b]) => {
            let (sub, _, _) = g.subgraph_spanned_by(s);
            if sub.bridges().is_empty() {
                match (key.is_type1(*a), key.is_type1(*b)) {
                    (true, false) => Some(BasicShape::Theta { type1: *a, type2: *b }),
                    (false, true) => Some(BasicShape::Theta { type1: *b, type2: *a }),
                    _ => None,
                }
            } else {
                Some(BasicShape::Dumbbell { junctions: (*a, *b) })
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use factorum_core::Graph;

    fn weights(n: usize) -> Vec<Rational> {
        (0..n).map(|_| Rational::from_integer(1.into())).collect()
    }

    fn deg2() -> DegreeConstraint {
        DegreeConstraint::parity_interval(2, 0, 2).unwrap()
    }

    fn deg1() -> DegreeConstraint {
        DegreeConstraint::interval(1, 0, 1).unwrap()
    }

    fn key_from(graph: Graph, constraints: Vec<DegreeConstraint>) -> KeyInstance {
        let m = graph.edge_count();
        KeyInstance::new(Instance::new(graph, constraints, weights(m)).unwrap()).unwrap()
    }

    #[test]
    fn degree_forced_labels() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = Instance::new(g, vec![deg2(), deg2(), deg2()], weights(3)).unwrap();
        assert!(is_key_instance(&inst));

        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let odd = DegreeConstraint::new(2, [0, 1]).unwrap();
        let inst = Instance::new(g, vec![deg2(), deg2(), odd], weights(3)).unwrap();
        assert!(!is_key_instance(&inst));

        // Isolated vertices break the subcubic shape.
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let empty = DegreeConstraint::new(0, [0]).unwrap();
        let inst = Instance::new(g, vec![deg1(), deg1(), empty], weights(1)).unwrap();
        assert!(!is_key_instance(&inst));
    }

    #[test]
    fn path_cycle_and_tadpole_shapes() {
        // Triangle with a pendant path of length 2 at vertex 0.
        let g =
            Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]).unwrap();
        let t2 = DegreeConstraint::type2(3, 0).unwrap();
        let key = key_from(g, vec![t2, deg2(), deg2(), deg2(), deg1()]);
        let g = key.instance().graph();

        let all = EdgeSet::full(g);
        assert_eq!(
            classify_basic(&key, &all).unwrap(),
            Some(BasicShape::Tadpole { junction: 0, tip: 4 })
        );

        let cycle = EdgeSet::from_edges(g, [0, 1, 2]).unwrap();
        assert_eq!(classify_basic(&key, &cycle).unwrap(), Some(BasicShape::Cycle));

        let empty = EdgeSet::empty(g);
        assert_eq!(classify_basic(&key, &empty).unwrap(), None);

        // Paths need 1-feasible endpoints; a bare line provides them.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let line = key_from(g, vec![deg1(), deg2(), deg1()]);
        let all = EdgeSet::full(line.instance().graph());
        assert_eq!(
            classify_basic(&line, &all).unwrap(),
            Some(BasicShape::Path { ends: (0, 2) })
        );
    }

    #[test]
    fn theta_requires_opposite_types() {
        // Three 0-5 branches: 0-1-5, 0-2-5, 0-3-4-5.
        let edges = [(0, 1), (1, 5), (0, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
        let build = |c0: DegreeConstraint, c5: DegreeConstraint| {
            let g = Graph::from_edges(6, edges).unwrap();
            key_from(g, vec![c0, deg2(), deg2(), deg2(), deg2(), c5])
        };
        let t1 = || DegreeConstraint::type1(3, 0).unwrap();
        let t2 = || DegreeConstraint::type2(3, 0).unwrap();

        let mixed = build(t1(), t2());
        let all = EdgeSet::full(mixed.instance().graph());
        assert_eq!(
            classify_basic(&mixed, &all).unwrap(),
            Some(BasicShape::Theta { type1: 0, type2: 5 })
        );

        let both_type1 = build(t1(), t1());
        let all = EdgeSet::full(both_type1.instance().graph());
        assert_eq!(classify_basic(&both_type1, &all).unwrap(), None);
    }

    #[test]
    fn dumbbell_and_disconnected_shapes() {
        // Triangles 0-1-2 and 4-5-6 joined by the path 0-3-4.
        let edges =
            [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 4)];
        let g = Graph::from_edges(7, edges).unwrap();
        let t2 = || DegreeConstraint::type2(3, 0).unwrap();
        let key = key_from(
            g,
            vec![t2(), deg2(), deg2(), deg2(), t2(), deg2(), deg2()],
        );
        let g = key.instance().graph();

        let all = EdgeSet::full(g);
        assert_eq!(
            classify_basic(&key, &all).unwrap(),
            Some(BasicShape::Dumbbell { junctions: (0, 4) })
        );

        // The two triangles without the bridge path: a factor (both
        // junctions keep degree 2), but disconnected, so not basic.
        let two_cycles = EdgeSet::from_edges(g, [0, 1, 2, 5, 6, 7]).unwrap();
        assert_eq!(classify_basic(&key, &two_cycles).unwrap(), None);

        let not_factor = EdgeSet::from_edges(g, [3]).unwrap();
        assert!(matches!(
            classify_basic(&key, &not_factor),
            Err(StructureError::NotAFactor)
        ));
    }

    #[test]
    fn induced_sub_instance_truncates_labels() {
        // Tadpole: triangle at type-1 vertex 0 plus pendant 0-3.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let t1 = DegreeConstraint::type1(3, 0).unwrap();
        let key = key_from(g, vec![t1, deg2(), deg2(), deg1()]);

        // The pendant edge alone: vertex 0 keeps degree 1.
        let f = EdgeSet::from_edges(key.instance().graph(), [3]).unwrap();
        let (sub, vmap, emap) = key.induced_by(&f).unwrap();
        assert_eq!(vmap, vec![0, 3]);
        assert_eq!(emap, vec![3]);
        let c: Vec<u32> = sub.instance().constraint(0).iter().collect();
        assert_eq!(c, [0, 1]);

        let not_factor = EdgeSet::from_edges(key.instance().graph(), [0]).unwrap();
        assert!(key.induced_by(&not_factor).is_err());
    }
}
