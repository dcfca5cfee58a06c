//! Core data model for weighted general graph factors: simple graphs with
//! edge-subset algebra, degree-constraint classification, and instances with
//! exact rational weights plus a brute-force reference optimizer.

pub mod constraint;
pub mod graph;
pub mod instance;
pub mod rational;

pub use constraint::{ConstraintClass, ConstraintError, DegreeConstraint, SplitBranch};
pub use graph::{EdgeId, EdgeSet, Graph, GraphError, PathDescriptor, VertexId};
pub use instance::{
    brute_force_opt, Factor, Instance, InstanceError, SliceSpec, ValidationReport, Violation,
};
pub use rational::{parse_rational, rational_int, rational_to_string, Rational};
