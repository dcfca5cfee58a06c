//! Solver for maximum-weight degree-constrained subgraphs: gadget reduction
//! to perfect matching, optimization/decision oracles, the recursive driver,
//! and exhaustive realizability checks for the gadget constructions.

pub mod gadget;
pub mod oracle;
pub mod realizability;
pub mod reduce;
pub mod solve;

pub use gadget::{build_interval_gadget, build_parity_gadget, GadgetBlueprint, GadgetError};
pub use oracle::{
    decision_split_backend, opt_matching_backend, OptBackend, OracleError, OracleHandle,
    DECISION_T_CAP,
};
pub use realizability::{
    feasible_stub_family, is_delta_matroid, obstruction_check, partition_witness, realized_set,
    ObstructionVerdict, PartitionWitness, RealizabilityError, SetFamily,
};
pub use reduce::{reduce_instance, ReduceError, ReducedGraph};
pub use solve::{
    check_optimality_criterion, main_solve, SolveResult, SolveStats, SolverError, TraceEntry,
};
