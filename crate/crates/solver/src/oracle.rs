//! Optimization and decision oracles behind the recursive solver.
//!
//! Optimization answers "an optimal factor, or No" for instances whose
//! constraints are all intervals or parity intervals, either through the
//! matching reduction or by brute force. Decision answers mere feasibility
//! for instances that may also carry the three-element constraint families,
//! by enumerating their parity splits; that costs up to 2^|T| optimization
//! calls, so the split count is capped.

use crate::reduce::{reduce_instance, ReduceError};
use factorum_core::{brute_force_opt, Factor, Instance, InstanceError, SplitBranch};
use factorum_matching::max_weight_perfect_matching_certified;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Default limit on type-constrained vertices in a decision query.
pub const DECISION_T_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("decision backend is capped at {cap} type-constrained vertices, instance has {t_size}")]
    DecisionCapExceeded { t_size: usize, cap: usize },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Which optimization routine answers the queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptBackend {
    /// Gadget reduction + maximum-weight perfect matching.
    Matching,
    /// Exhaustive search over edge subsets (small instances only).
    Brute,
}

/// Optimal factor of an interval/parity-interval instance via the matching
/// reduction, or None when the instance has no factor at all.
pub fn opt_matching_backend(inst: &Instance) -> Result<Option<Factor>, OracleError> {
    let reduced = reduce_instance(inst)?;
    let Some((matching, _certificate)) = max_weight_perfect_matching_certified(reduced.problem())
    else {
        return Ok(None);
    };
    let factor = inst
        .factor(reduced.decode(&matching))
        .expect("decoded matching must satisfy every degree constraint");
    debug_assert_eq!(
        factor.weight(),
        matching.weight(),
        "middle connector edges carry the whole weight"
    );
    Ok(Some(factor))
}

fn run_backend(backend: OptBackend, inst: &Instance) -> Result<Option<Factor>, OracleError> {
    match backend {
        OptBackend::Matching => opt_matching_backend(inst),
        OptBackend::Brute => Ok(brute_force_opt(inst)?),
    }
}

/// Feasibility for instances that may carry type constraints: enumerate the
/// 2^|T| parity splits in lexicographic order (least type vertex most
/// significant, two-element branch first), optimize each split, and return
/// the first factor found. The splits cover the whole factor set, so None
/// here means the instance has no factor.
pub fn decision_split_backend(
    inst: &Instance,
    backend: OptBackend,
    t_cap: usize,
) -> Result<Option<Factor>, OracleError> {
    let t = inst.t_set();
    if t.len() > t_cap {
        return Err(OracleError::DecisionCapExceeded {
            t_size: t.len(),
            cap: t_cap,
        });
    }
    let k = t.len();
    for assignment in 0..1u64 << k {
        let mut split = inst.clone();
        for (i, &v) in t.iter().enumerate() {
            let branch = if assignment >> (k - 1 - i) & 1 == 0 {
                SplitBranch::Zero
            } else {
                SplitBranch::One
            };
            split = split.restrict_parity(v, branch)?;
        }
        if let Some(found) = run_backend(backend, &split)? {
            let found = inst
                .factor(found.into_edges())
                .expect("a factor of a parity split is a factor of the instance");
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// The oracle pair handed to the solver: a shared backend choice, the
/// decision split cap, and atomic query counters.
#[derive(Debug)]
pub struct OracleHandle {
    backend: OptBackend,
    t_cap: usize,
    opt_calls: AtomicU64,
    dec_calls: AtomicU64,
}

impl OracleHandle {
    pub fn new(backend: OptBackend) -> Self {
        Self::with_t_cap(backend, DECISION_T_CAP)
    }

    pub fn with_t_cap(backend: OptBackend, t_cap: usize) -> Self {
        OracleHandle {
            backend,
            t_cap,
            opt_calls: AtomicU64::new(0),
            dec_calls: AtomicU64::new(0),
        }
    }

    pub fn backend(&self) -> OptBackend {
        self.backend
    }

    pub fn opt_calls(&self) -> u64 {
        self.opt_calls.load(Ordering::Relaxed)
    }

    pub fn dec_calls(&self) -> u64 {
        self.dec_calls.load(Ordering::Relaxed)
    }

    pub fn reset_counters(&self) {
        self.opt_calls.store(0, Ordering::Relaxed);
        self.dec_calls.store(0, Ordering::Relaxed);
    }

    /// One optimization query. Counts as a single call regardless of backend.
    pub fn optimize(&self, inst: &Instance) -> Result<Option<Factor>, OracleError> {
        self.opt_calls.fetch_add(1, Ordering::Relaxed);
        run_backend(self.backend, inst)
    }

    /// One decision query. The split enumeration inside is not billed
    /// against the optimization counter; decision is a black box.
    pub fn decide(&self, inst: &Instance) -> Result<Option<Factor>, OracleError> {
        self.dec_calls.fetch_add(1, Ordering::Relaxed);
        decision_split_backend(inst, self.backend, self.t_cap)
    }

    /// A fresh handle with the same configuration and zeroed counters.
    pub fn fresh(&self) -> Self {
        Self::with_t_cap(self.backend, self.t_cap)
    }
}
