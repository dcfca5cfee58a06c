//! Exhaustive checks on gadget behavior: which stub patterns are feasible,
//! whether the feasible family forms a delta-matroid, the exchange-partition
//! witness between two feasible patterns, and the forbidden-pattern test
//! separating realizable degree sets from unrealizable ones.
//!
//! Everything here is independent of the weighted matching engine: pattern
//! feasibility is decided by a direct backtracking search, so these routines
//! can serve as an oracle for the reduction built on top of that engine.

use crate::gadget::GadgetBlueprint;
use factorum_core::{ConstraintError, DegreeConstraint};
use thiserror::Error;

/// Ground-set cap for [`SetFamily`]: members are stored as one-word bitmasks.
pub const GROUND_CAP: usize = 20;
/// Exhaustive exchange-axiom check is quadratic in the family size, so the
/// ground set is capped tighter.
pub const DELTA_MATROID_GROUND_CAP: usize = 16;
/// Cap on gadget size for the exhaustive pattern searches.
pub const PATTERN_SEARCH_VERTEX_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizabilityError {
    #[error("ground set of {got} exceeds the cap {cap}")]
    GroundTooLarge { got: usize, cap: usize },
    #[error("member {member:#b} has bits outside the {ground}-element ground set")]
    MemberOutOfRange { member: u64, ground: usize },
    #[error("duplicate member {0:#b}")]
    DuplicateMember(u64),
    #[error("gadget has {vertices} vertices, exhaustive search is capped at {cap}")]
    VertexCapExceeded { vertices: usize, cap: usize },
    #[error("no pattern size is feasible for every pattern, so no degree set is realized")]
    EmptyRealizedSet,
    #[error("stub pattern {pattern:#b} admits no feasible matching")]
    InfeasiblePattern { pattern: u64 },
    #[error("degree set has a gap of {gap} consecutive missing values; only gaps of at most one are classified")]
    GapTooLarge { gap: u32 },
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// A family of subsets of `{0, .., ground-1}`, each a bitmask, kept sorted
/// and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(
        ground: usize,
        members: impl IntoIterator<Item = u64>,
    ) -> Result<Self, RealizabilityError> {
        if ground > GROUND_CAP {
            return Err(RealizabilityError::GroundTooLarge {
                got: ground,
                cap: GROUND_CAP,
            });
        }
        let mut members: Vec<u64> = members.into_iter().collect();
        let full = (1u64 << ground) - 1;
        if let Some(&bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(RealizabilityError::MemberOutOfRange {
                member: bad,
                ground,
            });
        }
        members.sort_unstable();
        if let Some(dup) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(RealizabilityError::DuplicateMember(dup[0]));
        }
        Ok(SetFamily { ground, members })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, member: u64) -> bool {
        self.members.binary_search(&member).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Exhaustive symmetric exchange axiom: for all members X, Y and every
/// u in X delta Y there is a v in X delta Y (v = u allowed) with
/// X delta {u, v} in the family. Empty families pass vacuously.
pub fn is_delta_matroid(family: &SetFamily) -> Result<bool, RealizabilityError> {
    if family.ground() > DELTA_MATROID_GROUND_CAP {
        return Err(RealizabilityError::GroundTooLarge {
            got: family.ground(),
            cap: DELTA_MATROID_GROUND_CAP,
        });
    }
    let bits = |mut m: u64| {
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros();
                m &= m - 1;
                Some(b)
            }
        })
    };
    for &x in family.members() {
        for &y in family.members() {
            let diff = x ^ y;
            for u in bits(diff) {
                let swapped = x ^ (1 << u);
                let ok = bits(diff).any(|v| {
                    let candidate = if v == u { swapped } else { swapped ^ (1 << v) };
                    family.contains(candidate)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn adjacency(gadget: &GadgetBlueprint) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); gadget.vertex_count()];
    for &(a, b) in gadget.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Backtracking matcher: find a matching covering every vertex of `must`,
/// touching no vertex with `allowed` false. Vertices outside `must` with
/// `allowed` true may be covered or not. Returns the edges used.
fn cover_matching(
    adj: &[Vec<usize>],
    must: &[bool],
    allowed: &[bool],
) -> Option<Vec<(usize, usize)>> {
    fn extend(
        adj: &[Vec<usize>],
        must: &[bool],
        allowed: &[bool],
        covered: &mut [bool],
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        // Branch on the lowest uncovered must-vertex; every valid matching
        // covers it, so trying each available partner is exhaustive.
        let Some(v) = (0..adj.len()).find(|&v| must[v] && !covered[v]) else {
            return true;
        };
        for &u in &adj[v] {
            if covered[u] || !allowed[u] {
                continue;
            }
            covered[v] = true;
            covered[u] = true;
            out.push((v, u));
            if extend(adj, must, allowed, covered, out) {
                return true;
            }
            out.pop();
            covered[v] = false;
            covered[u] = false;
        }
        false
    }

    let mut covered = vec![false; adj.len()];
    let mut out = Vec::new();
    extend(adj, must, allowed, &mut covered, &mut out).then_some(out)
}

fn pattern_constraints(gadget: &GadgetBlueprint, pattern: u64) -> (Vec<bool>, Vec<bool>) {
    let n = gadget.vertex_count();
    let mut must = vec![false; n];
    let mut allowed = vec![true; n];
    for s in gadget.stubs() {
        if pattern >> s & 1 == 1 {
            must[s] = true;
        } else {
            allowed[s] = false;
        }
    }
    for v in gadget.internals() {
        must[v] = gadget.is_required(v);
    }
    (must, allowed)
}

fn check_caps(gadget: &GadgetBlueprint) -> Result<(), RealizabilityError> {
    if gadget.vertex_count() > PATTERN_SEARCH_VERTEX_CAP {
        return Err(RealizabilityError::VertexCapExceeded {
            vertices: gadget.vertex_count(),
            cap: PATTERN_SEARCH_VERTEX_CAP,
        });
    }
    if gadget.arity() > GROUND_CAP {
        return Err(RealizabilityError::GroundTooLarge {
            got: gadget.arity(),
            cap: GROUND_CAP,
        });
    }
    Ok(())
}

fn feasible_pattern(
    gadget: &GadgetBlueprint,
    adj: &[Vec<usize>],
    pattern: u64,
) -> Option<Vec<(usize, usize)>> {
    let (must, allowed) = pattern_constraints(gadget, pattern);
    cover_matching(adj, &must, &allowed)
}

/// All feasible stub patterns of the gadget, as a family over the stubs.
pub fn feasible_stub_family(gadget: &GadgetBlueprint) -> Result<SetFamily, RealizabilityError> {
    check_caps(gadget)?;
    let adj = adjacency(gadget);
    let members =
        (0..1u64 << gadget.arity()).filter(|&w| feasible_pattern(gadget, &adj, w).is_some());
    SetFamily::new(gadget.arity(), members)
}

/// The degree set the gadget actually realizes: k belongs to it exactly when
/// every stub pattern of size k is feasible. Errors if no size qualifies.
pub fn realized_set(gadget: &GadgetBlueprint) -> Result<DegreeConstraint, RealizabilityError> {
    check_caps(gadget)?;
    let adj = adjacency(gadget);
    let arity = gadget.arity();
    let mut all_feasible = vec![true; arity + 1];
    for pattern in 0..1u64 << arity {
        let k = pattern.count_ones() as usize;
        if all_feasible[k] && feasible_pattern(gadget, &adj, pattern).is_none() {
            all_feasible[k] = false;
        }
    }
    let mask = all_feasible
        .iter()
        .enumerate()
        .filter(|&(_, &ok)| ok)
        .fold(0u64, |m, (k, _)| m | 1 << k);
    if mask == 0 {
        return Err(RealizabilityError::EmptyRealizedSet);
    }
    Ok(DegreeConstraint::from_mask(arity as u32, mask)?)
}

/// The exchange partition between two feasible patterns: parts of
/// `v1 delta v2` such that flipping any union of parts stays feasible from
/// both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    /// Two-stub parts.
    pub pairs: Vec<(usize, usize)>,
    /// One-stub parts.
    pub singles: Vec<usize>,
}

impl PartitionWitness {
    /// Part masks over the stub ground set.
    pub fn part_masks(&self) -> Vec<u64> {
        self.pairs
            .iter()
            .map(|&(a, b)| 1 << a | 1 << b)
            .chain(self.singles.iter().map(|&s| 1 << s))
            .collect()
    }
}

/// Builds the exchange partition for feasible patterns `v1`, `v2`: take
/// witness matchings for both, walk the paths of their symmetric difference,
/// and read off which stubs each path toggles. Every union of parts is then
/// checked feasible from both sides; that check failing would mean the
/// construction itself is wrong, so it is asserted.
pub fn partition_witness(
    gadget: &GadgetBlueprint,
    v1: u64,
    v2: u64,
) -> Result<PartitionWitness, RealizabilityError> {
    check_caps(gadget)?;
    // check_caps bounds the arity well below 64, so the shift is safe.
    let full = (1u64 << gadget.arity()) - 1;
    for pattern in [v1, v2] {
        if pattern & !full != 0 {
            return Err(RealizabilityError::MemberOutOfRange {
                member: pattern,
                ground: gadget.arity(),
            });
        }
    }
    let adj = adjacency(gadget);
    let m1 = feasible_pattern(gadget, &adj, v1)
        .ok_or(RealizabilityError::InfeasiblePattern { pattern: v1 })?;
    let m2 = feasible_pattern(gadget, &adj, v2)
        .ok_or(RealizabilityError::InfeasiblePattern { pattern: v2 })?;

    let norm = |edges: &[(usize, usize)]| -> std::collections::HashSet<(usize, usize)> {
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
    };
    let e1 = norm(&m1);
    let e2 = norm(&m2);
    let diff: Vec<(usize, usize)> = e1.symmetric_difference(&e2).copied().collect();

    // The difference has max degree two: one edge from each matching. Its
    // path endpoints are the vertices covered by exactly one matching; stubs
    // always sit at path ends because their internal degree is one.
    let mut dadj = vec![Vec::new(); gadget.vertex_count()];
    for &(a, b) in &diff {
        dadj[a].push(b);
        dadj[b].push(a);
    }
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    let mut visited = vec![false; gadget.vertex_count()];
    for start in 0..gadget.vertex_count() {
        if visited[start] || dadj[start].len() != 1 {
            continue;
        }
        let mut prev = start;
        visited[prev] = true;
        let mut cur = dadj[start][0];
        while dadj[cur].len() == 2 {
            visited[cur] = true;
            let next = if dadj[cur][0] == prev {
                dadj[cur][1]
            } else {
                dadj[cur][0]
            };
            prev = cur;
            cur = next;
        }
        visited[cur] = true;
        match (gadget.is_stub(start), gadget.is_stub(cur)) {
            (true, true) => pairs.push((start.min(cur), start.max(cur))),
            (true, false) => singles.push(start),
            (false, true) => singles.push(cur),
            (false, false) => {}
        }
    }
    pairs.sort_unstable();
    singles.sort_unstable();
    let witness = PartitionWitness { pairs, singles };

    let toggled = v1 ^ v2;
    let union_of_parts = witness.part_masks().iter().fold(0u64, |m, p| m | p);
    assert_eq!(
        union_of_parts, toggled,
        "exchange parts must partition the toggled stubs"
    );
    let parts = witness.part_masks();
    assert!(parts.len() <= GROUND_CAP, "more parts than toggled stubs");
    for select in 0..1u64 << parts.len() {
        let flip = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| select >> i & 1 == 1)
            .fold(0u64, |m, (_, p)| m | p);
        for side in [v1, v2] {
            assert!(
                feasible_pattern(gadget, &adj, side ^ flip).is_some(),
                "flipping a union of exchange parts must stay feasible"
            );
        }
    }
    Ok(witness)
}

/// Verdict of the forbidden-pattern scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// No forbidden pattern; consistent with being realizable by a gadget.
    RealizableConsistent,
    /// Contains a forbidden pattern, so no gadget realizes it.
    NotRealizable,
}

/// Scans a degree set (gaps of at most one) for the two forbidden patterns:
/// p, p+1, p+3 present with p+2 absent, or p, p+2, p+3 present with p+1
/// absent. Either one rules out a realizing gadget.
pub fn obstruction_check(d: &DegreeConstraint) -> Result<ObstructionVerdict, RealizabilityError> {
    let gap = d.max_gap();
    if gap > 1 {
        return Err(RealizabilityError::GapTooLarge { gap });
    }
    for p in 0..=d.arity().saturating_sub(3) {
        let has = |k: u32| d.contains(p + k);
        if has(0) && has(1) && has(3) && !has(2) {
            return Ok(ObstructionVerdict::NotRealizable);
        }
        if has(0) && has(2) && has(3) && !has(1) {
            return Ok(ObstructionVerdict::NotRealizable);
        }
    }
    Ok(ObstructionVerdict::RealizableConsistent)
}
