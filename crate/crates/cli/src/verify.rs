//! In-process verification sweeps behind `factorum verify`: solver-versus-
//! brute equivalence, the structural pipeline from factor pairs to lifted
//! improvements, and exhaustive gadget realization identities.

use crate::gen::{self, ClassChoice};
use factorum_core::{brute_force_opt, DegreeConstraint, EdgeSet, Factor, Instance};
use factorum_solver::{
    build_interval_gadget, build_parity_gadget, main_solve, realized_set, GadgetBlueprint,
    GadgetError, OptBackend, OracleHandle,
};
use factorum_structure::{
    enumerate_basic_factors, find_even_at_u_basic_factor, find_positive_basic_factor,
    lift_basic_subgraph, normalize, KeyInstance, StructureError,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// One suite's outcome: every failure names the case seed that triggers it.
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        if self.passed() {
            format!("suite {}: {} cases, all passed", self.name, self.cases)
        } else {
            let mut out = format!(
                "suite {}: {} cases, {} FAILED\n",
                self.name,
                self.cases,
                self.failures.len()
            );
            for f in &self.failures {
                out.push_str(&format!("  counterexample: {f}\n"));
            }
            out.pop();
            out
        }
    }
}

fn random_case(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Instance {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(0..=(n * (n - 1) / 2).min(max_m));
    let graph = gen::random_graph(r, n, m).expect("m capped by the pair count");
    let constraints = graph
        .vertices()
        .map(|v| gen::random_constraint(r, graph.degree(v) as u32, &ClassChoice::ALL))
        .collect();
    let weights = (0..m)
        .map(|_| factorum_core::rational_int(r.gen_range(-5..=5)))
        .collect();
    Instance::new(graph, constraints, weights).expect("arities match degrees")
}

/// Every factor of a small instance, by exhausting edge subsets.
fn all_factors(inst: &Instance) -> Vec<Factor> {
    let m = inst.edge_count();
    (0..1u64 << m)
        .filter_map(|mask| {
            let mut edges = EdgeSet::with_capacity(m);
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    edges.insert(e);
                }
            }
            inst.is_factor(&edges).then(|| inst.factor(edges).unwrap())
        })
        .collect()
}

/// Full solves against the exhaustive optimum on random admissible
/// instances: weights must agree exactly and infeasibility must coincide.
pub fn run_solver_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut failures = Vec::new();
    for case in 0..cases {
        let case_seed = seed.wrapping_add(case as u64);
        let mut r = gen::rng(case_seed);
        let inst = random_case(&mut r, 10, 16);
        let oracle = OracleHandle::new(OptBackend::Matching);
        let solved = match main_solve(&inst, &oracle) {
            Ok(res) => res.outcome,
            Err(e) => {
                failures.push(format!("seed {case_seed}: solver error: {e}"));
                continue;
            }
        };
        let brute = brute_force_opt(&inst).expect("oracle instances stay under the brute cap");
        match (&solved, &brute) {
            (Some(a), Some(b)) if a.weight() == b.weight() => {}
            (None, None) => {}
            _ => {
                let fmt = |o: &Option<Factor>| match o {
                    Some(f) => f.weight().to_string(),
                    None => "infeasible".to_string(),
                };
                failures.push(format!(
                    "seed {case_seed}: solver found {} but exhaustive search found {}",
                    fmt(&solved),
                    fmt(&brute)
                ));
            }
        }
    }
    SuiteReport { name: "solver", cases, failures }
}

/// The improvement pipeline on random factor pairs: normalization invariants,
/// the positive-factor search, and lifting back to a strictly heavier
/// factor; plus the fixed showcase control separating the two type families.
pub fn run_structural_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut failures = Vec::new();
    let mut done = 0;
    let mut case = 0u64;
    while done < cases && case < 50 * cases as u64 {
        let case_seed = seed.wrapping_add(case);
        case += 1;
        let mut r = gen::rng(case_seed);
        let inst = random_case(&mut r, 8, 12);
        let factors = all_factors(&inst);
        if factors.len() < 2 {
            continue;
        }
        let i = (0..factors.len()).min_by_key(|&k| factors[k].weight()).unwrap();
        let j = (0..factors.len()).max_by_key(|&k| factors[k].weight()).unwrap();
        if factors[i].weight() == factors[j].weight() {
            continue;
        }
        done += 1;
        let (f, g) = (&factors[i], &factors[j]);
        let norm = match normalize(&inst, f, g) {
            Ok(n) => n,
            Err(e) => {
                failures.push(format!("seed {case_seed}: normalization failed: {e}"));
                continue;
            }
        };
        if !factorum_structure::is_key_instance(norm.key().instance()) {
            failures.push(format!("seed {case_seed}: output is not degree forced"));
            continue;
        }
        if norm.signed_total() != g.weight() - f.weight() {
            failures.push(format!("seed {case_seed}: signed total mismatch"));
            continue;
        }
        let bf = match find_positive_basic_factor(norm.key()) {
            Ok(bf) => bf,
            Err(e) => {
                failures.push(format!("seed {case_seed}: search failed: {e}"));
                continue;
            }
        };
        let h = match lift_basic_subgraph(&norm, &bf) {
            Ok(h) => h,
            Err(e) => {
                failures.push(format!("seed {case_seed}: lift failed: {e}"));
                continue;
            }
        };
        let flipped = inst
            .factor(f.edges().sym_diff(&h).expect("same graph"))
            .expect("lifting preserves feasibility");
        if flipped.weight() <= f.weight() {
            failures.push(format!("seed {case_seed}: lift did not improve the base"));
        }
    }
    if done < cases {
        failures.push(format!("only {done} of {cases} cases produced usable factor pairs"));
    }
    failures.extend(showcase_control().err());
    SuiteReport { name: "structural", cases: done, failures }
}

/// The showcase instance must reject the odd-only hub, hold no basic factor
/// of even degree there, and hand the even-capable hub its guaranteed pick.
fn showcase_control() -> Result<(), String> {
    let key = KeyInstance::new(gen::showcase_instance())
        .map_err(|e| format!("showcase: not degree forced: {e}"))?;
    match find_even_at_u_basic_factor(&key, 7) {
        Err(StructureError::UnsuitableVertex(7)) => {}
        other => {
            return Err(format!(
                "showcase: odd-only hub was not rejected: {other:?}"
            ))
        }
    }
    let stream =
        enumerate_basic_factors(&key).map_err(|e| format!("showcase: enumeration: {e}"))?;
    for bf in stream {
        if bf.degree_at(&key, 7) % 2 == 0 {
            return Err("showcase: found a basic factor of even degree at the odd-only hub"
                .to_string());
        }
    }
    let bf = find_even_at_u_basic_factor(&key, 4)
        .map_err(|e| format!("showcase: even-capable hub failed: {e}"))?;
    if !(bf.is_positive() && bf.degree_at(&key, 4) % 2 == 0) {
        return Err("showcase: even-capable pick is wrong".to_string());
    }
    Ok(())
}

/// Exhaustive realization identities: every interval and parity gadget up
/// to arity 6 realizes exactly the set it was built for.
pub fn run_gadget_suite() -> SuiteReport {
    let realize = |built: Result<GadgetBlueprint, GadgetError>| -> Result<DegreeConstraint, String> {
        let blueprint = built.map_err(|e| e.to_string())?;
        realized_set(&blueprint).map_err(|e| e.to_string())
    };
    let mut failures = Vec::new();
    let mut cases = 0;
    for d in 0..=6u32 {
        for g in 0..=d {
            for f in g..=d {
                cases += 1;
                match realize(build_interval_gadget(g, f, d)) {
                    Ok(realized) => {
                        let expect = DegreeConstraint::interval(d, g, f).unwrap();
                        if realized != expect {
                            failures.push(format!("interval ({g},{f},{d}): wrong realized set"));
                        }
                    }
                    Err(e) => failures.push(format!("interval ({g},{f},{d}): {e}")),
                }
                if (f - g) % 2 != 0 {
                    continue;
                }
                cases += 1;
                match realize(build_parity_gadget(g, f, d)) {
                    Ok(realized) => {
                        let expect = DegreeConstraint::parity_interval(d, g, f).unwrap();
                        if realized != expect {
                            failures.push(format!("parity ({g},{f},{d}): wrong realized set"));
                        }
                    }
                    Err(e) => failures.push(format!("parity ({g},{f},{d}): {e}")),
                }
            }
        }
    }
    SuiteReport { name: "gadgets", cases, failures }
}
