//! Command dispatch: argument tree, command bodies, and the exit-code
//! contract (0 optimum, 2 no factor, 1 usage or bad input, 3 internal).

use crate::format::{
    self, instance_to_dot, parse_backup, parse_edge_list, parse_factor, parse_instance,
    serialize_factor, serialize_instance,
};
use crate::gen::{self, ClassChoice};
use crate::verify;
use clap::{Arg, ArgAction, ArgMatches, Command};
use factorum_core::{rational_to_string, EdgeSet, Instance, Rational};
use factorum_matching::{max_weight_perfect_matching, MatchingProblem};
use factorum_solver::{
    build_interval_gadget, build_parity_gadget, main_solve, realized_set, reduce_instance,
    OptBackend, OracleHandle, SolveResult,
};
use factorum_core::SplitBranch;
use std::ffi::OsString;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_FACTOR: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

fn instance_arg() -> Arg {
    Arg::new("file").required(true).value_name("FILE").help("instance file")
}

fn seed_arg() -> Arg {
    Arg::new("seed")
        .long("seed")
        .value_name("SEED")
        .value_parser(clap::value_parser!(u64))
        .help("random seed (FACTORUM_SEED is the fallback)")
}

fn cli() -> Command {
    Command::new("factorum")
        .about("Maximum-weight degree-constrained subgraph solver")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(
            Command::new("solve")
                .about("Solve an instance file to an optimal factor")
                .arg(instance_arg())
                .arg(
                    Arg::new("oracle")
                        .long("oracle")
                        .value_name("BACKEND")
                        .value_parser(["matching", "brute"])
                        .default_value("matching")
                        .help("optimization backend"),
                )
                .arg(
                    Arg::new("stats")
                        .long("stats")
                        .action(ArgAction::SetTrue)
                        .help("print oracle-call statistics"),
                )
                .arg(
                    Arg::new("trace")
                        .long("trace")
                        .action(ArgAction::SetTrue)
                        .help("print the recursion trace"),
                )
                .arg(
                    Arg::new("json")
                        .long("json")
                        .action(ArgAction::SetTrue)
                        .help("machine-readable output"),
                )
                .arg(
                    Arg::new("dot")
                        .long("dot")
                        .action(ArgAction::SetTrue)
                        .help("dump the parsed instance as DOT and exit"),
                )
                .arg(seed_arg()),
        )
        .subcommand(
            Command::new("check")
                .about("Validate a factor file against an instance")
                .arg(instance_arg())
                .arg(
                    Arg::new("factor")
                        .required(true)
                        .value_name("FACTOR")
                        .help("factor file (solve output re-checks as is)"),
                ),
        )
        .subcommand(
            Command::new("terminal-backup")
                .about("Convert a backup problem to an instance, or solve it")
                .arg(instance_arg())
                .arg(
                    Arg::new("solve")
                        .long("solve")
                        .action(ArgAction::SetTrue)
                        .help("solve the converted instance and report the cost"),
                ),
        )
        .subcommand(
            Command::new("gen")
                .about("Generate a reproducible random instance")
                .arg(
                    Arg::new("n")
                        .long("n")
                        .required(true)
                        .value_name("N")
                        .value_parser(clap::value_parser!(usize))
                        .help("vertex count"),
                )
                .arg(
                    Arg::new("m")
                        .long("m")
                        .required(true)
                        .value_name("M")
                        .value_parser(clap::value_parser!(usize))
                        .help("edge count"),
                )
                .arg(
                    Arg::new("classes")
                        .long("classes")
                        .value_name("LIST")
                        .default_value("interval,parity,type1,type2")
                        .help("constraint families to draw from"),
                )
                .arg(
                    Arg::new("weight-range")
                        .long("weight-range")
                        .value_name("LO..HI")
                        .default_value("-5..5")
                        .help("integer weight range"),
                )
                .arg(seed_arg()),
        )
        .subcommand(
            Command::new("verify")
                .about("Run the randomized verification suites")
                .arg(
                    Arg::new("suite")
                        .long("suite")
                        .value_name("SUITE")
                        .value_parser(["solver", "structural", "gadgets", "all"])
                        .default_value("all")
                        .help("which suite to run"),
                )
                .arg(
                    Arg::new("cases")
                        .long("cases")
                        .value_name("N")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("200")
                        .help("cases per randomized suite"),
                )
                .arg(seed_arg()),
        )
        .subcommand(
            Command::new("debug")
                .about("Inspect the lower layers")
                .subcommand_required(true)
                .subcommand(
                    Command::new("matching")
                        .about("Maximum-weight perfect matching on an edge list")
                        .arg(instance_arg()),
                )
                .subcommand(
                    Command::new("reduce")
                        .about("Show the matching reduction of an instance")
                        .arg(instance_arg()),
                )
                .subcommand(
                    Command::new("gadget")
                        .about("Build one constraint gadget and report what it realizes")
                        .arg(
                            Arg::new("kind")
                                .long("kind")
                                .required(true)
                                .value_parser(["interval", "parity"]),
                        )
                        .arg(
                            Arg::new("g")
                                .long("g")
                                .required(true)
                                .value_parser(clap::value_parser!(u32))
                                .help("lower bound"),
                        )
                        .arg(
                            Arg::new("f")
                                .long("f")
                                .required(true)
                                .value_parser(clap::value_parser!(u32))
                                .help("upper bound"),
                        )
                        .arg(
                            Arg::new("d")
                                .long("d")
                                .required(true)
                                .value_parser(clap::value_parser!(u32))
                                .help("arity"),
                        ),
                ),
        )
}

/// Entry point shared by the binary and the tests: full argv in, exit code
/// out. Everything is printed before returning.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match matches.subcommand() {
        Some(("solve", m)) => cmd_solve(m),
        Some(("check", m)) => cmd_check(m),
        Some(("terminal-backup", m)) => cmd_terminal_backup(m),
        Some(("gen", m)) => cmd_gen(m),
        Some(("verify", m)) => cmd_verify(m),
        Some(("debug", m)) => match m.subcommand() {
            Some(("matching", m)) => cmd_debug_matching(m),
            Some(("reduce", m)) => cmd_debug_reduce(m),
            Some(("gadget", m)) => cmd_debug_gadget(m),
            _ => unreachable!("debug subcommand is required"),
        },
        _ => unreachable!("a subcommand is required"),
    }
}

fn fail(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn read_file(m: &ArgMatches, key: &str) -> Result<String, i32> {
    let path = m.get_one::<String>(key).expect("required argument");
    std::fs::read_to_string(path).map_err(|e| fail(format!("{path}: {e}")))
}

fn load_instance(m: &ArgMatches, key: &str) -> Result<Instance, i32> {
    let text = read_file(m, key)?;
    parse_instance(&text).map_err(|e| fail(e))
}

/// Seed resolution: the flag wins, then FACTORUM_SEED, then zero.
fn resolve_seed(m: &ArgMatches) -> Result<u64, i32> {
    if let Some(&seed) = m.get_one::<u64>("seed") {
        return Ok(seed);
    }
    match std::env::var("FACTORUM_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| fail(format!("FACTORUM_SEED is not a number: {text:?}"))),
        Err(_) => Ok(0),
    }
}

fn require_admissible(inst: &Instance) -> Result<(), i32> {
    let report = inst.validate();
    if report.solver_admissible {
        return Ok(());
    }
    for v in &report.violations {
        eprintln!("error: {v}");
    }
    Err(EXIT_USAGE)
}

fn backend_of(m: &ArgMatches) -> OptBackend {
    match m.get_one::<String>("oracle").map(String::as_str) {
        Some("brute") => OptBackend::Brute,
        _ => OptBackend::Matching,
    }
}

fn branch_name(b: SplitBranch) -> &'static str {
    match b {
        SplitBranch::Zero => "zero",
        SplitBranch::One => "one",
    }
}

fn print_solution_text(res: &SolveResult, stats: bool, trace: bool) {
    match &res.outcome {
        Some(factor) => print!("{}", serialize_factor(factor.edges(), factor.weight())),
        None => println!("No"),
    }
    if stats {
        let s = &res.stats;
        println!("dec_calls {}", s.dec_calls);
        println!("opt_calls {}", s.opt_calls);
        println!("comparisons {}", s.comparisons);
        println!("depth {}", s.recursion_depth);
        println!("time_ms {:.3}", s.wall_time.as_secs_f64() * 1e3);
    }
    if trace {
        for t in &res.trace {
            let incumbent = match &t.incumbent {
                Some(w) => rational_to_string(w),
                None => "none".to_string(),
            };
            println!(
                "trace level={} vertex={} branch={} incumbent={}",
                t.level,
                t.vertex,
                branch_name(t.branch),
                incumbent
            );
        }
    }
}

fn solution_json(res: &SolveResult, stats: bool, trace: bool) -> serde_json::Value {
    let mut out = match &res.outcome {
        Some(factor) => serde_json::json!({
            "outcome": "optimal",
            "weight": rational_to_string(factor.weight()),
            "edges": factor.edges().to_vec(),
        }),
        None => serde_json::json!({ "outcome": "no-factor" }),
    };
    if stats {
        let s = &res.stats;
        out["stats"] = serde_json::json!({
            "dec_calls": s.dec_calls,
            "opt_calls": s.opt_calls,
            "comparisons": s.comparisons,
            "depth": s.recursion_depth,
            "time_ms": s.wall_time.as_secs_f64() * 1e3,
        });
    }
    if trace {
        let entries: Vec<serde_json::Value> = res
            .trace
            .iter()
            .map(|t| {
                serde_json::json!({
                    "level": t.level,
                    "vertex": t.vertex,
                    "branch": branch_name(t.branch),
                    "incumbent": t.incumbent.as_ref().map(rational_to_string),
                })
            })
            .collect();
        out["trace"] = serde_json::Value::Array(entries);
    }
    out
}

fn cmd_solve(m: &ArgMatches) -> i32 {
    let inst = match load_instance(m, "file") {
        Ok(i) => i,
        Err(code) => return code,
    };
    if m.get_flag("dot") {
        print!("{}", instance_to_dot(&inst));
        return EXIT_OK;
    }
    if let Err(code) = require_admissible(&inst) {
        return code;
    }
    let oracle = OracleHandle::new(backend_of(m));
    let res = match main_solve(&inst, &oracle) {
        Ok(res) => res,
        Err(e) => return fail(e),
    };
    let (stats, trace) = (m.get_flag("stats"), m.get_flag("trace"));
    if m.get_flag("json") {
        println!("{}", solution_json(&res, stats, trace));
    } else {
        print_solution_text(&res, stats, trace);
    }
    if res.outcome.is_some() {
        EXIT_OK
    } else {
        EXIT_NO_FACTOR
    }
}

fn cmd_check(m: &ArgMatches) -> i32 {
    let inst = match load_instance(m, "file") {
        Ok(i) => i,
        Err(code) => return code,
    };
    let factor_text = match read_file(m, "factor") {
        Ok(t) => t,
        Err(code) => return code,
    };
    let claim = match parse_factor(&factor_text) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let m_edges = inst.edge_count();
    let mut edges = EdgeSet::with_capacity(m_edges);
    for e in &claim.edges {
        if *e >= m_edges {
            return fail(format!("edge {e} out of range (instance has {m_edges} edges)"));
        }
        edges.insert(*e);
    }
    let factor = match inst.factor(edges) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    if factor.weight() != &claim.weight {
        return fail(format!(
            "stated weight {} but the edges weigh {}",
            rational_to_string(&claim.weight),
            rational_to_string(factor.weight())
        ));
    }
    println!("ok: {} edges, weight {}", claim.edges.len(), rational_to_string(factor.weight()));
    EXIT_OK
}

fn cmd_terminal_backup(m: &ArgMatches) -> i32 {
    let text = match read_file(m, "file") {
        Ok(t) => t,
        Err(code) => return code,
    };
    let backup = match parse_backup(&text) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let stranded = backup.stranded_terminals();
    if !stranded.is_empty() {
        for t in &stranded {
            eprintln!("warning: terminal {t} has no incident edge; no backup connects it");
        }
        println!("No");
        return EXIT_NO_FACTOR;
    }
    if !m.get_flag("solve") {
        match backup.to_instance_text() {
            Ok(out) => {
                print!("{out}");
                return EXIT_OK;
            }
            Err(e) => return fail(e),
        }
    }
    let inst = match backup.to_instance() {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let oracle = OracleHandle::new(OptBackend::Matching);
    match main_solve(&inst, &oracle) {
        Ok(res) => match res.outcome {
            Some(factor) => {
                let cost: Rational = -factor.weight().clone();
                let ids: Vec<String> = factor.edges().iter().map(|e| e.to_string()).collect();
                println!("edges {}", ids.join(" "));
                println!("cost {}", rational_to_string(&cost));
                EXIT_OK
            }
            None => {
                println!("No");
                EXIT_NO_FACTOR
            }
        },
        Err(e) => fail(e),
    }
}

fn cmd_gen(m: &ArgMatches) -> i32 {
    let n = *m.get_one::<usize>("n").expect("required");
    let edges = *m.get_one::<usize>("m").expect("required");
    let classes_text = m.get_one::<String>("classes").expect("defaulted");
    let mut classes = Vec::new();
    for token in classes_text.split(',') {
        match ClassChoice::parse(token.trim()) {
            Some(c) => classes.push(c),
            None => return fail(format!("unknown constraint class {token:?}")),
        }
    }
    let range = m.get_one::<String>("weight-range").expect("defaulted");
    let Some((lo, hi)) = range.split_once("..") else {
        return fail(format!("weight range must look like -5..5, got {range:?}"));
    };
    let (Ok(lo), Ok(hi)) = (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) else {
        return fail(format!("weight range must use integers, got {range:?}"));
    };
    let seed = match resolve_seed(m) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match gen::generate(n, edges, &classes, lo, hi, seed) {
        Ok(inst) => {
            print!("{}", serialize_instance(&inst));
            EXIT_OK
        }
        Err(e) => fail(e),
    }
}

fn cmd_verify(m: &ArgMatches) -> i32 {
    let seed = match resolve_seed(m) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let cases = *m.get_one::<usize>("cases").expect("defaulted");
    let suite = m.get_one::<String>("suite").expect("defaulted").as_str();
    let mut reports = Vec::new();
    if suite == "solver" || suite == "all" {
        reports.push(verify::run_solver_suite(seed, cases));
    }
    if suite == "structural" || suite == "all" {
        reports.push(verify::run_structural_suite(seed, cases));
    }
    if suite == "gadgets" || suite == "all" {
        reports.push(verify::run_gadget_suite());
    }
    let mut ok = true;
    for r in &reports {
        println!("{}", r.render());
        ok &= r.passed();
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_USAGE
    }
}

fn cmd_debug_matching(m: &ArgMatches) -> i32 {
    let text = match read_file(m, "file") {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (graph, weights) = match parse_edge_list(&text) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let problem = match MatchingProblem::new(graph, weights) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    match max_weight_perfect_matching(&problem) {
        Some(matching) => {
            print!("{}", serialize_factor(matching.edges(), matching.weight()));
            EXIT_OK
        }
        None => {
            println!("Infeasible");
            EXIT_NO_FACTOR
        }
    }
}

fn cmd_debug_reduce(m: &ArgMatches) -> i32 {
    let inst = match load_instance(m, "file") {
        Ok(i) => i,
        Err(code) => return code,
    };
    let reduced = match reduce_instance(&inst) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let p = reduced.problem();
    println!(
        "reduced: {} vertices, {} edges",
        p.graph().vertex_count(),
        p.graph().edge_count()
    );
    for e in inst.graph().edge_ids() {
        let (a, b) = inst.graph().endpoints(e);
        let (la, lb) = reduced.leg_edges(e);
        println!(
            "edge {e} ({a}-{b}): middle {} legs {la},{lb} weight {}",
            reduced.middle_edge(e),
            rational_to_string(inst.weight(e))
        );
    }
    for v in inst.graph().vertices() {
        let ids: Vec<String> =
            reduced.gadget_vertices(v).iter().map(|x| x.to_string()).collect();
        println!("vertex {v}: gadget {{{}}}", ids.join(","));
    }
    EXIT_OK
}

fn cmd_debug_gadget(m: &ArgMatches) -> i32 {
    let g = *m.get_one::<u32>("g").expect("required");
    let f = *m.get_one::<u32>("f").expect("required");
    let d = *m.get_one::<u32>("d").expect("required");
    let built = match m.get_one::<String>("kind").expect("required").as_str() {
        "interval" => build_interval_gadget(g, f, d),
        _ => build_parity_gadget(g, f, d),
    };
    let blueprint = match built {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let optional = blueprint.optional_vertices().count();
    let internal = blueprint.internals().len();
    println!(
        "gadget: {} stubs, {internal} internal ({optional} optional, {} required)",
        blueprint.arity(),
        internal - optional
    );
    match realized_set(&blueprint) {
        Ok(realized) => {
            println!("realizes: {}", format::constraint_spec_string(&realized));
            EXIT_OK
        }
        Err(e) => fail(e),
    }
}
