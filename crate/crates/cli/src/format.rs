//! The instance text format and its relatives: parsing with line-numbered
//! diagnostics, canonical serialization, terminal-backup inputs, and the
//! factor files emitted by `solve` and consumed by `check`.
//!
//! An instance file holds `#` comments, one `vertices <n>` header, one
//! `v <id> <spec>` line per vertex (spec: `interval g f`, `parity g f`, or
//! `set d1,d2,...`), and `e <a> <b> <weight>` lines with rational or
//! decimal weights. Every endpoint's `v` line must precede its edges;
//! constraint arities are inferred from final degrees.

use factorum_core::{
    parse_rational, rational_to_string, DegreeConstraint, EdgeSet, Graph, Instance, Rational,
    VertexId,
};
use num_traits::Zero;
use std::fmt;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// How a vertex line spelled its constraint; arity is attached at the end.
#[derive(Debug, Clone)]
enum ConstraintSpec {
    Interval { g: u32, f: u32 },
    Parity { g: u32, f: u32 },
    Set(Vec<u32>),
}

impl ConstraintSpec {
    fn build(&self, arity: u32, line: usize) -> Result<DegreeConstraint, ParseError> {
        let built = match self {
            ConstraintSpec::Interval { g, f } => DegreeConstraint::interval(arity, *g, *f),
            ConstraintSpec::Parity { g, f } => DegreeConstraint::parity_interval(arity, *g, *f),
            ConstraintSpec::Set(values) => DegreeConstraint::new(arity, values.iter().copied()),
        };
        built.map_err(|e| ParseError {
            line,
            message: format!("constraint does not fit a degree-{arity} vertex: {e}"),
        })
    }
}

/// Lines of a file with comments stripped and blanks dropped: (number, text).
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_number<T: std::str::FromStr>(
    token: &str,
    what: &str,
    line: usize,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError { line, message: format!("bad {what} {token:?}") })
}

fn parse_vertex_id(token: &str, n: usize, line: usize) -> Result<VertexId, ParseError> {
    let id: VertexId = parse_number(token, "vertex id", line)?;
    if id >= n {
        return err(line, format!("vertex {id} out of range (vertices {n})"));
    }
    Ok(id)
}

struct Header {
    n: usize,
    line: usize,
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Header, ParseError> {
    let Some((line, body)) = lines.next() else {
        return err(1, "empty file: expected a `vertices <n>` header");
    };
    let mut tokens = body.split_whitespace();
    if tokens.next() != Some("vertices") {
        return err(line, "the first line must be `vertices <n>`");
    }
    let Some(count) = tokens.next() else {
        return err(line, "`vertices` needs a count");
    };
    if tokens.next().is_some() {
        return err(line, "`vertices` takes exactly one count");
    }
    Ok(Header { n: parse_number(count, "vertex count", line)?, line })
}

fn parse_constraint_spec(
    mut tokens: std::str::SplitWhitespace<'_>,
    line: usize,
) -> Result<ConstraintSpec, ParseError> {
    let Some(kind) = tokens.next() else {
        return err(line, "missing constraint: expected `interval`, `parity`, or `set`");
    };
    let spec = match kind {
        "interval" | "parity" => {
            let (Some(g), Some(f)) = (tokens.next(), tokens.next()) else {
                return err(line, format!("`{kind}` needs two bounds"));
            };
            let g = parse_number(g, "bound", line)?;
            let f = parse_number(f, "bound", line)?;
            if kind == "interval" {
                ConstraintSpec::Interval { g, f }
            } else {
                ConstraintSpec::Parity { g, f }
            }
        }
        "set" => {
            let Some(list) = tokens.next() else {
                return err(line, "`set` needs a comma-separated degree list");
            };
            let values = list
                .split(',')
                .map(|t| parse_number(t.trim(), "degree", line))
                .collect::<Result<Vec<u32>, _>>()?;
            ConstraintSpec::Set(values)
        }
        other => {
            return err(line, format!("unknown constraint kind {other:?}"));
        }
    };
    if tokens.next().is_some() {
        return err(line, "trailing tokens after the constraint");
    }
    Ok(spec)
}

/// Parses the instance format. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = significant_lines(text);
    let header = parse_header(&mut lines)?;
    let n = header.n;
    let mut specs: Vec<Option<(ConstraintSpec, usize)>> = vec![None; n];
    let mut graph = Graph::new(n);
    let mut weights = Vec::new();
    let mut last_line = header.line;
    for (line, body) in lines {
        last_line = line;
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let Some(id) = tokens.next() else {
                    return err(line, "`v` needs a vertex id");
                };
                let id = parse_vertex_id(id, n, line)?;
                if let Some((_, first)) = &specs[id] {
                    return err(line, format!("vertex {id} already declared on line {first}"));
                }
                specs[id] = Some((parse_constraint_spec(tokens, line)?, line));
            }
            Some("e") => {
                let (Some(a), Some(b), Some(w)) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return err(line, "`e` needs two endpoints and a weight");
                };
                if tokens.next().is_some() {
                    return err(line, "trailing tokens after the edge");
                }
                let a = parse_vertex_id(a, n, line)?;
                let b = parse_vertex_id(b, n, line)?;
                for endpoint in [a, b] {
                    if specs[endpoint].is_none() {
                        return err(
                            line,
                            format!("vertex {endpoint} used before its `v` line"),
                        );
                    }
                }
                let weight =
                    parse_rational(w).map_err(|message| ParseError { line, message })?;
                graph
                    .add_edge(a, b)
                    .map_err(|e| ParseError { line, message: e.to_string() })?;
                weights.push(weight);
            }
            Some("vertices") => {
                return err(line, "duplicate `vertices` header");
            }
            Some(other) => {
                return err(line, format!("unknown directive {other:?}"));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    let mut constraints = Vec::with_capacity(n);
    for (v, slot) in specs.iter().enumerate() {
        let Some((spec, line)) = slot else {
            return err(last_line, format!("vertex {v} has no `v` line"));
        };
        constraints.push(spec.build(graph.degree(v) as u32, *line)?);
    }
    Instance::new(graph, constraints, weights)
        .map_err(|e| ParseError { line: last_line, message: e.to_string() })
}

/// Canonical spelling of one constraint: intervals and parity intervals by
/// their bounds, anything else as an explicit set.
pub fn constraint_spec_string(c: &DegreeConstraint) -> String {
    let class = c.classify();
    if class.is_interval {
        format!("interval {} {}", c.min(), c.max())
    } else if class.is_parity_interval {
        format!("parity {} {}", c.min(), c.max())
    } else {
        let values: Vec<String> = c.iter().map(|d| d.to_string()).collect();
        format!("set {}", values.join(","))
    }
}

/// Canonical text for an instance: header, vertices ascending, edges in id
/// order, weights in lowest terms. Parsing this text reproduces the
/// instance, and serializing again reproduces the bytes.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = format!("vertices {}\n", g.vertex_count());
    for v in g.vertices() {
        out.push_str(&format!("v {v} {}\n", constraint_spec_string(inst.constraint(v))));
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        out.push_str(&format!("e {a} {b} {}\n", rational_to_string(inst.weight(e))));
    }
    out
}

/// A parsed terminal-backup problem: nonnegative connection costs and the
/// set of vertices that must reach another marked vertex.
pub struct BackupProblem {
    pub graph: Graph,
    pub costs: Vec<Rational>,
    pub terminals: Vec<VertexId>,
}

/// Parses the backup format: the instance syntax with `t <id>` marker
/// lines instead of constraints, and nonnegative edge costs.
pub fn parse_backup(text: &str) -> Result<BackupProblem, ParseError> {
    let mut lines = significant_lines(text);
    let header = parse_header(&mut lines)?;
    let n = header.n;
    let mut is_terminal = vec![false; n];
    let mut graph = Graph::new(n);
    let mut costs = Vec::new();
    for (line, body) in lines {
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("t") => {
                let Some(id) = tokens.next() else {
                    return err(line, "`t` needs a vertex id");
                };
                if tokens.next().is_some() {
                    return err(line, "trailing tokens after the terminal");
                }
                let id = parse_vertex_id(id, n, line)?;
                if is_terminal[id] {
                    return err(line, format!("terminal {id} already marked"));
                }
                is_terminal[id] = true;
            }
            Some("e") => {
                let (Some(a), Some(b), Some(w)) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return err(line, "`e` needs two endpoints and a cost");
                };
                if tokens.next().is_some() {
                    return err(line, "trailing tokens after the edge");
                }
                let a = parse_vertex_id(a, n, line)?;
                let b = parse_vertex_id(b, n, line)?;
                let cost = parse_rational(w).map_err(|message| ParseError { line, message })?;
                if cost < Rational::zero() {
                    return err(line, format!("negative cost {w}"));
                }
                graph
                    .add_edge(a, b)
                    .map_err(|e| ParseError { line, message: e.to_string() })?;
                costs.push(cost);
            }
            Some("vertices") => {
                return err(line, "duplicate `vertices` header");
            }
            Some(other) => {
                return err(line, format!("unknown directive {other:?}"));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    let terminals = (0..n).filter(|&v| is_terminal[v]).collect();
    Ok(BackupProblem { graph, costs, terminals })
}

impl BackupProblem {
    /// Vertices marked as terminals that no edge reaches: the connection
    /// requirement is unsatisfiable for them.
    pub fn stranded_terminals(&self) -> Vec<VertexId> {
        self.terminals
            .iter()
            .copied()
            .filter(|&t| self.graph.degree(t) == 0)
            .collect()
    }

    /// The equivalent maximization instance: terminals must keep exactly
    /// one incident edge, junction vertices keep 0, 2, or 3, and costs
    /// flip sign so the optimum factor is the cheapest backup subgraph.
    pub fn to_instance(&self) -> Result<Instance, ParseError> {
        let mut is_terminal = vec![false; self.graph.vertex_count()];
        for &t in &self.terminals {
            is_terminal[t] = true;
        }
        let constraints = self
            .graph
            .vertices()
            .map(|v| {
                let d = self.graph.degree(v) as u32;
                let set: &[u32] = if is_terminal[v] {
                    &[1]
                } else {
                    match d {
                        0 => &[0],
                        1 => &[0, 1],
                        2 => &[0, 2],
                        _ => &[0, 2, 3],
                    }
                };
                DegreeConstraint::new(d, set.iter().copied()).map_err(|e| ParseError {
                    line: 0,
                    message: format!("terminal {v} has no incident edge: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let weights = self.costs.iter().map(|c| -c.clone()).collect();
        Instance::new(self.graph.clone(), constraints, weights)
            .map_err(|e| ParseError { line: 0, message: e.to_string() })
    }

    /// The converted instance in file form, spelling every constraint as
    /// an explicit degree set.
    pub fn to_instance_text(&self) -> Result<String, ParseError> {
        let inst = self.to_instance()?;
        let g = inst.graph();
        let mut out = format!("vertices {}\n", g.vertex_count());
        for v in g.vertices() {
            let values: Vec<String> = inst.constraint(v).iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("v {v} set {}\n", values.join(",")));
        }
        for e in g.edge_ids() {
            let (a, b) = g.endpoints(e);
            out.push_str(&format!("e {a} {b} {}\n", rational_to_string(inst.weight(e))));
        }
        Ok(out)
    }
}

/// Parses the bare edge-list form: a `vertices` header and weighted `e`
/// lines, no constraints (used where every vertex is implicitly required,
/// as in matching inputs).
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<Rational>), ParseError> {
    let mut lines = significant_lines(text);
    let header = parse_header(&mut lines)?;
    let mut graph = Graph::new(header.n);
    let mut weights = Vec::new();
    for (line, body) in lines {
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("e") => {
                let (Some(a), Some(b), Some(w)) = (tokens.next(), tokens.next(), tokens.next())
                else {
                    return err(line, "`e` needs two endpoints and a weight");
                };
                if tokens.next().is_some() {
                    return err(line, "trailing tokens after the edge");
                }
                let a = parse_vertex_id(a, header.n, line)?;
                let b = parse_vertex_id(b, header.n, line)?;
                let weight =
                    parse_rational(w).map_err(|message| ParseError { line, message })?;
                graph
                    .add_edge(a, b)
                    .map_err(|e| ParseError { line, message: e.to_string() })?;
                weights.push(weight);
            }
            Some(other) => {
                return err(line, format!("unknown directive {other:?} (edge lists only)"));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    Ok((graph, weights))
}

/// A factor report: the edge ids and the claimed weight. `solve` prints
/// this shape and `check` reads it back, ignoring unrelated lines so a
/// full solve report (stats and all) re-checks as is.
pub struct FactorFile {
    pub edges: Vec<usize>,
    pub weight: Rational,
}

pub fn parse_factor(text: &str) -> Result<FactorFile, ParseError> {
    let mut edges = None;
    let mut weight = None;
    for (line, body) in significant_lines(text) {
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("edges") => {
                if edges.is_some() {
                    return err(line, "duplicate `edges` line");
                }
                edges = Some(
                    tokens
                        .map(|t| parse_number::<usize>(t, "edge id", line))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            Some("weight") => {
                if weight.is_some() {
                    return err(line, "duplicate `weight` line");
                }
                let Some(w) = tokens.next() else {
                    return err(line, "`weight` needs a value");
                };
                weight =
                    Some(parse_rational(w).map_err(|message| ParseError { line, message })?);
            }
            _ => {}
        }
    }
    match (edges, weight) {
        (Some(edges), Some(weight)) => Ok(FactorFile { edges, weight }),
        (None, _) => err(1, "no `edges` line found"),
        (_, None) => err(1, "no `weight` line found"),
    }
}

pub fn serialize_factor(edges: &EdgeSet, weight: &Rational) -> String {
    let ids: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("edges {}\nweight {}\n", ids.join(" "), rational_to_string(weight))
}

/// DOT rendering of the bare instance graph: vertices labeled with their
/// constraint, edges with their weight.
pub fn instance_to_dot(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::from("graph instance {\n");
    for v in g.vertices() {
        out.push_str(&format!(
            "  {v} [label=\"{v}: {}\"];\n",
            constraint_spec_string(inst.constraint(v))
        ));
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        out.push_str(&format!(
            "  {a} -- {b} [label=\"{}\"];\n",
            rational_to_string(inst.weight(e))
        ));
    }
    out.push_str("}\n");
    out
}
