//! Plain-text codecs for instances, solutions and CNF formulas.
//!
//! Edge list: first significant line `n m root`, then `m` lines `u v` with
//! `u < v`. Interval file: first line `n root`, then `n` lines
//! `id left right` with integer or rational endpoints. Solution file: line
//! `ratio p/q`, then one line of sorted vertex ids. Blank lines and `#`
//! comments are ignored everywhere; DIMACS uses its own `c` comments.

use thiserror::Error;

use crate::forge::{CnfError, CnfFormula, VertexRole};
use crate::graph::{GraphError, RootedGraph, Solution, VertexSet};
use crate::interval::Frac;
use crate::ratio::Ratio;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unexpected end of file: {0}")]
    UnexpectedEof(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

/// Significant lines with their 1-based line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<RootedGraph, ParseError> {
    let mut lines = significant_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::UnexpectedEof("missing `n m root` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(malformed(ln, "expected `n m root`"));
    }
    let parse_num = |ln: usize, s: &str| -> Result<usize, ParseError> {
        s.parse().map_err(|_| malformed(ln, format!("bad number {s:?}")))
    };
    let n = parse_num(ln, fields[0])?;
    let m = parse_num(ln, fields[1])?;
    let root = parse_num(ln, fields[2])?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::UnexpectedEof(format!("expected {m} edges")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(malformed(ln, "expected `u v`"));
        }
        let u = parse_num(ln, fields[0])?;
        let v = parse_num(ln, fields[1])?;
        if u >= v {
            return Err(malformed(ln, format!("edges must satisfy u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(malformed(ln, "trailing content after the edge list"));
    }
    Ok(RootedGraph::new(n, root, &edges)?)
}

/// Deterministic edge-list output; `comments` lines are emitted first.
pub fn format_edge_list(g: &RootedGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let edges = g.edges();
    out.push_str(&format!("{} {} {}\n", g.n(), edges.len(), g.root()));
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Returns the root and the raw intervals indexed by vertex id.
pub fn parse_intervals(text: &str) -> Result<(usize, Vec<(Frac, Frac)>), ParseError> {
    let mut lines = significant_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::UnexpectedEof("missing `n root` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(malformed(ln, "expected `n root`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| malformed(ln, format!("bad number {:?}", fields[0])))?;
    let root: usize = fields[1]
        .parse()
        .map_err(|_| malformed(ln, format!("bad number {:?}", fields[1])))?;
    if n == 0 {
        return Err(malformed(ln, "n must be positive"));
    }
    if root >= n {
        return Err(malformed(ln, format!("root {root} out of range (n = {n})")));
    }
    let mut raw: Vec<Option<(Frac, Frac)>> = vec![None; n];
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::UnexpectedEof(format!("expected {n} intervals")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(malformed(ln, "expected `id left right`"));
        }
        let id: usize = fields[0]
            .parse()
            .map_err(|_| malformed(ln, format!("bad id {:?}", fields[0])))?;
        if id >= n {
            return Err(malformed(ln, format!("id {id} out of range (n = {n})")));
        }
        if raw[id].is_some() {
            return Err(malformed(ln, format!("duplicate id {id}")));
        }
        let lo: Frac = fields[1]
            .parse()
            .map_err(|_| malformed(ln, format!("bad coordinate {:?}", fields[1])))?;
        let hi: Frac = fields[2]
            .parse()
            .map_err(|_| malformed(ln, format!("bad coordinate {:?}", fields[2])))?;
        raw[id] = Some((lo, hi));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(malformed(ln, "trailing content after the intervals"));
    }
    let raw: Vec<(Frac, Frac)> = raw.into_iter().map(|r| r.unwrap()).collect();
    Ok((root, raw))
}

pub fn format_intervals(root: usize, raw: &[(Frac, Frac)]) -> String {
    let mut out = format!("{} {}\n", raw.len(), root);
    for (id, (lo, hi)) in raw.iter().enumerate() {
        out.push_str(&format!("{id} {lo} {hi}\n"));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<(Ratio, VertexSet), ParseError> {
    let mut lines = significant_lines(text);
    let (ln, ratio_line) = lines
        .next()
        .ok_or_else(|| ParseError::UnexpectedEof("missing `ratio p/q` line".into()))?;
    let rest = ratio_line
        .strip_prefix("ratio")
        .ok_or_else(|| malformed(ln, "expected `ratio p/q`"))?
        .trim();
    let (num_s, den_s) = rest
        .split_once('/')
        .ok_or_else(|| malformed(ln, "expected `ratio p/q`"))?;
    let num: u64 = num_s
        .trim()
        .parse()
        .map_err(|_| malformed(ln, format!("bad numerator {num_s:?}")))?;
    let den: u64 = den_s
        .trim()
        .parse()
        .map_err(|_| malformed(ln, format!("bad denominator {den_s:?}")))?;
    if den == 0 {
        return Err(malformed(ln, "zero denominator"));
    }
    let (ln, ids_line) = lines
        .next()
        .ok_or_else(|| ParseError::UnexpectedEof("missing vertex id line".into()))?;
    let mut ids = Vec::new();
    for tok in ids_line.split_whitespace() {
        let id: usize = tok
            .parse()
            .map_err(|_| malformed(ln, format!("bad vertex id {tok:?}")))?;
        ids.push(id);
    }
    if ids.is_empty() {
        return Err(malformed(ln, "empty vertex set"));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(malformed(ln, "trailing content after the solution"));
    }
    Ok((Ratio::new(num, den), VertexSet::from_vec(ids)))
}

pub fn format_solution(sol: &Solution) -> String {
    let ids: Vec<String> = sol.set().iter().map(|v| v.to_string()).collect();
    format!("ratio {}\n{}\n", sol.ratio(), ids.join(" "))
}

pub fn format_roles(roles: &[VertexRole]) -> String {
    let mut out = String::new();
    for (v, role) in roles.iter().enumerate() {
        out.push_str(&format!("{v} {role}\n"));
    }
    out
}

/// DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header, then
/// zero-terminated clauses of exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut vars: Option<usize> = None;
    let mut declared_clauses = 0usize;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if vars.is_some() {
                return Err(malformed(ln, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(malformed(ln, "expected `p cnf <vars> <clauses>`"));
            }
            vars = Some(
                fields[2]
                    .parse()
                    .map_err(|_| malformed(ln, format!("bad variable count {:?}", fields[2])))?,
            );
            declared_clauses = fields[3]
                .parse()
                .map_err(|_| malformed(ln, format!("bad clause count {:?}", fields[3])))?;
            continue;
        }
        if vars.is_none() {
            return Err(malformed(ln, "clause before the problem line"));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| malformed(ln, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                if pending.len() != 3 {
                    return Err(malformed(
                        ln,
                        format!("clauses must have exactly 3 literals, got {}", pending.len()),
                    ));
                }
                clauses.push([pending[0], pending[1], pending[2]]);
                pending.clear();
            } else {
                pending.push(lit);
            }
        }
    }
    let vars = vars.ok_or_else(|| ParseError::UnexpectedEof("missing problem line".into()))?;
    if !pending.is_empty() {
        return Err(ParseError::UnexpectedEof("unterminated clause".into()));
    }
    if clauses.len() != declared_clauses {
        return Err(ParseError::UnexpectedEof(format!(
            "declared {declared_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    Ok(CnfFormula::new(vars, clauses)?)
}

pub fn format_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.clauses().len());
    for clause in f.clauses() {
        out.push_str(&format!("{} {} {} 0\n", clause[0], clause[1], clause[2]));
    }
    out
}
