//! Text formats.
//!
//! Instance file:
//!
//! ```text
//! n <node-count> <arc-count> <directed|undirected>
//! <head> <tail> <weight>
//! ...
//! ```
//!
//! Ids are 1-based and weights are nonnegative integers. Lines starting with
//! `#` are comments; generators use them to record their parameters.
//!
//! Result export, one line per node:
//!
//! ```text
//! <id> <region> <parent> <cost|UNREACHED> [<tag>]
//! ```
//!
//! The tag column is present only for multi-source runs.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::CostAlgebra;
use crate::error::ParseError;
use crate::generators::GridInstance;
use crate::graph::{Arc, Cost, Graph, Weight};
use crate::state::{Regions, SolverState};

pub const UNREACHED: &str = "UNREACHED";

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    /// Comment lines without the leading `#`, trimmed.
    pub comments: Vec<String>,
}

impl Instance {
    /// Value of `key=value` in any comment line, first match wins.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            c.split_whitespace()
                .find_map(|tok| tok.strip_prefix(key)?.strip_prefix('='))
        })
    }

    /// Node sequence recorded by the grid generator for a planted path.
    pub fn hzp_path(&self) -> Option<Vec<u32>> {
        let line = self
            .comments
            .iter()
            .find_map(|c| c.strip_prefix("hzp-path"))?;
        line.split_whitespace().map(|t| t.parse().ok()).collect()
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let comments = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .map(|c| c.trim().to_string())
        .collect();

    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "empty instance"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("n") {
        return Err(ParseError::syntax(hline, "header must start with `n`"));
    }
    let n: usize = parse_field(tok.next(), hline, "node count")?;
    let m: usize = parse_field(tok.next(), hline, "arc count")?;
    let directed = match tok.next() {
        Some("directed") => true,
        Some("undirected") => false,
        Some(other) => {
            return Err(ParseError::syntax(
                hline,
                format!("expected `directed` or `undirected`, got `{other}`"),
            ))
        }
        None => return Err(ParseError::syntax(hline, "missing directedness")),
    };
    if tok.next().is_some() {
        return Err(ParseError::syntax(hline, "trailing tokens in header"));
    }

    let mut arcs = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut tok = text.split_whitespace();
        let head: i64 = parse_field(tok.next(), line, "head")?;
        let tail: i64 = parse_field(tok.next(), line, "tail")?;
        let weight: i64 = parse_field(tok.next(), line, "weight")?;
        if tok.next().is_some() {
            return Err(ParseError::syntax(line, "trailing tokens"));
        }
        let in_range = |x: i64| x >= 1 && x as u64 <= n as u64;
        if !in_range(head) || !in_range(tail) {
            return Err(ParseError::syntax(
                line,
                format!("arc {head} -> {tail}: endpoint outside 1..={n}"),
            ));
        }
        if head == tail {
            return Err(ParseError::syntax(
                line,
                format!("arc {head} -> {tail}: self-loop"),
            ));
        }
        if weight < 0 {
            return Err(ParseError::syntax(
                line,
                format!("arc {head} -> {tail}: negative weight {weight}"),
            ));
        }
        let weight = Weight::try_from(weight).map_err(|_| {
            ParseError::syntax(
                line,
                format!("arc {head} -> {tail}: weight {weight} too large"),
            )
        })?;
        arcs.push(Arc::new(head as u32, tail as u32, weight));
    }
    if arcs.len() != m {
        return Err(ParseError::Invalid(format!(
            "header declares {m} arcs but {} were given",
            arcs.len()
        )));
    }
    let graph = Graph::build(n, arcs, directed).map_err(|source| ParseError::Graph {
        line: hline,
        source,
    })?;
    Ok(Instance { graph, comments })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, ParseError> {
    parse_instance(&std::fs::read_to_string(path)?)
}

/// Serialises `g` with optional comment lines after the header.
pub fn write_instance(g: &Graph, comments: &[String]) -> String {
    let mut out = String::with_capacity(16 * (g.arcs().len() + 1));
    let kind = if g.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    let _ = writeln!(out, "n {} {} {}", g.node_count(), g.arcs().len(), kind);
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for a in g.arcs() {
        let _ = writeln!(out, "{} {} {}", a.head, a.tail, a.weight);
    }
    out
}

/// Comment lines describing a generated grid.
pub fn grid_comments(inst: &GridInstance) -> Vec<String> {
    let s = &inst.spec;
    let mut c = vec![format!(
        "grid rows={} cols={} wmin={} wmax={} seed={} hzp={} source={}",
        s.rows, s.cols, s.weight_min, s.weight_max, s.seed, s.plant_hzp as u8, inst.source
    )];
    if let Some(plan) = &inst.hzp {
        let mut line = String::from("hzp-path");
        for v in &plan.path {
            let _ = write!(line, " {v}");
        }
        c.push(line);
        c.push(format!("hzp-terminal terminal={}", plan.terminal));
    }
    c
}

pub fn write_results<C: Copy + Eq + std::fmt::Display>(
    regions: &Regions,
    state: &SolverState<C>,
) -> String {
    let n = state.node_count();
    let mut out = String::with_capacity(24 * n);
    for v in 1..=n as u32 {
        let i = v as usize;
        let _ = write!(out, "{} {} {} ", v, regions.region[i], state.parent[i]);
        match state.cost_of(v) {
            Some(c) => {
                let _ = write!(out, "{c}");
            }
            None => out.push_str(UNREACHED),
        }
        if let Some(tags) = &state.tags {
            let _ = write!(out, " {}", tags[i]);
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultRow {
    pub id: u32,
    pub region: u32,
    pub parent: u32,
    pub cost: Option<Cost>,
    pub tag: Option<u32>,
}

pub fn parse_results(text: &str) -> Result<Vec<ResultRow>, ParseError> {
    let mut rows = Vec::new();
    for (line, text) in data_lines(text) {
        let mut tok = text.split_whitespace();
        let id = parse_field(tok.next(), line, "node id")?;
        let region = parse_field(tok.next(), line, "region")?;
        let parent = parse_field(tok.next(), line, "parent")?;
        let cost = match tok.next() {
            Some(UNREACHED) => None,
            other => Some(parse_field(other, line, "cost")?),
        };
        let tag = tok
            .next()
            .map(|t| parse_field(Some(t), line, "tag"))
            .transpose()?;
        if tok.next().is_some() {
            return Err(ParseError::syntax(line, "trailing tokens"));
        }
        rows.push(ResultRow {
            id,
            region,
            parent,
            cost,
            tag,
        });
    }
    Ok(rows)
}

/// Rebuilds regions and a solver state from an export. Region-1 nodes are
/// the sources; the order array is sorted by region then id. Where parallel
/// arcs exist, the parent arc is the one that reproduces the recorded cost,
/// else the lightest.
pub fn results_to_state<A: CostAlgebra<Cost = Cost>>(
    g: &Graph,
    rows: &[ResultRow],
    algebra: &A,
) -> Result<(Regions, SolverState<Cost>), ParseError> {
    let n = g.node_count();
    if rows.len() != n {
        return Err(ParseError::Invalid(format!(
            "result has {} rows, instance has {n} nodes",
            rows.len()
        )));
    }
    let mut by_id: Vec<Option<&ResultRow>> = vec![None; n + 1];
    for r in rows {
        if r.id == 0 || r.id as usize > n || r.parent as usize > n {
            return Err(ParseError::Invalid(format!(
                "row for node {} out of range",
                r.id
            )));
        }
        if by_id[r.id as usize].replace(r).is_some() {
            return Err(ParseError::Invalid(format!(
                "duplicate row for node {}",
                r.id
            )));
        }
    }
    let sources: Vec<u32> = rows
        .iter()
        .filter(|r| r.region == 1)
        .map(|r| r.id)
        .collect();
    let tagged = rows.iter().any(|r| r.tag.is_some());
    let mut state = SolverState::new(n, &sources, algebra.zero(), tagged);
    let mut regions = Regions::empty(n);

    let mut reached: Vec<&ResultRow> = rows.iter().filter(|r| r.region != 0).collect();
    reached.sort_by_key(|r| (r.region, r.id));
    for r in reached {
        regions.push(r.id, r.region);
        state.status[r.id as usize] = 1;
    }
    for r in rows {
        let i = r.id as usize;
        if let Some(c) = r.cost {
            state.cost[i] = c;
        }
        if let (Some(tags), Some(t)) = (state.tags.as_mut(), r.tag) {
            tags[i] = t;
        }
        if r.parent != 0 {
            state.parent[i] = r.parent;
            let mut weights = g
                .leaves(r.parent)
                .filter(|&(v, _)| v == r.id)
                .map(|(_, w)| w);
            let first = weights.clone().min();
            state.via[i] = match (r.cost, by_id[r.parent as usize].and_then(|p| p.cost)) {
                (Some(c), Some(pc)) => weights
                    .find(|&w| algebra.extend(pc, w) == c)
                    .or(first)
                    .unwrap_or(0),
                _ => first.unwrap_or(0),
            };
        }
    }
    Ok((regions, state))
}
