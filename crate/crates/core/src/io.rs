//! Text formats for Knödel graphs and vertex sets.
//!
//! * edgelist: one `u <i> v <j>` line per edge, sorted by `(i, j)`.
//! * DIMACS: `p edge <n> <m>` with `u_i` numbered `i` and `v_j` numbered `n/2 + j`.
//! * JSON: the edge list as `[i, j]` pairs plus `delta`, `n`, `half`, `edge_count`.
//!
//! Parsers recover `(delta, n)` from the edge set and reject any input that is
//! not exactly the edge set of that Knödel graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphFormat> {
        match s.trim().to_ascii_lowercase().as_str() {
            "edgelist" => Ok(GraphFormat::Edgelist),
            "dimacs" => Ok(GraphFormat::Dimacs),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct JsonGraph {
    format: String,
    delta: u32,
    n: usize,
    half: usize,
    edge_count: usize,
    edges: Vec<[usize; 2]>,
}

pub fn write_graph(g: &KnodelGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => to_edgelist(g),
        GraphFormat::Dimacs => to_dimacs(g),
        GraphFormat::Json => to_json(g),
    }
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<KnodelGraph> {
    match format {
        GraphFormat::Edgelist => parse_edgelist(text),
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::Json => parse_json(text),
    }
}

pub fn to_edgelist(g: &KnodelGraph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (i, j) in g.edges() {
        writeln!(out, "u {i} v {j}").unwrap();
    }
    out
}

pub fn to_dimacs(g: &KnodelGraph) -> String {
    let half = g.half();
    let mut out = String::with_capacity(g.edge_count() * 12 + 64);
    writeln!(out, "c Knodel graph {g}").unwrap();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (i, j) in g.edges() {
        writeln!(out, "e {} {}", i, half + j).unwrap();
    }
    out
}

pub fn to_json(g: &KnodelGraph) -> String {
    let doc = JsonGraph {
        format: "knodel-edgelist".into(),
        delta: g.delta(),
        n: g.n(),
        half: g.half(),
        edge_count: g.edge_count(),
        edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

/// Finds the Knödel graph with exactly these `(i, j)` edges on `half` indices.
fn recover(half: usize, edges: &[(usize, usize)]) -> Result<KnodelGraph> {
    if half == 0 || !edges.len().is_multiple_of(half) {
        return Err(Error::Parse(format!(
            "{} edges on sides of {half} cannot form a regular graph",
            edges.len()
        )));
    }
    let delta = u32::try_from(edges.len() / half)
        .map_err(|_| Error::Parse("degree out of range".into()))?;
    let g = KnodelGraph::new(delta, 2 * half).map_err(|e| Error::Parse(e.to_string()))?;
    let mut got = edges.to_vec();
    got.sort_unstable();
    if got != g.edges() {
        return Err(Error::Parse(format!("edge set is not that of {g}")));
    }
    Ok(g)
}

fn number(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("line {line}: missing field")))?
        .parse()
        .map_err(|e| Error::Parse(format!("line {line}: {e}")))
}

pub fn parse_edgelist(text: &str) -> Result<KnodelGraph> {
    let mut edges = Vec::new();
    let mut half = 0;
    for (ln, line) in text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        if toks.next() != Some("u") {
            return Err(Error::Parse(format!("line {ln}: expected \"u <i> v <j>\"")));
        }
        let i = number(toks.next(), ln)?;
        if toks.next() != Some("v") {
            return Err(Error::Parse(format!("line {ln}: expected \"u <i> v <j>\"")));
        }
        let j = number(toks.next(), ln)?;
        if toks.next().is_some() || i == 0 || j == 0 {
            return Err(Error::Parse(format!("line {ln}: malformed edge {line:?}")));
        }
        half = half.max(i).max(j);
        edges.push((i, j));
    }
    recover(half, &edges)
}

pub fn parse_dimacs(text: &str) -> Result<KnodelGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if toks.next() != Some("edge") || header.is_some() {
                    return Err(Error::Parse(format!("line {ln}: bad problem line")));
                }
                header = Some((number(toks.next(), ln)?, number(toks.next(), ln)?));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| Error::Parse(format!("line {ln}: edge before header")))?;
                let half = n / 2;
                let (a, b) = (number(toks.next(), ln)?, number(toks.next(), ln)?);
                let (a, b) = (a.min(b), a.max(b));
                if a == 0 || a > half || b <= half || b > n {
                    return Err(Error::Parse(format!("line {ln}: edge {a} {b} does not cross the sides")));
                }
                edges.push((a, b - half));
            }
            Some(other) => return Err(Error::Parse(format!("line {ln}: unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing \"p edge\" line".into()))?;
    if m != edges.len() || n % 2 != 0 {
        return Err(Error::Parse(format!("header promises n = {n}, m = {m}; found {} edges", edges.len())));
    }
    recover(n / 2, &edges)
}

pub fn parse_json(text: &str) -> Result<KnodelGraph> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[i, j]| (i, j)).collect();
    let g = recover(doc.half, &edges)?;
    if (g.delta(), g.n(), g.edge_count()) != (doc.delta, doc.n, doc.edge_count) {
        return Err(Error::Parse("metadata disagrees with the edge list".into()));
    }
    Ok(g)
}

/// Parses `"u1, v2 ,U3"`. Duplicates are dropped; the result is sorted.
pub fn parse_vertex_set(text: &str) -> Result<Vec<Vertex>> {
    let set: BTreeSet<Vertex> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

pub fn format_vertex_set(set: &[Vertex]) -> String {
    set.iter().map(Vertex::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(delta: u32, n: usize) -> KnodelGraph {
        KnodelGraph::new(delta, n).unwrap()
    }

    #[test]
    fn edgelist_examples() {
        assert_eq!(to_edgelist(&g(1, 2)), "u 1 v 1\n");
        let text = to_edgelist(&g(3, 10));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 15);
        assert_eq!(lines[0], "u 1 v 1");
    }

    #[test]
    fn dimacs_header() {
        let text = to_dimacs(&g(3, 8));
        assert!(text.lines().any(|l| l == "p edge 8 12"));
        assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 12);
        assert!(text.lines().any(|l| l == "e 1 5"));
    }

    #[test]
    fn parsers_recover_parameters() {
        for (d, n) in [(1, 2), (2, 8), (3, 10), (4, 32)] {
            let w = g(d, n);
            for f in [GraphFormat::Edgelist, GraphFormat::Dimacs, GraphFormat::Json] {
                assert_eq!(read_graph(&write_graph(&w, f), f).unwrap(), w, "{w} {f:?}");
            }
        }
    }

    #[test]
    fn parsers_reject_foreign_graphs() {
        // a 4-cycle drawn with the wrong matching is not W(2,4)
        assert!(parse_edgelist("u 1 v 1\nu 1 v 2\nu 2 v 2\nu 2 v 2\n").is_err());
        assert!(parse_edgelist("u 1 v 1\nu 2 v 1\n").is_err());
        assert!(parse_edgelist("x 1 v 1\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_json("{}").is_err());
    }

    #[test]
    fn vertex_sets() {
        let s = parse_vertex_set(" v2, U1 ,u1,v10 ").unwrap();
        assert_eq!(s, vec![Vertex::u(1), Vertex::v(2), Vertex::v(10)]);
        assert_eq!(format_vertex_set(&s), "u1,v2,v10");
        assert!(parse_vertex_set("u0").is_err());
        assert!(parse_vertex_set("w3").is_err());
        assert!(parse_vertex_set("").unwrap().is_empty());
    }
}
