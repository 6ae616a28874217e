//! Line-oriented text format for weighted graphs.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>          (m lines)
//! w <u> <num>[/<den>] (optional, default weight 1)
//! ```
//!
//! Serialization is canonical: edges sorted with `u < v`, weight lines only for
//! vertices whose weight is not 1, in increasing vertex order.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{Graph, WeightedGraph};
use crate::scalar::Scalar;

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, reason: reason.into() }
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| malformed(line, "missing vertex id"))?;
    let vertex: usize = tok.parse().map_err(|_| malformed(line, format!("bad vertex id '{tok}'")))?;
    if vertex >= n {
        return Err(ParseError::VertexOutOfRange { line, vertex, n });
    }
    Ok(vertex)
}

/// Parses a weighted graph. Lines are numbered from 1.
pub fn parse_graph<W: Scalar>(text: &str) -> Result<WeightedGraph<W>, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut weights: Vec<Option<W>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let kind = toks.next().unwrap();
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(malformed(line, "second header"));
                }
                let mut num = |what: &str| -> Result<usize, ParseError> {
                    let tok = toks.next().ok_or_else(|| malformed(line, format!("missing {what}")))?;
                    tok.parse().map_err(|_| malformed(line, format!("bad {what} '{tok}'")))
                };
                let n = num("vertex count")?;
                let m = num("edge count")?;
                header = Some((n, m));
                graph = Graph::new(n);
                weights = vec![None; n];
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| malformed(line, "edge before header"))?;
                let u = parse_vertex(toks.next(), line, n)?;
                let v = parse_vertex(toks.next(), line, n)?;
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                if !graph.add_edge(u, v) {
                    return Err(ParseError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
                }
            }
            "w" => {
                let (n, _) = header.ok_or_else(|| malformed(line, "weight before header"))?;
                let vertex = parse_vertex(toks.next(), line, n)?;
                let tok = toks.next().ok_or_else(|| malformed(line, "missing weight"))?;
                let w = W::parse_exact(tok).ok_or_else(|| malformed(line, format!("bad weight '{tok}'")))?;
                if w.is_negative() {
                    return Err(ParseError::NegativeWeight { line, vertex });
                }
                if weights[vertex].is_some() {
                    return Err(malformed(line, format!("second weight for vertex {vertex}")));
                }
                weights[vertex] = Some(w);
            }
            other => return Err(malformed(line, format!("unknown line type '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(malformed(line, format!("unexpected token '{extra}'")));
        }
    }

    let (_, m) = header.ok_or(ParseError::MissingHeader)?;
    if graph.edge_count() != m {
        return Err(ParseError::EdgeCountMismatch { declared: m, found: graph.edge_count() });
    }
    let weights = weights.into_iter().map(|w| w.unwrap_or_else(W::one)).collect();
    Ok(WeightedGraph::new(graph, weights).expect("weights validated during parsing"))
}

/// Canonical text for `g`. Round-trips through [`parse_graph`].
pub fn serialize_graph<W: Scalar>(g: &WeightedGraph<W>) -> String {
    let mut out = serialize_unweighted(&g.graph);
    for (v, w) in g.weights().iter().enumerate() {
        if !w.is_one() {
            writeln!(out, "w {v} {w}").unwrap();
        }
    }
    out
}

/// Canonical text for an unweighted graph (all weights 1).
pub fn serialize_unweighted(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}
