//! DIMACS-style edge lists:
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Ids are 1-based in the file and 0-based in [`Graph`]. Cuts use one
//! `s <node> <1|2>` line per node; the cut edges are the crossing edges.

use std::fmt::Write as _;

use crate::bisection::{Cut, Side};
use crate::error::{ParseError, ParseErrorKind};
use crate::graph::{EdgeSet, Graph, NodeId};

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut found = 0usize;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |kind| ParseError { line: line_no, kind };
        let line = raw.trim();
        let mut tok = line.split_whitespace();
        let Some(tag) = tok.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                let fields: Vec<&str> = tok.collect();
                let [kind, n, m] = fields[..] else {
                    return Err(err(ParseErrorKind::Malformed(line.to_string())));
                };
                if kind != "edge" {
                    return Err(err(ParseErrorKind::Malformed(line.to_string())));
                }
                let n = parse_count(n).ok_or_else(|| err(malformed(line)))?;
                let m = parse_count(m).ok_or_else(|| err(malformed(line)))?;
                graph = Some((Graph::new(n), m));
            }
            "e" => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(err(ParseErrorKind::MissingHeader));
                };
                let fields: Vec<&str> = tok.collect();
                let [a, b] = fields[..] else {
                    return Err(err(malformed(line)));
                };
                let a = parse_count(a).ok_or_else(|| err(malformed(line)))?;
                let b = parse_count(b).ok_or_else(|| err(malformed(line)))?;
                let n = g.capacity();
                for x in [a, b] {
                    if x == 0 || x > n {
                        return Err(err(ParseErrorKind::NodeOutOfRange(x, n)));
                    }
                }
                g.add_edge(NodeId::from_index(a - 1), NodeId::from_index(b - 1))
                    .map_err(|e| err(ParseErrorKind::Graph(e)))?;
                found += 1;
            }
            _ => return Err(err(malformed(line))),
        }
    }

    let Some((g, declared)) = graph else {
        return Err(ParseError { line: last_line.max(1), kind: ParseErrorKind::MissingHeader });
    };
    if declared != found {
        return Err(ParseError { line: last_line, kind: ParseErrorKind::EdgeCount { declared, found } });
    }
    Ok(g)
}

fn malformed(line: &str) -> ParseErrorKind {
    ParseErrorKind::Malformed(line.to_string())
}

fn parse_count(s: &str) -> Option<usize> {
    s.parse().ok()
}

/// Serializes all id slots; dead slots become isolated nodes.
pub fn write_graph(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.capacity(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.u(), e.v());
    }
    out
}

/// Reads a side assignment for the live nodes of `g`.
pub fn parse_cut(text: &str, g: &Graph) -> Result<Cut, ParseError> {
    let mut side = vec![None; g.capacity()];
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |kind| ParseError { line: line_no, kind };
        let line = raw.trim();
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[..] {
            [] => {}
            ["c", ..] => {}
            ["s", v, which] => {
                let v = parse_count(v).ok_or_else(|| err(malformed(line)))?;
                if v == 0 || v > g.capacity() || !g.contains(NodeId::from_index(v - 1)) {
                    return Err(err(ParseErrorKind::NodeOutOfRange(v, g.capacity())));
                }
                let which = match which {
                    "1" => Side::One,
                    "2" => Side::Two,
                    _ => return Err(err(malformed(line))),
                };
                if side[v - 1].replace(which).is_some() {
                    return Err(err(ParseErrorKind::DuplicateSide(v)));
                }
            }
            _ => return Err(err(malformed(line))),
        }
    }
    if let Some(v) = g.nodes().find(|v| side[v.index()].is_none()) {
        return Err(ParseError { line: last_line, kind: ParseErrorKind::MissingSide(v.one_based()) });
    }
    let b: EdgeSet = g.edges().filter(|e| side[e.u().index()] != side[e.v().index()]).collect();
    Ok(Cut { side, b })
}

pub fn write_cut(g: &Graph, cut: &Cut, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    for v in g.nodes() {
        if let Some(s) = cut.side_of(v) {
            let _ = writeln!(out, "s {v} {}", s.number());
        }
    }
    out
}
