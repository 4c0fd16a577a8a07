//! Arc-list text format and DOT export.
//!
//! ```text
//! # directed triangle
//! 3 3
//! 0 1
//! 1 2
//! 2 0
//! ```
//!
//! Line one is `n m`, then `m` arc lines `u v` meaning `u -> v`. `#` starts a
//! comment and blank lines are skipped. Vertex tokens that are all integers
//! below `n` are used as ids directly; any other tokens are treated as labels
//! and remapped to dense ids in order of first appearance.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header declares {declared} arcs but {found} arc lines follow")]
    ArcCount { declared: usize, found: usize },
    #[error("{labels} distinct vertex labels for a graph declared with {n} vertices")]
    TooManyLabels { labels: usize, n: usize },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

/// A parsed arc list, before graph validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcList {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    /// Original vertex labels when the file did not use dense integer ids.
    pub labels: Option<Vec<String>>,
}

impl ArcList {
    pub fn to_oriented(&self) -> Result<OrientedGraph, FormatError> {
        Ok(OrientedGraph::from_arcs(self.n, &self.arcs)?)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_arc_list(text: &str) -> Result<ArcList, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l).trim())).filter(|(_, l)| !l.is_empty());

    let (hline, header) =
        lines.next().ok_or(FormatError::Syntax { line: 1, message: "missing `n m` header".into() })?;
    let mut fields = header.split_whitespace();
    let mut number = |what: &str| -> Result<usize, FormatError> {
        fields
            .next()
            .ok_or_else(|| FormatError::Syntax { line: hline, message: format!("header is missing {what}") })?
            .parse()
            .map_err(|_| FormatError::Syntax {
                line: hline,
                message: format!("header {what} is not a non-negative integer"),
            })
    };
    let n = number("vertex count")?;
    let m = number("arc count")?;
    if fields.next().is_some() {
        return Err(FormatError::Syntax { line: hline, message: "header has more than two fields".into() });
    }

    let mut raw = Vec::with_capacity(m);
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(FormatError::Syntax { line, message: format!("expected `u v`, found {} fields", toks.len()) });
        }
        raw.push((line, toks[0].to_string(), toks[1].to_string()));
    }
    if raw.len() != m {
        return Err(FormatError::ArcCount { declared: m, found: raw.len() });
    }

    let dense = raw.iter().all(|(_, a, b)| [a, b].iter().all(|t| t.parse::<usize>().map(|v| v < n).unwrap_or(false)));
    if dense {
        let arcs = raw.iter().map(|(_, a, b)| (a.parse().unwrap(), b.parse().unwrap())).collect();
        return Ok(ArcList { n, arcs, labels: None });
    }

    let mut labels: Vec<String> = Vec::new();
    let mut id_of = |tok: &str| -> usize {
        match labels.iter().position(|l| l == tok) {
            Some(i) => i,
            None => {
                labels.push(tok.to_string());
                labels.len() - 1
            }
        }
    };
    let arcs: Vec<(usize, usize)> = raw.iter().map(|(_, a, b)| (id_of(a), id_of(b))).collect();
    if labels.len() > n {
        return Err(FormatError::TooManyLabels { labels: labels.len(), n });
    }
    while labels.len() < n {
        labels.push(format!("_{}", labels.len()));
    }
    Ok(ArcList { n, arcs, labels: Some(labels) })
}

pub fn read_oriented(text: &str) -> Result<OrientedGraph, FormatError> {
    parse_arc_list(text)?.to_oriented()
}

/// Writes the current orientation, one arc per edge in canonical edge order.
pub fn write_arc_list(og: &OrientedGraph) -> String {
    write_arc_list_labeled(og, None)
}

pub fn write_arc_list_labeled(og: &OrientedGraph, labels: Option<&[String]>) -> String {
    let name = |v: usize| match labels {
        Some(l) => l[v].clone(),
        None => v.to_string(),
    };
    let mut out = format!("{} {}\n", og.n(), og.m());
    for (u, v) in og.arcs() {
        let _ = writeln!(out, "{} {}", name(u), name(v));
    }
    out
}

/// DOT digraph of the current orientation with agent positions marked.
pub fn to_dot(og: &OrientedGraph, cops: &[usize], robber: Option<usize>) -> String {
    let mut out = String::from("digraph G {\n  node [shape=circle];\n");
    for v in 0..og.n() {
        let ncops = cops.iter().filter(|&&c| c == v).count();
        let is_robber = robber == Some(v);
        let mut label = v.to_string();
        if ncops > 0 {
            label.push_str(if ncops == 1 { " C" } else { " C*" });
            if ncops > 1 {
                let _ = write!(label, "{ncops}");
            }
        }
        if is_robber {
            label.push_str(" R");
        }
        let style = match (ncops > 0, is_robber) {
            (true, true) => ", style=filled, fillcolor=purple",
            (true, false) => ", style=filled, fillcolor=lightblue",
            (false, true) => ", style=filled, fillcolor=salmon",
            _ => "",
        };
        let _ = writeln!(out, "  {v} [label=\"{label}\"{style}];");
    }
    for (u, v) in og.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# triangle\n3 3\n\n0 1 # first\n1 2\n2 0\n";
        let list = parse_arc_list(text).unwrap();
        assert_eq!(list.n, 3);
        assert_eq!(list.arcs, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(list.labels.is_none());
    }

    #[test]
    fn writer_uses_canonical_edge_order() {
        let g = read_oriented("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(write_arc_list(&g), "3 3\n0 1\n2 0\n1 2\n");
        assert_eq!(read_oriented(&write_arc_list(&g)).unwrap(), g);
    }

    #[test]
    fn labels_are_remapped() {
        let list = parse_arc_list("3 2\na b\nc b\n").unwrap();
        assert_eq!(list.arcs, vec![(0, 1), (2, 1)]);
        let labels = list.labels.clone().unwrap();
        assert_eq!(labels, vec!["a", "b", "c"]);
        let g = list.to_oriented().unwrap();
        assert_eq!(write_arc_list_labeled(&g, Some(&labels)), "3 2\na b\nc b\n");
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_arc_list("3 1\n0 1 2\n").unwrap_err(),
            FormatError::Syntax { line: 2, message: "expected `u v`, found 3 fields".into() }
        );
        assert_eq!(parse_arc_list("3 2\n0 1\n").unwrap_err(), FormatError::ArcCount { declared: 2, found: 1 });
        assert!(matches!(parse_arc_list(""), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(read_oriented("2 2\n0 1\n1 0\n"), Err(FormatError::Graph(GraphError::TwoCycle(0, 1)))));
    }

    #[test]
    fn dot_marks_agents() {
        let g = read_oriented("2 1\n0 1\n").unwrap();
        let dot = to_dot(&g, &[0], Some(1));
        assert!(dot.contains("0 [label=\"0 C\""));
        assert!(dot.contains("1 [label=\"1 R\""));
        assert!(dot.contains("0 -> 1;"));
    }
}
