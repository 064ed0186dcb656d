//! graph6, edge-list and DOT encodings.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    BadByte { byte: u8, offset: usize },
    #[error("graph6 string has {got} data bytes, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::BadByte { byte, offset });
        }
    }
    let read = |range: std::ops::Range<usize>| -> Result<usize, FormatError> {
        if range.end > bytes.len() {
            return Err(FormatError::Length {
                expected: range.end,
                got: bytes.len(),
            });
        }
        Ok(bytes[range].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() > 1 && bytes[1] == 126 {
        (read(2..8)?, 8)
    } else {
        (read(1..4)?, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != expected {
        return Err(FormatError::Length {
            expected,
            got: data.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses an edge list: one `u v` pair per line, `#` comments.
///
/// Tokens that all parse as integers are taken as 0-based indices and the
/// vertex count is `max + 1`. Otherwise tokens are names, numbered in order
/// of first appearance, and become the vertex labels. A comment of the form
/// `# vertices: N` fixes the vertex count (for isolated trailing vertices);
/// a line holding a single token declares an isolated named vertex.
pub fn from_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("vertices:") {
                let n = rest.trim().parse().map_err(|_| FormatError::EdgeList {
                    line: i + 1,
                    message: format!("bad vertex count {:?}", rest.trim()),
                })?;
                declared = Some(n);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(FormatError::EdgeList {
                line: i + 1,
                message: format!("expected `u v`, got {line:?}"),
            });
        }
        rows.push((i + 1, toks));
    }

    let numeric = rows.iter().all(|(_, t)| t.iter().all(|x| x.parse::<usize>().is_ok()));
    if numeric {
        let mut edges = Vec::new();
        let mut max = None;
        for (line, toks) in &rows {
            let ids: Vec<usize> = toks.iter().map(|t| t.parse().unwrap()).collect();
            max = ids.iter().copied().chain(max).max();
            if let [u, v] = ids.as_slice() {
                if u == v {
                    return Err(FormatError::EdgeList {
                        line: *line,
                        message: format!("self-loop at {u}"),
                    });
                }
                edges.push((*u, *v));
            }
        }
        let n = declared.unwrap_or(max.map_or(0, |m| m + 1));
        return Ok(Graph::from_edges(n, edges)?);
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (line, toks) in &rows {
        let ids: Vec<usize> = toks
            .iter()
            .map(|&t| {
                *index.entry(t).or_insert_with(|| {
                    names.push(t.to_string());
                    names.len() - 1
                })
            })
            .collect();
        if let [u, v] = ids.as_slice() {
            if u == v {
                return Err(FormatError::EdgeList {
                    line: *line,
                    message: format!("self-loop at {}", toks[0]),
                });
            }
            edges.push((*u, *v));
        }
    }
    let g = Graph::from_edges(names.len(), edges)?;
    Ok(g.with_labels(names)?)
}

/// Edge list using labels when present, with a `# vertices: N` header.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices: {}\n", g.n());
    // Named vertices are declared up front so re-parsing keeps the index order.
    if g.labels().is_some() {
        for v in 0..g.n() {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

/// Graphviz DOT export using labels when present.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", dot_id(name));
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v} [label={}];", dot_id(&g.label(v)));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    #[test]
    fn graph6_known_strings() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(1)), "@");
        assert_eq!(from_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_long_header() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(from_graph6(""), Err(FormatError::Empty));
        assert!(matches!(from_graph6("D Q"), Err(FormatError::BadByte { .. })));
        assert!(matches!(
            from_graph6("DQ"),
            Err(FormatError::Length { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn edge_list_numeric_and_named() {
        let g = from_edge_list("0 1\n1 2\n# vertices: 4\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 2);

        let g = from_edge_list("# square\nu x\nu v\nv w\nw x\n").unwrap();
        assert_eq!(g.labels().unwrap(), &["u", "x", "v", "w"]);
        assert_eq!(g.edge_count(), 4);
        assert!(from_edge_list("0 0\n").is_err());
        assert!(from_edge_list("a b c\n").is_err());
    }

    #[test]
    fn dot_has_labels() {
        let g = Graph::path(2).with_labels(vec!["a".into(), "b\"".into()]).unwrap();
        let dot = to_dot(&g, "P2");
        assert!(dot.contains("0 [label=\"a\"]"));
        assert!(dot.contains("1 [label=\"b\\\"\"]"));
        assert!(dot.contains("0 -- 1;"));
    }

    proptest! {
        #[test]
        fn graph6_and_edge_list_round_trip(g in arb_graph(20)) {
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }
}
