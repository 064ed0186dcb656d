//! Graph sources: named graphs, inline graph6, and files in graph6,
//! edge-list or corona-spec JSON form.

use std::fs;
use std::io::{self, Read};

use bei_core::corona::{CoronaProduct, CoronaSpec};
use bei_core::graph::format::{from_edge_list, from_graph6};
use bei_core::{Graph, VertexSet};
use clap::ValueEnum;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    Edgelist,
    SpecJson,
}

/// A graph, plus its corona structure when it was built as one.
pub struct Source {
    pub graph: Graph,
    pub product: Option<CoronaProduct>,
}

/// `Kn`, `Pn`, `Cn`, or an inline graph6 string.
pub fn parse_graph_arg(s: &str) -> Result<Graph, CliError> {
    if let Some(g) = named_graph(s)? {
        return Ok(g);
    }
    Ok(from_graph6(s)?)
}

fn named_graph(s: &str) -> Result<Option<Graph>, CliError> {
    let mut chars = s.chars();
    let Some(kind) = chars.next() else {
        return Ok(None);
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = digits
        .parse()
        .map_err(|_| CliError::Input(format!("bad vertex count in {s:?}")))?;
    let g = match kind {
        'K' => Graph::complete(n),
        'P' => Graph::path(n),
        'C' if n >= 3 => Graph::cycle(n),
        'C' => return Err(CliError::Input(format!("cycle needs at least 3 vertices, got {s:?}"))),
        _ => return Ok(None),
    };
    Ok(Some(g))
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    }
}

fn detect(text: &str) -> InputFormat {
    let t = text.trim_start();
    if t.starts_with('{') {
        return InputFormat::SpecJson;
    }
    let first = t.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with(">>graph6<<") => InputFormat::Graph6,
        Some(l) if l.starts_with('#') || l.split_whitespace().count() > 1 => InputFormat::Edgelist,
        Some(l) if t.lines().filter(|l| !l.trim().is_empty()).count() == 1 && from_graph6(l).is_ok() => {
            InputFormat::Graph6
        }
        _ => InputFormat::Edgelist,
    }
}

/// Parses file contents in the given (or detected) format.
pub fn parse_source(text: &str, format: InputFormat) -> Result<Source, CliError> {
    let format = if format == InputFormat::Auto {
        detect(text)
    } else {
        format
    };
    match format {
        InputFormat::SpecJson => {
            let product = CoronaSpec::from_json(text)?.build();
            Ok(Source {
                graph: product.graph.clone(),
                product: Some(product),
            })
        }
        InputFormat::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| CliError::Input("empty graph6 input".into()))?;
            Ok(Source {
                graph: from_graph6(line)?,
                product: None,
            })
        }
        InputFormat::Edgelist | InputFormat::Auto => Ok(Source {
            graph: from_edge_list(text)?,
            product: None,
        }),
    }
}

/// Comma-separated vertex indices (labels also accepted when `g` has them).
pub fn parse_vertex_list(s: &str, g: &Graph) -> Result<VertexSet, CliError> {
    let mut set = VertexSet::new(g.n());
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = match tok.parse::<usize>() {
            Ok(v) => v,
            Err(_) => g
                .labels()
                .and_then(|l| l.iter().position(|x| x == tok))
                .ok_or_else(|| CliError::Input(format!("unknown vertex {tok:?}")))?,
        };
        if v >= g.n() {
            return Err(CliError::Input(format!(
                "vertex {v} out of range for {} vertices",
                g.n()
            )));
        }
        set.insert(v);
    }
    Ok(set)
}
