//! The instance text format.
//!
//! A header line `m n` (an optional third token `0` marks the unweighted
//! variant), followed by `m` hyperedge lines of 1-indexed vertex ids, a
//! terminal line `T t1 t2 ...`, and a budget line `C c`. Lines starting
//! with `%` are comments. Serialization is canonical, so parsing a
//! serialized instance reproduces it exactly.
//!
//! ```text
//! 2 3
//! 1 2
//! 2 3
//! T 1 3
//! C 1
//! ```

use std::collections::BTreeMap;

use hypermim_core::hypergraph::VertexSet;
use hypermim_core::{EdgeId, Hypergraph, Instance, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unexpected end of file: {0}")]
    Truncated(String),
    #[error(transparent)]
    Core(#[from] hypermim_core::Error),
}

fn bad(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::Truncated("missing header".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 2 || tokens.len() > 3 {
        return Err(bad(header_no, "header must be `m n` or `m n 0`"));
    }
    let m: u32 = tokens[0]
        .parse()
        .map_err(|_| bad(header_no, "edge count is not a number"))?;
    let n: u32 = tokens[1]
        .parse()
        .map_err(|_| bad(header_no, "vertex count is not a number"))?;
    if n == 0 {
        return Err(bad(header_no, "vertex count must be positive"));
    }
    if tokens.len() == 3 && tokens[2] != "0" {
        return Err(bad(header_no, "only the unweighted format `0` is supported"));
    }

    let mut graph = Hypergraph::new();
    for v in 1..=n {
        graph.insert_vertex(VertexId(v));
    }
    for id in 1..=m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| ParseError::Truncated(format!("missing edge line {id}")))?;
        let mut verts = Vec::new();
        for tok in line.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| bad(line_no, format!("bad vertex index {tok:?}")))?;
            if v == 0 || v > n {
                return Err(bad(line_no, format!("vertex index {v} out of range 1..={n}")));
            }
            if verts.contains(&VertexId(v)) {
                return Err(bad(line_no, format!("vertex {v} repeated in edge")));
            }
            verts.push(VertexId(v));
        }
        if verts.len() < 2 {
            return Err(bad(line_no, "an edge needs at least two distinct vertices"));
        }
        graph
            .insert_edge(EdgeId(id), verts)
            .map_err(ParseError::Core)?;
    }

    let (t_no, t_line) = lines
        .next()
        .ok_or_else(|| ParseError::Truncated("missing terminal line".into()))?;
    let mut t_tokens = t_line.split_whitespace();
    if t_tokens.next() != Some("T") {
        return Err(bad(t_no, "expected terminal line starting with `T`"));
    }
    let mut terminals = VertexSet::new();
    for tok in t_tokens {
        let v: u32 = tok
            .parse()
            .map_err(|_| bad(t_no, format!("bad terminal index {tok:?}")))?;
        if v == 0 || v > n {
            return Err(bad(t_no, format!("terminal {v} out of range 1..={n}")));
        }
        terminals.insert(VertexId(v));
    }
    if terminals.is_empty() {
        return Err(bad(t_no, "terminal line lists no terminals"));
    }

    let (c_no, c_line) = lines
        .next()
        .ok_or_else(|| ParseError::Truncated("missing budget line".into()))?;
    let mut c_tokens = c_line.split_whitespace();
    if c_tokens.next() != Some("C") {
        return Err(bad(c_no, "expected budget line starting with `C`"));
    }
    let budget: u64 = c_tokens
        .next()
        .ok_or_else(|| bad(c_no, "budget line has no value"))?
        .parse()
        .map_err(|_| bad(c_no, "budget is not a number"))?;
    if let Some(extra) = c_tokens.next() {
        return Err(bad(c_no, format!("unexpected token {extra:?} after budget")));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(bad(line_no, "trailing content after the budget line"));
    }

    Instance::new(graph, terminals, budget).map_err(ParseError::Core)
}

/// Canonical serialization. Vertices are renumbered to 1..=n in id order
/// when the instance does not already use that range (contractions allocate
/// fresh ids), so the output always round-trips through `parse_instance`.
pub fn serialize_instance(inst: &Instance) -> String {
    let renumber: BTreeMap<VertexId, u32> = inst
        .graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32 + 1))
        .collect();
    let mut out = String::new();
    out.push_str(&format!(
        "{} {}\n",
        inst.graph.edge_count(),
        inst.graph.vertex_count()
    ));
    for vs in inst.graph.edges().values() {
        let line: Vec<String> = vs.iter().map(|v| renumber[v].to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    let ts: Vec<String> = inst
        .terminals
        .iter()
        .map(|t| renumber[t].to_string())
        .collect();
    out.push_str(&format!("T {}\n", ts.join(" ")));
    out.push_str(&format!("C {}\n", inst.budget));
    out
}
