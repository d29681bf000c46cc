//! The `powham v1` edge-list format and DOT export.
//!
//! ```text
//! powham v1
//! n 3
//! e 0 1
//! e 1 2
//! e 2 0
//! ```
//!
//! Vertices are 0-based. Lines starting with `#` and blank lines are
//! skipped when reading; writers emit edges sorted by `(tail, head)` with
//! LF endings and no comments.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphBuilder, GraphError};

pub const HEADER: &str = "powham v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl FormatError {
    /// 1-based line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Parse { line, .. } | FormatError::Graph { line, .. } => Some(*line),
            FormatError::Io(_) => None,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph_str(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let total_lines = text.lines().count();

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((line, l)) => return Err(parse_err(line, format!("expected `{HEADER}`, found `{l}`"))),
        None => return Err(parse_err(1, format!("missing `{HEADER}` header"))),
    }

    let mut builder = match lines.next() {
        Some((line, l)) => {
            let mut parts = l.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("n"), Some(count), None) => {
                    let n: usize = count
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad vertex count `{count}`")))?;
                    DigraphBuilder::new(n).map_err(|source| FormatError::Graph { line, source })?
                }
                _ => return Err(parse_err(line, "expected `n <N>`")),
            }
        }
        None => return Err(parse_err(total_lines + 1, "missing `n <N>` line")),
    };

    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("e"), Some(u), Some(v), None) => (u, v),
            _ => return Err(parse_err(line, format!("expected `e <u> <v>`, found `{l}`"))),
        };
        let u: usize = u
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex `{u}`")))?;
        let v: usize = v
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex `{v}`")))?;
        builder
            .add_edge(u, v)
            .map_err(|source| FormatError::Graph { line, source })?;
    }
    Ok(builder.build())
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<Digraph, FormatError> {
    parse_graph_str(&fs::read_to_string(path)?)
}

pub fn serialize_graph_string(g: &Digraph) -> String {
    let mut s = String::with_capacity(16 + g.edge_count() * 10);
    s.push_str(HEADER);
    s.push('\n');
    let _ = writeln!(s, "n {}", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

pub fn serialize_graph(g: &Digraph, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, serialize_graph_string(g))?;
    Ok(())
}

/// `digraph {`, one `u -> v;` line per edge, `}`.
pub fn dot_string(g: &Digraph) -> String {
    let mut s = String::from("digraph {\n");
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

pub fn export_dot(g: &Digraph, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, dot_string(g))?;
    Ok(())
}

/// Reads a vertex list: ids separated by whitespace or commas, `#` comments.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>, FormatError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.split('#').next().unwrap_or("");
        for tok in l.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            out.push(
                tok.parse()
                    .map_err(|_| parse_err(i + 1, format!("bad vertex `{tok}`")))?,
            );
        }
    }
    Ok(out)
}
