//! The `sg 1` text format.
//!
//! ```text
//! sg 1
//! # optional comments
//! n 3
//! 0 1 +
//! 1 2 -
//! ```
//!
//! Signs may be written `+`, `-`, `1` or `-1`. Blank lines and `#` comment
//! lines are allowed after the header; any other unrecognized token is an
//! error. Serialization writes edges in increasing `(u, v)` order with `+`/`-`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{Sign, SignedGraph};
use crate::{Error, Result};

pub const HEADER: &str = "sg 1";

pub fn serialize_graph(g: &SignedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "n {}", g.order()).unwrap();
    for (u, v, s) in g.edges() {
        writeln!(out, "{u} {v} {s}").unwrap();
    }
    out
}

fn parse_sign(token: &str) -> Option<Sign> {
    match token {
        "+" | "1" | "+1" => Some(Sign::Pos),
        "-" | "-1" => Some(Sign::Neg),
        _ => None,
    }
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    parse_graph_at(text, 0)
}

/// Parses one graph whose first line is line `offset + 1` of the input.
fn parse_graph_at(text: &str, offset: usize) -> Result<SignedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1 + offset, l.trim_end()));
    let syntax = |line: usize, message: String| Error::Syntax { line, message };
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => {
            return Err(syntax(
                line,
                format!("expected header `{HEADER}`, got `{other}`"),
            ))
        }
        None => return Err(syntax(offset + 1, "empty input".into())),
    }

    let mut order: Option<usize> = None;
    let mut edges: Vec<(usize, usize, Sign, usize)> = Vec::new();
    for (line, raw) in lines {
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => {
                if order.is_some() {
                    return Err(syntax(line, "repeated vertex count line".into()));
                }
                let count: usize = count
                    .parse()
                    .map_err(|_| syntax(line, format!("bad vertex count `{count}`")))?;
                order = Some(count);
            }
            [u, v, s] => {
                if order.is_none() {
                    return Err(syntax(line, "edge before the `n` line".into()));
                }
                let vertex = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| syntax(line, format!("bad vertex `{t}`")))
                };
                let sign = parse_sign(s).ok_or_else(|| Error::AtLine {
                    line,
                    source: Box::new(match s.parse::<i64>() {
                        Ok(value) => Error::BadSign(value),
                        Err(_) => syntax(line, format!("bad sign `{s}`")),
                    }),
                })?;
                edges.push((vertex(u)?, vertex(v)?, sign, line));
            }
            _ => return Err(syntax(line, format!("unrecognized line `{content}`"))),
        }
    }

    let order = order.ok_or_else(|| syntax(offset + 1, "missing `n` line".into()))?;
    if order == 0 {
        return Err(Error::AtLine {
            line: offset + 1,
            source: Box::new(Error::NoVertices),
        });
    }
    let mut seen = BTreeSet::new();
    for &(u, v, _, line) in &edges {
        let error = if let Some(&vertex) = [u, v].iter().find(|&&w| w >= order) {
            Some(Error::VertexOutOfRange { vertex, order })
        } else if u == v {
            Some(Error::LoopEdge(u))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(Error::DuplicateEdge(u.min(v), u.max(v)))
        } else {
            None
        };
        if let Some(e) = error {
            return Err(Error::AtLine {
                line,
                source: Box::new(e),
            });
        }
    }
    Ok(
        SignedGraph::from_edges(order, edges.into_iter().map(|(u, v, s, _)| (u, v, s)))
            .expect("edges validated above"),
    )
}

/// Splits a concatenation of graph files at each header line.
pub fn parse_graph_stream(text: &str) -> Result<Vec<SignedGraph>> {
    let lines: Vec<&str> = text.lines().collect();
    let starts: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.trim_end() == HEADER)
        .map(|(i, _)| i)
        .collect();
    if let Some((i, _)) = lines
        .iter()
        .enumerate()
        .take(starts.first().copied().unwrap_or(lines.len()))
        .find(|(_, l)| !l.trim().is_empty())
    {
        return Err(Error::Syntax {
            line: i + 1,
            message: format!("expected header `{HEADER}`"),
        });
    }
    let mut out = Vec::with_capacity(starts.len());
    for (k, &start) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(lines.len());
        out.push(parse_graph_at(&lines[start..end].join("\n"), start)?);
    }
    Ok(out)
}
