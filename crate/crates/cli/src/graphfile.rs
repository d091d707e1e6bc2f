//! Plain-text graph file format.
//!
//! One `n <int>` line (first non-comment line), then `e <u> <v>` per edge
//! and `l <u>` per loop. `#` starts a comment line, tokens are whitespace
//! separated, vertices 0-indexed.

use std::fmt;

use sle_core::SelfLoopGraph;

#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse(input: &str) -> Result<SelfLoopGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut loops: Vec<usize> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().expect("non-empty line has a token");
        let mut next_int = |what: &str| -> Result<usize, ParseError> {
            tokens
                .next()
                .ok_or_else(|| err(lineno, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| err(lineno, format!("invalid {what}")))
        };
        match directive {
            "n" => {
                if n.is_some() {
                    return Err(err(lineno, "duplicate n directive"));
                }
                let v = next_int("vertex count")?;
                if v == 0 {
                    return Err(err(lineno, "vertex count must be at least 1"));
                }
                n = Some(v);
            }
            "e" => {
                let n = n.ok_or_else(|| err(lineno, "e directive before n"))?;
                let (u, v) = (next_int("edge endpoint")?, next_int("edge endpoint")?);
                if u >= n || v >= n {
                    return Err(err(lineno, format!("vertex out of range 0..{n}")));
                }
                if u == v {
                    return Err(err(lineno, "self-pair in edge list; use an l directive"));
                }
                let key = (u.min(v), u.max(v));
                if edges.contains(&key) {
                    return Err(err(lineno, format!("duplicate edge ({u}, {v})")));
                }
                edges.push(key);
            }
            "l" => {
                let n = n.ok_or_else(|| err(lineno, "l directive before n"))?;
                let v = next_int("loop vertex")?;
                if v >= n {
                    return Err(err(lineno, format!("vertex out of range 0..{n}")));
                }
                if loops.contains(&v) {
                    return Err(err(lineno, format!("duplicate loop at {v}")));
                }
                loops.push(v);
            }
            other => return Err(err(lineno, format!("unknown directive {other:?}"))),
        }
        if tokens.next().is_some() {
            return Err(err(lineno, "trailing tokens"));
        }
    }
    let n = n.ok_or_else(|| err(input.lines().count().max(1), "missing n directive"))?;
    Ok(SelfLoopGraph::from_edge_list(n, &edges, &loops).expect("parser validated the lists"))
}

pub fn serialize(g: &SelfLoopGraph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for v in g.loops() {
        out.push_str(&format!("l {v}\n"));
    }
    out
}

/// Single-line rendering used in extremal tables.
pub fn one_liner(g: &SelfLoopGraph) -> String {
    serialize(g).trim_end().replace('\n', " / ")
}
