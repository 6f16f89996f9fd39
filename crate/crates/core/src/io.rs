//! Edge-list and DIMACS `.col` readers and writers.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// `n m` header followed by `m` lines `u v`, 0-based.
    Edgelist,
    /// `p edge n m` header, `e u v` lines, 1-based; `c` lines are comments.
    Dimacs,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(Format::Edgelist),
            "dimacs" => Ok(Format::Dimacs),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| perr(line, format!("bad {what} {tok:?}")))
}

struct Builder {
    g: Graph,
    declared_m: usize,
}

impl Builder {
    fn new(n: usize, m: usize, line: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(perr(line, format!("n = {n} exceeds the cap of {MAX_VERTICES}")));
        }
        Ok(Builder { g: Graph::new(n), declared_m: m })
    }

    fn edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        let n = self.g.n();
        if u >= n || v >= n {
            return Err(perr(line, format!("vertex out of range in edge ({u}, {v})")));
        }
        if u == v {
            return Err(perr(line, format!("loop at vertex {u}")));
        }
        if !self.g.add_edge(u, v) {
            return Err(perr(line, format!("duplicate edge ({u}, {v})")));
        }
        Ok(())
    }

    fn finish(self, last_line: usize) -> Result<Graph> {
        if self.g.edge_count() != self.declared_m {
            return Err(perr(
                last_line,
                format!("header declares {} edges but {} were given", self.declared_m, self.g.edge_count()),
            ));
        }
        Ok(self.g)
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut b: Option<Builder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let a = parse_usize(toks.next(), line, "integer")?;
        let c = parse_usize(toks.next(), line, "integer")?;
        if toks.next().is_some() {
            return Err(perr(line, "expected exactly two integers"));
        }
        match b.as_mut() {
            None => b = Some(Builder::new(a, c, line)?),
            Some(b) => b.edge(a, c, line)?,
        }
    }
    b.ok_or_else(|| perr(1, "missing `n m` header"))?.finish(last)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut b: Option<Builder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("p") => {
                if b.is_some() {
                    return Err(perr(line, "second problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(perr(line, format!("unsupported problem type {other:?}"))),
                }
                let n = parse_usize(toks.next(), line, "vertex count")?;
                let m = parse_usize(toks.next(), line, "edge count")?;
                b = Some(Builder::new(n, m, line)?);
            }
            Some("e") => {
                let b = b.as_mut().ok_or_else(|| perr(line, "edge before problem line"))?;
                let u = parse_usize(toks.next(), line, "endpoint")?;
                let v = parse_usize(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(perr(line, "DIMACS vertices are 1-based"));
                }
                b.edge(u - 1, v - 1, line)?;
            }
            Some(other) => return Err(perr(line, format!("unknown line type {other:?}"))),
            None => {}
        }
    }
    b.ok_or_else(|| perr(1, "missing problem line"))?.finish(last)
}

pub fn parse(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Edgelist => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

pub fn write(g: &Graph, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list(g),
        Format::Dimacs => write_dimacs(g),
    }
}

/// SHA-256 of the canonical edge-list serialisation, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_edge_list(g).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn line_numbered_errors() {
        let e = parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_edge_list("3 1\n\n2 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_dimacs("c hi\np edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_dimacs("p edge 3 1\ne 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn edge_count_mismatch() {
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
    }

    #[test]
    fn hash_is_stable() {
        let a = graph_hash(&Graph::cycle(4));
        let b = graph_hash(&parse_edge_list("4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap());
        assert_eq!(a, b);
        assert_ne!(a, graph_hash(&Graph::complete(4)));
    }
}
