//! Text format for weighted graphs:
//!
//! ```text
//! n m
//! u v [g]      (m edge lines)
//! vw u [f]     (optional vertex-weight lines)
//! ```
//!
//! Vertices are 0-based integers below `n`; weights are decimal integers
//! or `a/b` rationals and default to 1 when omitted. Blank lines and lines
//! starting with `#` are ignored.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::ring::{format_exact, ExactRational};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a weight literal: decimal integer or `a/b` rational.
pub fn parse_weight(s: &str) -> Option<ExactRational> {
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: num_bigint::BigInt = numer.parse().ok()?;
    let denom: num_bigint::BigInt = match denom {
        Some(d) => d.parse().ok()?,
        None => 1.into(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(ExactRational::new(numer, denom))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph<ExactRational>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lno, header) = lines
        .next()
        .ok_or_else(|| parse_error(0, "empty input, expected `n m` header"))?;
    let mut parts = header.split_whitespace();
    let n: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(lno, "header must start with the vertex count"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(lno, "header must be `n m`"))?;
    if parts.next().is_some() {
        return Err(parse_error(lno, "header must be exactly `n m`"));
    }
    if n == 0 {
        return Err(parse_error(lno, "graph needs at least one vertex"));
    }

    let mut g = WeightedGraph::new();
    for v in 0..n {
        g.add_vertex(VertexId(v));
    }

    let parse_vertex = |lno: usize, tok: &str| -> Result<VertexId> {
        let id: u32 = tok
            .parse()
            .map_err(|_| parse_error(lno, format!("bad vertex id {tok:?}")))?;
        if id >= n {
            return Err(parse_error(lno, format!("vertex id {id} out of range 0..{n}")));
        }
        Ok(VertexId(id))
    };

    for _ in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_error(0, format!("expected {m} edge lines")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 || toks.len() > 3 {
            return Err(parse_error(lno, "edge line must be `u v [g]`"));
        }
        let u = parse_vertex(lno, toks[0])?;
        let v = parse_vertex(lno, toks[1])?;
        if u == v {
            return Err(parse_error(lno, format!("self-loop at {u}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_error(lno, format!("duplicate edge ({u}, {v})")));
        }
        let w = match toks.get(2) {
            Some(t) => {
                parse_weight(t).ok_or_else(|| parse_error(lno, format!("bad weight {t:?}")))?
            }
            None => ExactRational::one(),
        };
        g.add_edge_weighted(u, v, w);
    }

    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() != Some(&"vw") || toks.len() < 2 || toks.len() > 3 {
            return Err(parse_error(
                lno,
                "trailing lines must be vertex weights `vw u [f]`",
            ));
        }
        let u = parse_vertex(lno, toks[1])?;
        let w = match toks.get(2) {
            Some(t) => {
                parse_weight(t).ok_or_else(|| parse_error(lno, format!("bad weight {t:?}")))?
            }
            None => ExactRational::one(),
        };
        g.set_vertex_weight(u, w);
    }
    Ok(g)
}

/// Serializes a graph in the text format, remapping ids onto `0..n` in
/// sorted order. Unit weights are omitted.
pub fn dump_graph(g: &WeightedGraph<ExactRational>) -> String {
    let verts: Vec<VertexId> = g.vertices().collect();
    let index_of = |v: VertexId| verts.binary_search(&v).unwrap();
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (a, b) in g.edges() {
        let w = g.edge_weight(a, b);
        let (ia, ib) = (index_of(a), index_of(b));
        let (ia, ib) = (ia.min(ib), ia.max(ib));
        if w.is_one() {
            out.push_str(&format!("{ia} {ib}\n"));
        } else {
            out.push_str(&format!("{ia} {ib} {}\n", format_exact(w)));
        }
    }
    for &v in &verts {
        let w = g.vertex_weight(v);
        if !w.is_one() {
            out.push_str(&format!("vw {} {}\n", index_of(v), format_exact(w)));
        }
    }
    out
}
