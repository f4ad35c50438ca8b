//! Plain-text edge lists: one `u v` pair per line, 0-indexed.
//!
//! Blank lines and `#` comments are ignored. An optional `n <order>` line
//! fixes the vertex count (needed for trailing isolated vertices); without it
//! the order is one more than the largest index seen. Repeated edges are
//! merged.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted from text input.
pub const MAX_TEXT_ORDER: usize = 4096;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut largest: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::EdgeList { line, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => {
                if declared.is_some() {
                    return Err(err("order declared twice".into()));
                }
                let n = count
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad order {count:?}: {e}")))?;
                if n > MAX_TEXT_ORDER {
                    return Err(err(format!("order {n} exceeds the cap of {MAX_TEXT_ORDER}")));
                }
                declared = Some((n, line));
            }
            [a, b] => {
                let parse = |t: &str| t.parse::<usize>().map_err(|e| err(format!("bad vertex {t:?}: {e}")));
                let (u, v) = (parse(a)?, parse(b)?);
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                if u.max(v) >= MAX_TEXT_ORDER {
                    return Err(err(format!("vertex {} exceeds the cap of {MAX_TEXT_ORDER}", u.max(v))));
                }
                largest = Some(largest.map_or(u.max(v), |m| m.max(u).max(v)));
                edges.push((u, v, line));
            }
            _ => return Err(err(format!("expected `u v` or `n <order>`, found {content:?}"))),
        }
    }

    let n = match (declared, largest) {
        (Some((n, line)), Some(m)) if m >= n => {
            return Err(Error::EdgeList {
                line,
                message: format!("declared order {n} but vertex {m} appears"),
            })
        }
        (Some((n, _)), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut g = Graph::new(n)?;
    for (u, v, _) in edges {
        g.set_edge(u, v, true);
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
