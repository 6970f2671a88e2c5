use std::fmt::Write as _;

use super::Dag;
use crate::error::{Error, Result};

/// Parse the edge-list format: the first non-comment line holds the vertex
/// count `n`, every following non-comment line holds one edge `u v`.
/// `#` starts a comment; LF and CRLF line endings are both accepted.
pub fn parse_edge_list(text: &str) -> Result<Dag> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a non-negative integer, got {s:?}"),
            })
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected the vertex count on its own line".into(),
                    });
                }
                n = Some(parse(fields[0])?);
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected \"u v\", got {line:?}"),
                    });
                }
                edges.push((parse(fields[0])?, parse(fields[1])?));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    Dag::new(n, edges)
}

/// Serialize in the edge-list format, edges in ascending order.
pub fn write_edge_list(g: &Dag) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
