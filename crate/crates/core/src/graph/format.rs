//! `p graph <n> <m> [simple]` / `e <u> <v> [mult] [label]` text format; `c`
//! starts a comment. With `simple`, parallel edges are rejected.

use super::{Edge, Label, Multigraph};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut simple = false;
    let mut g = Multigraph::empty(0);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let rest: Vec<&str> = tokens.collect();
                let flagged = rest.len() == 4 && rest[3] == "simple";
                if !(rest.len() == 3 || flagged) || rest[0] != "graph" {
                    return Err(err("malformed header, expected `p graph <n> <m> [simple]`".into()));
                }
                simple = flagged;
                let n = rest[1]
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad vertex count `{}`", rest[1])))?;
                let m = rest[2]
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad edge count `{}`", rest[2])))?;
                header = Some((n, m));
                g = Multigraph::empty(n);
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(err("edge line before the `p graph` header".into()));
                };
                let rest: Vec<&str> = tokens.collect();
                if rest.len() < 2 || rest.len() > 4 {
                    return Err(err("expected `e <u> <v> [mult] [label]`".into()));
                }
                let endpoint = |s: &str| -> Result<usize> {
                    let v = s
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad endpoint `{s}`")))?;
                    if v >= n {
                        return Err(err(format!("endpoint {v} out of range 0..{n}")));
                    }
                    Ok(v)
                };
                let u = endpoint(rest[0])?;
                let v = endpoint(rest[1])?;
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                let mut edge = Edge::new(u, v);
                let mut tail = &rest[2..];
                if let Some(tok) = tail.first() {
                    if tok.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
                        let mult = tok
                            .parse::<i64>()
                            .map_err(|_| err(format!("bad multiplicity `{tok}`")))?;
                        if mult <= 0 {
                            return Err(err(format!("multiplicity must be positive, got {mult}")));
                        }
                        edge.mult = u32::try_from(mult)
                            .map_err(|_| err(format!("multiplicity {mult} too large")))?;
                        tail = &tail[1..];
                    }
                }
                match tail {
                    [] => {}
                    [label] => edge.label = Label::new(label),
                    _ => return Err(err("too many fields on edge line".into())),
                }
                if simple
                    && (edge.mult > 1
                        || g.edges().iter().any(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u)))
                {
                    return Err(err(format!("parallel edge {u}-{v} in a graph declared simple")));
                }
                g.push_edge(edge).map_err(|e| err(e.to_string()))?;
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
    }
    let Some((_, m)) = header else {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "missing `p graph <n> <m>` header".into(),
        });
    };
    if g.edge_count() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("header announces {m} edges but {} were listed", g.edge_count()),
        });
    }
    Ok(g)
}

/// Serializes in the same format; multiplicity and label are written only
/// when they differ from the defaults.
pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("p graph {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("e {} {}", e.u, e.v));
        if e.mult != 1 || e.label.as_str() != "w" {
            out.push_str(&format!(" {}", e.mult));
        }
        if e.label.as_str() != "w" {
            out.push_str(&format!(" {}", e.label));
        }
        out.push('\n');
    }
    out
}
