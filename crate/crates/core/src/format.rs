//! Line-oriented graph text format.
//!
//! ```text
//! G <chi> <n>
//! E <u> <v>
//! ```
//!
//! Vertex ids are `v1..v<chi>` (interior) and `w1..w<n>` (boundary); a loop
//! is written `E u u`. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Role};

pub fn to_text(g: &MultiGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "G {} {}", g.interior_count(), g.boundary_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "E {} {}", g.name(u), g.name(v));
    }
    out
}

fn parse_vertex(tok: &str, chi: usize, n: usize, line: usize) -> Result<usize> {
    let err = |msg: String| Error::Parse { line, msg };
    let (kind, rest) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
    let idx: usize = rest
        .parse()
        .map_err(|_| err(format!("bad vertex id `{tok}`")))?;
    match kind {
        "v" if (1..=chi).contains(&idx) => Ok(idx - 1),
        "w" if (1..=n).contains(&idx) => Ok(chi + idx - 1),
        _ => Err(err(format!("vertex id `{tok}` out of range"))),
    }
}

/// Parses the text format; vertices are laid out interior-first.
pub fn parse(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        match (toks[0], header) {
            ("G", None) if toks.len() == 3 => {
                let num = |t: &str| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad count `{t}`"),
                    })
                };
                header = Some((num(toks[1])?, num(toks[2])?));
            }
            ("G", Some(_)) => {
                return Err(Error::Parse { line, msg: "duplicate header".into() });
            }
            ("E", Some((chi, n))) if toks.len() == 3 => {
                let u = parse_vertex(toks[1], chi, n, line)?;
                let v = parse_vertex(toks[2], chi, n, line)?;
                edges.push((u, v));
            }
            ("E", None) => {
                return Err(Error::Parse { line, msg: "edge before header".into() });
            }
            _ => {
                return Err(Error::Parse { line, msg: format!("unrecognized record `{s}`") });
            }
        }
    }
    let (chi, n) = header.ok_or(Error::Parse { line: 0, msg: "missing `G` header".into() })?;
    let mut roles = vec![Role::Interior; chi];
    roles.resize(chi + n, Role::Boundary);
    MultiGraph::new(roles, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_reads_loop_graph() {
        let g = MultiGraph::with_counts(1, 1, vec![(0, 0), (0, 1)]).unwrap();
        let text = to_text(&g);
        assert_eq!(text, "G 1 1\nE v1 v1\nE v1 w1\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("E v1 w1\n").is_err());
        assert!(parse("G 1 1\nE v1 w2\n").is_err());
        assert!(parse("G 1 1\nE v1 x1\n").is_err());
        assert!(parse("G 1 1\nG 1 1\n").is_err());
        assert!(parse("# nothing\n").is_err());
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let g = parse("# star\nG 1 3\n\nE v1 w1\nE w2 v1\nE v1 w3\n").unwrap();
        assert_eq!(g.degrees(), &[3, 1, 1, 1]);
    }
}
