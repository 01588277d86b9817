//! Plain-text graph format:
//!
//! ```text
//! c comment
//! p <n> <m>
//! e <u> <v>      (1-indexed, m lines)
//! ```

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut edges_seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                let n = number(tok.next(), line_no, "vertex count")?;
                let m = number(tok.next(), line_no, "edge count")?;
                if tok.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens in header"));
                }
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "edge before 'p' header"))?;
                let u = number(tok.next(), line_no, "endpoint")?;
                let v = number(tok.next(), line_no, "endpoint")?;
                if tok.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens in edge line"));
                }
                let n = g.n();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(line_no, format!("endpoint out of range 1..={n}")));
                }
                if u == v {
                    return Err(Error::parse(line_no, "self-loop"));
                }
                if !g.add_edge(u - 1, v - 1)? {
                    return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
                }
                edges_seen += 1;
            }
            Some(other) => {
                return Err(Error::parse(line_no, format!("unexpected line type '{other}'")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    let (g, m) = graph.ok_or_else(|| Error::parse(0, "missing 'p <n> <m>' header"))?;
    if edges_seen != m {
        return Err(Error::parse(0, format!("header declares {m} edges, found {edges_seen}")));
    }
    Ok(g)
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what}")))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("c P3\np 3 2\ne 1 2\nc mid\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn writes_and_reads_back() {
        let g = Graph::cycle(7);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert_eq!(write_graph(&Graph::new(0)), "p 0 0\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph("p 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_graph("q 3\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_graph("e 1 2\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(parse_graph("p 3 2\ne 1 2\n").is_err());
        assert!(parse_graph("p 3 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_graph("p 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("").is_err());
    }
}
