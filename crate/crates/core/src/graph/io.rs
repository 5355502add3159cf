//! Edge-list text and JSON readers/writers.
//!
//! The text form is a header line `p q` followed by `q` lines `u v`
//! (0-based). Lines whose first non-blank character is `#` are comments.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `p q` header".into()))?;
    let (p, q) = parse_pair(header, 1)?;

    let mut pairs = Vec::with_capacity(q);
    for (idx, line) in lines {
        pairs.push(parse_pair(line, idx + 1)?);
    }
    if pairs.len() != q {
        return Err(Error::Parse(format!(
            "header announces {q} edges, found {}",
            pairs.len()
        )));
    }
    Graph::from_edge_list(p, pairs)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!(
            "line {lineno}: expected two non-negative integers, got `{line}`"
        ))),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Reads either format; JSON is recognised by a leading `{`.
pub fn read_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# a 4-cycle\n4 4\n0 1\n1 2\n\n# closing edge next\n2 3\n3 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
    }

    #[test]
    fn round_trips() {
        let g = Graph::petersen();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(read_graph(&json).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse(_))));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1 2\n"),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            parse_edge_list("2 1\n0 5\n"),
            Err(Error::IndexOutOfRange { index: 5, order: 2 })
        );
    }
}
