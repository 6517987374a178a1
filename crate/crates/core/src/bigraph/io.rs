//! The `.bg` graph text format.
//!
//! ```text
//! # comment
//! r 3
//! 0 3
//! 1 4
//! ```
//!
//! The first non-blank, non-comment line is `r <int>`; every following
//! line is one edge `<a> <b>` with `0 <= a < r <= b < 2r`.

use std::fmt::Write as _;
use std::path::Path;

use super::BiGraph;
use crate::error::{Error, Result};

pub fn parse_bg(text: &str, source: &str) -> Result<BiGraph> {
    let mut graph: Option<BiGraph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (&mut graph, fields.as_slice()) {
            (None, ["r", n]) => {
                let r: usize = n
                    .parse()
                    .map_err(|_| Error::parse(source, line_no, format!("bad size `{n}`")))?;
                graph = Some(
                    BiGraph::new(r).map_err(|e| Error::parse(source, line_no, e.to_string()))?,
                );
            }
            (None, _) => {
                return Err(Error::parse(source, line_no, "expected `r <int>` header"));
            }
            (Some(g), [a, b]) => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::parse(source, line_no, format!("bad vertex `{s}`")))
                };
                g.add_edge(parse(a)?, parse(b)?)
                    .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
            }
            (Some(_), _) => {
                return Err(Error::parse(source, line_no, "expected `<a> <b>`"));
            }
        }
    }
    graph.ok_or_else(|| Error::parse(source, 0, "missing `r <int>` header"))
}

pub fn read_bg(path: impl AsRef<Path>) -> std::io::Result<Result<BiGraph>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    Ok(parse_bg(&text, &path.display().to_string()))
}

pub(super) fn to_bg_string(g: &BiGraph) -> String {
    let mut s = format!("r {}\n", g.r());
    for (a, b) in g.edges() {
        let _ = writeln!(s, "{a} {b}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_blanks() {
        let g = parse_bg("# six cycle\n\nr 3\n0 3 # first\n1 4\n2 5\n0 4\n1 5\n2 3\n", "c6").unwrap();
        assert!(g.is_cycle());
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_bg("r 2\n0 2\n0 1\n", "bad.bg").unwrap_err();
        match e {
            Error::Parse { what, line, .. } => {
                assert_eq!(what, "bad.bg");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_bg("0 2\n", "x").is_err());
        assert!(parse_bg("", "x").is_err());
        assert!(parse_bg("r 2\n0 2 3\n", "x").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(r in 1usize..7, bits in any::<u64>()) {
            let mut g = BiGraph::new(r).unwrap();
            for a in 0..r {
                for b in 0..r {
                    if bits >> ((a * r + b) % 64) & 1 == 1 {
                        g.add_edge(a, r + b).unwrap();
                    }
                }
            }
            let back = parse_bg(&g.to_bg_string(), "rt").unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
