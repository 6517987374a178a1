//! The line-oriented `.gadget` format.
//!
//! ```text
//! name: five-token
//! tokens: u v w x y
//! yedge: u w
//! xedge: u v
//! choice: blank yedge y v | yedge y w
//! target: u v
//! seq: xv yw xw uw
//! ```
//!
//! `xedge` names positions by their home token. Sequence items are two
//! single-character tokens (`uw`) or `a-b`; commas are optional.

use std::fmt::Write as _;
use std::path::Path;

use super::{ChoiceGroup, EdgeKind, EdgeOption, GadgetCase};
use crate::error::{Error, Result};
use crate::fs::SwapSeq;

struct Builder<'a> {
    source: &'a str,
    name: Option<String>,
    tokens: Option<Vec<String>>,
    y: Vec<(usize, usize)>,
    x: Vec<(usize, usize)>,
    choices: Vec<ChoiceGroup>,
    target: Option<(usize, usize)>,
    seq: Option<SwapSeq>,
}

impl Builder<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.source, line, msg)
    }

    fn index(&self, line: usize, t: &str) -> Result<usize> {
        let tokens = self
            .tokens
            .as_ref()
            .ok_or_else(|| self.err(line, "`tokens:` must come before any edge"))?;
        tokens
            .iter()
            .position(|s| s == t)
            .ok_or_else(|| self.err(line, format!("undeclared token `{t}`")))
    }

    fn pair(&self, line: usize, words: &[&str]) -> Result<(usize, usize)> {
        match words {
            [a, b] => {
                let (a, b) = (self.index(line, a)?, self.index(line, b)?);
                if a == b {
                    return Err(self.err(line, "a pair needs two distinct tokens"));
                }
                Ok((a, b))
            }
            _ => Err(self.err(line, format!("expected two tokens, found {}", words.len()))),
        }
    }

    fn option(&self, line: usize, text: &str) -> Result<EdgeOption> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let kind = match words.first() {
            Some(&"yedge") => EdgeKind::Y,
            Some(&"xedge") => EdgeKind::X,
            _ => return Err(self.err(line, format!("choice option `{}` must start with yedge or xedge", text.trim()))),
        };
        let (a, b) = self.pair(line, &words[1..])?;
        Ok(EdgeOption { kind, a, b })
    }

    fn seq_item(&self, line: usize, item: &str) -> Result<(usize, usize)> {
        if let Some((a, b)) = item.split_once('-') {
            return self.pair(line, &[a, b]);
        }
        let chars: Vec<char> = item.chars().collect();
        if chars.len() != 2 {
            return Err(self.err(line, format!("bad swap `{item}`: use two one-letter tokens or a-b")));
        }
        self.pair(line, &[&chars[0].to_string(), &chars[1].to_string()])
    }
}

pub fn parse_gadget(text: &str, source: &str) -> Result<GadgetCase> {
    let mut b = Builder {
        source,
        name: None,
        tokens: None,
        y: Vec::new(),
        x: Vec::new(),
        choices: Vec::new(),
        target: None,
        seq: None,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, rest) = body
            .split_once(':')
            .ok_or_else(|| b.err(line, format!("expected `key: value`, found `{body}`")))?;
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "name" => b.name = Some(rest.to_string()),
            "tokens" => {
                if words.len() < 2 {
                    return Err(b.err(line, "need at least two tokens"));
                }
                for (j, w) in words.iter().enumerate() {
                    if w.contains('-') {
                        return Err(b.err(line, format!("token `{w}` may not contain `-`")));
                    }
                    if words[..j].contains(w) {
                        return Err(b.err(line, format!("token `{w}` declared twice")));
                    }
                }
                b.tokens = Some(words.iter().map(|w| w.to_string()).collect());
            }
            "yedge" => {
                let p = b.pair(line, &words)?;
                b.y.push(p);
            }
            "xedge" => {
                let p = b.pair(line, &words)?;
                b.x.push(p);
            }
            "choice" => {
                let (blank, rest) = match rest.strip_prefix("blank") {
                    Some(r) => (true, r),
                    None => (false, rest),
                };
                let options = rest
                    .split('|')
                    .map(|o| b.option(line, o))
                    .collect::<Result<Vec<_>>>()?;
                b.choices.push(ChoiceGroup { blank, options });
            }
            "target" => b.target = Some(b.pair(line, &words)?),
            "seq" => {
                let items = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| b.seq_item(line, s))
                    .collect::<Result<Vec<_>>>()?;
                b.seq = Some(SwapSeq(items));
            }
            other => return Err(b.err(line, format!("unknown key `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let missing = |what: &str| b.err(end, format!("missing `{what}:`"));
    let case = GadgetCase {
        name: b.name.clone().ok_or_else(|| missing("name"))?,
        tokens: b.tokens.clone().ok_or_else(|| missing("tokens"))?,
        target: b.target.ok_or_else(|| missing("target"))?,
        sequence: b.seq.clone().ok_or_else(|| missing("seq"))?,
        y_edges: b.y,
        x_edges: b.x,
        choices: b.choices,
    };
    case.validate()?;
    Ok(case)
}

pub fn load_gadget(path: impl AsRef<Path>) -> Result<GadgetCase> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), 0, e.to_string()))?;
    parse_gadget(&text, &path.display().to_string())
}

impl GadgetCase {
    pub fn to_gadget_string(&self) -> String {
        let t = |i: usize| self.tokens[i].as_str();
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "tokens: {}", self.tokens.join(" "));
        for &(a, b) in &self.y_edges {
            let _ = writeln!(s, "yedge: {} {}", t(a), t(b));
        }
        for &(a, b) in &self.x_edges {
            let _ = writeln!(s, "xedge: {} {}", t(a), t(b));
        }
        for g in &self.choices {
            let opts: Vec<String> = g
                .options
                .iter()
                .map(|o| {
                    let kind = if o.kind == EdgeKind::Y { "yedge" } else { "xedge" };
                    format!("{kind} {} {}", t(o.a), t(o.b))
                })
                .collect();
            let blank = if g.blank { "blank " } else { "" };
            let _ = writeln!(s, "choice: {blank}{}", opts.join(" | "));
        }
        let _ = writeln!(s, "target: {} {}", t(self.target.0), t(self.target.1));
        let _ = writeln!(s, "seq: {}", self.sequence_text());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undeclared_token_is_a_line_error() {
        let text = "name: n\ntokens: u v\nyedge: u v\nxedge: u v\ntarget: u v\nseq: uv uq\n";
        match parse_gadget(text, "case.gadget") {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 6);
                assert!(msg.contains("`q`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dashed_items_and_commas() {
        let text = "name: n\ntokens: p1 p2 p3\nyedge: p1 p2\nxedge: p1 p2\ntarget: p1 p2\nseq: p1-p2, p2-p3\n";
        let c = parse_gadget(text, "x").unwrap();
        assert_eq!(c.sequence.0, vec![(0, 1), (1, 2)]);
        assert_eq!(c.sequence_text(), "p1-p2 p2-p3");
    }

    #[test]
    fn schema_errors() {
        assert!(parse_gadget("tokens: u v\ntarget: u v\nseq: uv\n", "x").is_err());
        assert!(parse_gadget("name: n\ntokens: u u\n", "x").is_err());
        assert!(parse_gadget("name: n\ntokens: u v\nchoice: zedge u v\ntarget: u v\nseq: uv\n", "x").is_err());
        assert!(parse_gadget("name: n\nyedge: u v\n", "x").is_err());
        assert!(parse_gadget("name: n\ntokens: u v\ncolour: red\n", "x").is_err());
    }

    #[test]
    fn choice_round_trip() {
        let text = "name: n\ntokens: u v w\nyedge: u v\nxedge: u v\nchoice: blank yedge w u | xedge w v\ntarget: u v\nseq: uv\n";
        let c = parse_gadget(text, "x").unwrap();
        assert_eq!(c.to_gadget_string(), text);
    }
}
