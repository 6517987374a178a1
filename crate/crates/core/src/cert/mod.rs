//! Symbolic swap-sequence certificates.
//!
//! A [`GadgetCase`] names a handful of tokens, the `Y`-edges among them
//! and the `X`-edges among their home positions (position `t'` is where
//! token `t` starts). Only listed edges exist. Choice groups list
//! alternative extra edges; a case is accepted only if its sequence works
//! for every combination.

mod corpus;
mod embed;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fs::search::bfs_exchange;
use crate::fs::SwapSeq;

pub use corpus::builtin_corpus;
pub use embed::{embed, Embedding};
pub use format::{load_gadget, parse_gadget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    /// Between two tokens.
    Y,
    /// Between the home positions of two tokens.
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOption {
    pub kind: EdgeKind,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceGroup {
    /// Marks an unconstrained column; every option is checked either way.
    pub blank: bool,
    pub options: Vec<EdgeOption>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCase {
    pub name: String,
    pub tokens: Vec<String>,
    pub y_edges: Vec<(usize, usize)>,
    pub x_edges: Vec<(usize, usize)>,
    pub choices: Vec<ChoiceGroup>,
    pub target: (usize, usize),
    /// Token-index pairs.
    pub sequence: SwapSeq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailReason {
    MissingYEdge,
    MissingXEdge,
    WrongFinal,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::MissingYEdge => "missing Y-edge",
            FailReason::MissingXEdge => "missing X-edge",
            FailReason::WrongFinal => "wrong final permutation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Option index chosen in each group.
    pub instantiation: Vec<usize>,
    /// 1-based step; for `WrongFinal` this is the sequence length.
    pub step: usize,
    pub reason: FailReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub accepted: bool,
    pub instantiations_checked: usize,
    pub failure: Option<Failure>,
}

/// One row of the per-instantiation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantiationResult {
    pub instantiation: Vec<usize>,
    pub label: String,
    pub failure: Option<Failure>,
    /// Shortest exchange under exactly these edges, `None` if unreachable.
    pub shortest: Option<usize>,
}

/// Dense edge tables for one instantiation.
pub(crate) struct EdgeSet {
    k: usize,
    y: Vec<bool>,
    x: Vec<bool>,
}

impl EdgeSet {
    fn set(table: &mut [bool], k: usize, a: usize, b: usize) {
        table[a * k + b] = true;
        table[b * k + a] = true;
    }

    pub(crate) fn has_y(&self, a: usize, b: usize) -> bool {
        self.y[a * self.k + b]
    }

    pub(crate) fn has_x(&self, a: usize, b: usize) -> bool {
        self.x[a * self.k + b]
    }

    pub(crate) fn x_list(&self) -> Vec<(usize, usize)> {
        let k = self.k;
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_x(a, b))
            .collect()
    }

    pub(crate) fn y_list(&self) -> Vec<(usize, usize)> {
        let k = self.k;
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_y(a, b))
            .collect()
    }
}

impl GadgetCase {
    pub fn k(&self) -> usize {
        self.tokens.len()
    }

    pub fn token_index(&self, name: &str) -> Result<usize> {
        self.tokens
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| Error::UnknownToken(name.to_string()))
    }

    fn malformed(&self, msg: impl Into<String>) -> Error {
        Error::Gadget {
            name: self.name.clone(),
            msg: msg.into(),
        }
    }

    /// Checks the structural invariants every case must satisfy.
    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k < 2 {
            return Err(self.malformed("needs at least two tokens"));
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if self.tokens[..i].contains(t) {
                return Err(self.malformed(format!("token `{t}` declared twice")));
            }
        }
        let pair_ok = |(a, b): (usize, usize)| a < k && b < k && a != b;
        let all_pairs = self
            .y_edges
            .iter()
            .chain(&self.x_edges)
            .chain(&self.sequence.0)
            .copied()
            .chain(std::iter::once(self.target))
            .chain(self.choices.iter().flat_map(|g| g.options.iter().map(|o| (o.a, o.b))));
        for p in all_pairs {
            if !pair_ok(p) {
                return Err(self.malformed(format!("bad token pair {p:?}")));
            }
        }
        if self.choices.iter().any(|g| g.options.is_empty()) {
            return Err(self.malformed("empty choice group"));
        }
        Ok(())
    }

    pub fn instantiation_count(&self) -> usize {
        self.choices.iter().map(|g| g.options.len()).product()
    }

    /// Every combination of choices, in odometer order (last group fastest).
    pub fn instantiations(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for g in &self.choices {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..g.options.len()).map(move |i| {
                        let mut p = prefix.clone();
                        p.push(i);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub(crate) fn edge_set(&self, inst: &[usize]) -> Result<EdgeSet> {
        if inst.len() != self.choices.len() {
            return Err(self.malformed(format!(
                "instantiation has {} entries for {} choice groups",
                inst.len(),
                self.choices.len()
            )));
        }
        let k = self.k();
        let mut es = EdgeSet {
            k,
            y: vec![false; k * k],
            x: vec![false; k * k],
        };
        for &(a, b) in &self.y_edges {
            EdgeSet::set(&mut es.y, k, a, b);
        }
        for &(a, b) in &self.x_edges {
            EdgeSet::set(&mut es.x, k, a, b);
        }
        for (g, &i) in self.choices.iter().zip(inst) {
            let o = g
                .options
                .get(i)
                .ok_or_else(|| self.malformed(format!("choice index {i} out of range")))?;
            let table = match o.kind {
                EdgeKind::Y => &mut es.y,
                EdgeKind::X => &mut es.x,
            };
            EdgeSet::set(table, k, o.a, o.b);
        }
        Ok(es)
    }

    /// Edges present in every instantiation.
    pub(crate) fn common_edge_set(&self) -> EdgeSet {
        let k = self.k();
        let insts = self.instantiations();
        let mut sets = insts.iter().map(|i| self.edge_set(i).expect("valid instantiation"));
        let mut acc = sets.next().expect("at least one instantiation");
        for s in sets {
            for i in 0..k * k {
                acc.y[i] &= s.y[i];
                acc.x[i] &= s.x[i];
            }
        }
        acc
    }

    pub fn describe_instantiation(&self, inst: &[usize]) -> String {
        if inst.is_empty() {
            return "-".to_string();
        }
        let parts: Vec<String> = self
            .choices
            .iter()
            .zip(inst)
            .map(|(g, &i)| {
                let o = &g.options[i];
                let kind = if o.kind == EdgeKind::Y { "Y" } else { "X" };
                format!("{kind}:{}{}", self.tokens[o.a], self.tokens[o.b])
            })
            .collect();
        parts.join(",")
    }

    /// Renames tokens. Names missing from `map` are kept; the result must
    /// still have distinct names.
    pub fn relabel(&self, map: &BTreeMap<String, String>, name: &str) -> Result<GadgetCase> {
        let mut c = self.clone();
        c.name = name.to_string();
        c.tokens = self
            .tokens
            .iter()
            .map(|t| map.get(t).cloned().unwrap_or_else(|| t.clone()))
            .collect();
        c.validate()?;
        Ok(c)
    }

    /// Renders a token pair in the compact form when possible.
    pub fn pair_text(&self, (a, b): (usize, usize)) -> String {
        let (s, t) = (&self.tokens[a], &self.tokens[b]);
        if s.chars().count() == 1 && t.chars().count() == 1 {
            format!("{s}{t}")
        } else {
            format!("{s}-{t}")
        }
    }

    pub fn sequence_text(&self) -> String {
        let parts: Vec<String> = self.sequence.0.iter().map(|&p| self.pair_text(p)).collect();
        parts.join(" ")
    }
}

/// The composition of the sequence's transpositions, as the final home
/// position of each token when replayed from the identity.
pub fn sequence_product(k: usize, seq: &SwapSeq) -> Result<Vec<usize>> {
    let mut pos: Vec<usize> = (0..k).collect();
    for &(a, b) in &seq.0 {
        for t in [a, b] {
            if t >= k {
                return Err(Error::TokenOutOfRange(t, k));
            }
        }
        pos.swap(a, b);
    }
    Ok(pos)
}

fn target_perm(k: usize, (u, v): (usize, usize)) -> Vec<usize> {
    let mut t: Vec<usize> = (0..k).collect();
    t.swap(u, v);
    t
}

/// Replays the case's sequence under one instantiation.
pub fn verify_instantiation(c: &GadgetCase, inst: &[usize]) -> Result<Option<Failure>> {
    let es = c.edge_set(inst)?;
    let k = c.k();
    let mut pos: Vec<usize> = (0..k).collect();
    let fail = |step, reason| {
        Some(Failure {
            instantiation: inst.to_vec(),
            step,
            reason,
        })
    };
    for (i, &(a, b)) in c.sequence.0.iter().enumerate() {
        if !es.has_y(a, b) {
            return Ok(fail(i + 1, FailReason::MissingYEdge));
        }
        if !es.has_x(pos[a], pos[b]) {
            return Ok(fail(i + 1, FailReason::MissingXEdge));
        }
        pos.swap(a, b);
    }
    if pos != target_perm(k, c.target) {
        return Ok(fail(c.sequence.len(), FailReason::WrongFinal));
    }
    Ok(None)
}

pub fn verify_certificate(c: &GadgetCase) -> Result<Verdict> {
    c.validate()?;
    let insts = c.instantiations();
    let mut failure = None;
    for inst in &insts {
        if let Some(f) = verify_instantiation(c, inst)? {
            failure.get_or_insert(f);
        }
    }
    Ok(Verdict {
        name: c.name.clone(),
        accepted: failure.is_none(),
        instantiations_checked: insts.len(),
        failure,
    })
}

/// Verifies many cases, in parallel when the feature is on. Output
/// order follows input order.
pub fn verify_corpus(cases: &[GadgetCase]) -> Result<Vec<Verdict>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cases.par_iter().map(verify_certificate).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cases.iter().map(verify_certificate).collect()
    }
}

fn shortest_over(c: &GadgetCase, es: &EdgeSet) -> Option<SwapSeq> {
    let k = c.k();
    let start: Vec<u8> = (0..k as u8).collect();
    let target: Vec<u8> = target_perm(k, c.target).iter().map(|&t| t as u8).collect();
    // Home positions and tokens share indices, so `start` doubles as the
    // position -> token table.
    match bfs_exchange(
        &es.x_list(),
        |s, t| es.has_y(s as usize, t as usize),
        &start,
        Some(&target),
        u64::MAX,
    ) {
        crate::fs::search::Bfs::Found(steps) => Some(SwapSeq(steps)),
        _ => None,
    }
}

/// A shortest sequence exchanging the target pair under one instantiation.
pub fn shortest_exchange(c: &GadgetCase, inst: &[usize]) -> Result<Option<SwapSeq>> {
    c.validate()?;
    Ok(shortest_over(c, &c.edge_set(inst)?))
}

/// A shortest sequence using only edges present in every instantiation,
/// i.e. one that works whichever option each group takes.
pub fn shortest_robust(c: &GadgetCase) -> Result<Option<SwapSeq>> {
    c.validate()?;
    Ok(shortest_over(c, &c.common_edge_set()))
}

pub fn instantiation_table(c: &GadgetCase) -> Result<Vec<InstantiationResult>> {
    c.validate()?;
    c.instantiations()
        .into_iter()
        .map(|inst| {
            Ok(InstantiationResult {
                label: c.describe_instantiation(&inst),
                failure: verify_instantiation(c, &inst)?,
                shortest: shortest_exchange(c, &inst)?.map(|s| s.len()),
                instantiation: inst,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> GadgetCase {
        parse_gadget("name: t\ntokens: u v\nyedge: u v\nxedge: u v\ntarget: u v\nseq: uv\n", "t").unwrap()
    }

    #[test]
    fn trivial_case() {
        let c = trivial();
        let v = verify_certificate(&c).unwrap();
        assert!(v.accepted);
        assert_eq!(v.instantiations_checked, 1);
        assert_eq!(shortest_exchange(&c, &[]).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn missing_y_edge_reported_at_first_step() {
        let mut c = builtin_corpus().into_iter().find(|c| c.name == "five-token").unwrap();
        let (v, x) = (c.token_index("v").unwrap(), c.token_index("x").unwrap());
        c.y_edges.retain(|&e| e != (v, x) && e != (x, v));
        let verdict = verify_certificate(&c).unwrap();
        assert!(!verdict.accepted);
        let f = verdict.failure.unwrap();
        assert_eq!((f.step, f.reason), (1, FailReason::MissingYEdge));
    }

    #[test]
    fn wrong_final_detected() {
        let mut c = trivial();
        c.sequence = SwapSeq(vec![(0, 1), (0, 1)]);
        let f = verify_certificate(&c).unwrap().failure.unwrap();
        assert_eq!((f.step, f.reason), (2, FailReason::WrongFinal));
    }

    #[test]
    fn product_examples() {
        assert_eq!(sequence_product(3, &SwapSeq(vec![])).unwrap(), vec![0, 1, 2]);
        assert_eq!(sequence_product(3, &SwapSeq(vec![(0, 2)])).unwrap(), vec![2, 1, 0]);
        assert!(sequence_product(3, &SwapSeq(vec![(0, 3)])).is_err());
    }

    #[test]
    fn instantiations_enumerate_all() {
        let c = builtin_corpus().into_iter().find(|c| c.name == "sparse8-vx").unwrap();
        let insts = c.instantiations();
        assert_eq!(insts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(c.instantiation_count(), 4);
    }

    #[test]
    fn mirror_through_relabel() {
        let c = builtin_corpus().into_iter().find(|c| c.name == "five-token").unwrap();
        let map: BTreeMap<String, String> = [("u", "v"), ("v", "u"), ("w", "x"), ("x", "w"), ("y", "z")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let m = c.relabel(&map, "five-token-mirror").unwrap();
        assert!(verify_certificate(&m).unwrap().accepted);
        assert!(m.sequence_text().starts_with("wu zx"));
        let clash: BTreeMap<String, String> = [("u".to_string(), "v".to_string())].into();
        assert!(c.relabel(&clash, "bad").is_err());
    }
}
