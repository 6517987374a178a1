//! The friends-and-strangers state space `FS(X, Y)`.
//!
//! Positions are vertices of `X`, tokens are vertices of `Y`, and a state
//! places one token on every position. A friendly swap trades the tokens
//! on two `X`-adjacent positions when those tokens are `Y`-adjacent.
//!
//! Composition convention: swapping tokens `u` and `v` maps a placement
//! `b` to `(u v) ∘ b`, i.e. the transposition acts on token labels from
//! the left. Swap sequences are written as token pairs.

mod count;
pub(crate) mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::perm;

pub use count::{
    count_by_bfs, fs_component_count, fs_component_count_with, CountOptions, FsReport, DEFAULT_DENSE_CAP,
};
pub use search::{
    component_of, count_isolated_states, exchangeable, is_isolated, ComponentExplore,
    ExchangeOutcome, IsolatedSearch, SearchOptions,
};

/// A placement of the `2r` tokens on the `2r` positions.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bijection {
    place: Vec<u8>,
    inverse: Vec<u8>,
}

impl Bijection {
    pub fn identity(n: usize) -> Self {
        let place: Vec<u8> = (0..n as u8).collect();
        Bijection {
            inverse: place.clone(),
            place,
        }
    }

    /// `place[position] = token`.
    pub fn from_place(place: &[usize]) -> Result<Self> {
        let n = place.len();
        if n > 32 {
            return Err(Error::TooManyVertices { n, max: 32 });
        }
        let mut inverse = vec![u8::MAX; n];
        for (pos, &tok) in place.iter().enumerate() {
            if tok >= n || inverse[tok] != u8::MAX {
                return Err(Error::NotPermutation(n));
            }
            inverse[tok] = pos as u8;
        }
        Ok(Bijection {
            place: place.iter().map(|&t| t as u8).collect(),
            inverse,
        })
    }

    pub(crate) fn from_place_u8(place: Vec<u8>) -> Self {
        let mut inverse = vec![0u8; place.len()];
        for (pos, &tok) in place.iter().enumerate() {
            inverse[tok as usize] = pos as u8;
        }
        Bijection { place, inverse }
    }

    pub fn n(&self) -> usize {
        self.place.len()
    }

    pub fn place(&self) -> &[u8] {
        &self.place
    }

    pub fn inverse(&self) -> &[u8] {
        &self.inverse
    }

    pub fn token_at(&self, position: usize) -> usize {
        self.place[position] as usize
    }

    pub fn position_of(&self, token: usize) -> usize {
        self.inverse[token] as usize
    }

    /// Lehmer rank of the placement array.
    pub fn rank(&self) -> u64 {
        perm::rank(&self.place)
    }

    fn check_token(&self, t: usize) -> Result<()> {
        if t < self.n() {
            Ok(())
        } else {
            Err(Error::TokenOutOfRange(t, self.n()))
        }
    }

    /// `(u v) ∘ self`: tokens `u` and `v` trade positions.
    pub fn apply_swap(&self, u: usize, v: usize) -> Result<Bijection> {
        let mut b = self.clone();
        b.swap_tokens(u, v)?;
        Ok(b)
    }

    pub fn swap_tokens(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_token(u)?;
        self.check_token(v)?;
        if u == v {
            return Err(Error::SameToken(u));
        }
        let (pu, pv) = (self.inverse[u] as usize, self.inverse[v] as usize);
        self.place.swap(pu, pv);
        self.inverse.swap(u, v);
        Ok(())
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bijection{:?}", self.place)
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.place.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Bijection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let place = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Config(format!("bad token `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Bijection::from_place(&place)
    }
}

fn check_pair(x: &BiGraph, y: &BiGraph) -> Result<()> {
    if x.r() != y.r() {
        return Err(Error::SizeMismatch(x.r(), y.r()));
    }
    Ok(())
}

/// Whether swapping tokens `u` and `v` is an `(X, Y)`-friendly swap from `b`.
pub fn swap_legal(x: &BiGraph, y: &BiGraph, b: &Bijection, u: usize, v: usize) -> Result<bool> {
    check_pair(x, y)?;
    b.check_token(u)?;
    b.check_token(v)?;
    if b.n() != x.n() {
        return Err(Error::SizeMismatch(x.n(), b.n()));
    }
    Ok(u != v && y.has_edge(u, v) && x.has_edge(b.position_of(u), b.position_of(v)))
}

/// The parity class of a placement: inversion parity of the placement
/// array plus the number of A-side positions holding A-side tokens,
/// mod 2. Every friendly swap between bipartite graphs flips both
/// summands, so the class is constant on components.
pub fn parity_class(r: usize, b: &Bijection) -> u8 {
    let a_on_a = b.place[..r].iter().filter(|&&t| (t as usize) < r).count() as u8;
    (perm::inversion_parity(&b.place) + a_on_a) & 1
}

/// An ordered list of token swaps, written `"0-5 2-7"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSeq(pub Vec<(usize, usize)>);

impl SwapSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> SwapSeq {
        SwapSeq(self.0.iter().rev().copied().collect())
    }

    /// Replays the sequence from `b`, checking every step is friendly.
    pub fn replay(&self, x: &BiGraph, y: &BiGraph, b: &Bijection) -> Result<Option<Bijection>> {
        let mut cur = b.clone();
        for &(u, v) in &self.0 {
            if !swap_legal(x, y, &cur, u, v)? {
                return Ok(None);
            }
            cur.swap_tokens(u, v)?;
        }
        Ok(Some(cur))
    }
}

impl fmt::Display for SwapSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SwapSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for item in s.split_whitespace() {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::Config(format!("bad swap `{item}`, expected u-v")))?;
            let p = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad token `{t}`")))
            };
            out.push((p(a)?, p(b)?));
        }
        Ok(SwapSeq(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> BiGraph {
        BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn legal_swaps_on_k22() {
        let k = BiGraph::complete(2).unwrap();
        let id = Bijection::identity(4);
        assert!(swap_legal(&k, &k, &id, 0, 2).unwrap());
        assert!(!swap_legal(&k, &k, &id, 0, 1).unwrap());
        assert!(matches!(
            swap_legal(&k, &k, &id, 0, 9),
            Err(Error::TokenOutOfRange(9, 4))
        ));
    }

    #[test]
    fn legal_swap_on_six_cycle_positions() {
        let k = BiGraph::complete(3).unwrap();
        // positions 0 and 4 are adjacent in C6, tokens 0 and 4 adjacent in K33
        assert!(swap_legal(&c6(), &k, &Bijection::identity(6), 0, 4).unwrap());
        // positions 0 and 5 are not adjacent in C6
        assert!(!swap_legal(&c6(), &k, &Bijection::identity(6), 0, 5).unwrap());
    }

    #[test]
    fn apply_swap_is_an_involution() {
        let id = Bijection::identity(4);
        let t = id.apply_swap(0, 2).unwrap();
        assert_eq!(t.place(), &[2, 1, 0, 3]);
        assert_eq!(t.apply_swap(0, 2).unwrap(), id);
        assert_eq!(id.apply_swap(1, 1), Err(Error::SameToken(1)));
    }

    #[test]
    fn parity_of_identity_and_same_side_transposition() {
        let id = Bijection::identity(4);
        assert_eq!(parity_class(2, &id), 0);
        // tokens 0 and 1 are both in A: not a friendly swap in bipartite Y
        assert_eq!(parity_class(2, &id.apply_swap(0, 1).unwrap()), 1);
        // tokens 0 and 2 lie on opposite sides
        assert_eq!(parity_class(2, &id.apply_swap(0, 2).unwrap()), 0);
    }

    #[test]
    fn bijection_parsing() {
        let b: Bijection = "1 0 2 3".parse().unwrap();
        assert_eq!(b.position_of(1), 0);
        assert!("0 0 1".parse::<Bijection>().is_err());
        assert!("0 3".parse::<Bijection>().is_err());
    }

    #[test]
    fn swap_seq_text() {
        let s: SwapSeq = "0-5 2-7".parse().unwrap();
        assert_eq!(s.0, vec![(0, 5), (2, 7)]);
        assert_eq!(s.to_string(), "0-5 2-7");
        assert!("05".parse::<SwapSeq>().is_err());
    }
}
