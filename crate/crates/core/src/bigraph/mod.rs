//! Edge-subgraphs of the complete bipartite graph `K_{r,r}`.
//!
//! Vertices are labelled `0..2r`; the first partite set is `A = 0..r` and
//! the second is `B = r..2r`. Every vertex stores a bit row over the
//! opposite side, so only cross edges are representable and adjacency is
//! symmetric by construction.

mod bridges;
mod census;
mod io;
mod sample;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bridges::{cut_edges, BridgeReport};
pub use census::StructureCensus;
pub use io::{parse_bg, read_bg};
pub use sample::{sample_gnp, sample_gnp_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    r: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Minimum degree, maximum degree and the per-vertex degree list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub min: usize,
    pub max: usize,
    pub per_vertex: Vec<usize>,
}

impl BiGraph {
    /// The edgeless graph on `2r` vertices.
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroSize);
        }
        let words = r.div_ceil(64);
        Ok(BiGraph {
            r,
            words,
            rows: vec![0; 2 * r * words],
        })
    }

    pub fn complete(r: usize) -> Result<Self> {
        let mut g = Self::new(r)?;
        for a in 0..r {
            for b in r..2 * r {
                g.set(a, b, true);
            }
        }
        Ok(g)
    }

    /// Builds a graph from `(a, b)` pairs with `a < r <= b < 2r`.
    /// Duplicate pairs collapse.
    pub fn from_edges(r: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(r)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of vertices, `2r`.
    pub fn n(&self) -> usize {
        2 * self.r
    }

    pub fn side(&self, v: usize) -> Side {
        if v < self.r {
            Side::A
        } else {
            Side::B
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a < self.r && b >= self.r && b < 2 * self.r {
            Ok(())
        } else {
            Err(Error::BadEdge(a, b, self.r, 2 * self.r))
        }
    }

    // `a` in A, `b` in B, both already validated.
    fn set(&mut self, a: usize, b: usize, on: bool) {
        let (rb, ra) = (b - self.r, a);
        let (wa, ba) = (self.words * a + rb / 64, rb % 64);
        let (wb, bb) = (self.words * b + ra / 64, ra % 64);
        if on {
            self.rows[wa] |= 1 << ba;
            self.rows[wb] |= 1 << bb;
        } else {
            self.rows[wa] &= !(1 << ba);
            self.rows[wb] &= !(1 << bb);
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.set(a, b, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.set(a, b, false);
        Ok(())
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(a, b)?;
        Ok(g)
    }

    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        let mut g = self.clone();
        g.remove_edge(a, b)?;
        Ok(g)
    }

    /// Adjacency test in either argument order. Same-side pairs and
    /// out-of-range vertices are never adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !(a < self.r && b >= self.r && b < 2 * self.r) {
            return false;
        }
        let rb = b - self.r;
        self.rows[self.words * a + rb / 64] >> (rb % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[self.words * v..self.words * (v + 1)]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbours of `v` as global vertex labels, in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let offset = if v < self.r { self.r } else { 0 };
        self.row(v).iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(offset + wi * 64 + bit)
            })
        })
    }

    /// Neighbourhood of `v` as a bitmask over global labels. Only
    /// available for `2r <= 64`.
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n() <= 64);
        let w = self.rows[self.words * v];
        if v < self.r {
            w << self.r
        } else {
            w
        }
    }

    pub fn degrees(&self) -> Degrees {
        let per_vertex: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        Degrees {
            min: per_vertex.iter().copied().min().unwrap_or(0),
            max: per_vertex.iter().copied().max().unwrap_or(0),
            per_vertex,
        }
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.r).map(|a| self.degree(a)).sum()
    }

    /// All edges as `(a, b)` with `a` in A, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.r)
            .flat_map(|a| self.neighbors(a).map(move |b| (a, b)))
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff the whole graph is a single cycle: connected and
    /// 2-regular (so there are no isolated vertices either).
    pub fn is_cycle(&self) -> bool {
        (0..self.n()).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    pub fn find_bridges(&self) -> BridgeReport {
        bridges::find_bridges(self)
    }

    /// The two-component criterion for `FS(X, K_{r,r})`, valid for `r >= 5`:
    /// connected, not a cycle, and no bridge path on `r` or more vertices.
    pub fn zhu_two_components(&self) -> Result<bool> {
        if self.r < 5 {
            return Err(Error::CriterionNeedsR5(self.r));
        }
        Ok(self.criterion_outcome() == CriterionOutcome::TwoComponents)
    }

    /// Classifies the graph by the first failing clause of the
    /// two-component criterion, checked in the order
    /// disconnected, cycle, long bridge.
    pub fn criterion_outcome(&self) -> CriterionOutcome {
        if !self.is_connected() {
            CriterionOutcome::Disconnected
        } else if self.is_cycle() {
            CriterionOutcome::Cycle
        } else if self.find_bridges().max_k >= self.r {
            CriterionOutcome::LongBridge
        } else {
            CriterionOutcome::TwoComponents
        }
    }

    pub fn census(&self) -> StructureCensus {
        census::census(self)
    }

    pub fn to_bg_string(&self) -> String {
        io::to_bg_string(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionOutcome {
    TwoComponents,
    Disconnected,
    Cycle,
    LongBridge,
}

impl fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGraph(r={}, edges={:?})", self.r, self.edges())
    }
}

impl Serialize for BiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bg_string())
    }
}

impl<'de> Deserialize<'de> for BiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_bg(&text, "<json>").map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c6() -> BiGraph {
        BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn edgeless_and_complete() {
        let g = BiGraph::new(2).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degrees().min, 0);
        let k = BiGraph::from_edges(2, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let d = k.degrees();
        assert_eq!((d.min, d.max), (2, 2));
        assert_eq!(k, BiGraph::complete(2).unwrap());
    }

    #[test]
    fn six_cycle() {
        let g = c6();
        // every vertex touches exactly two of the six listed pairs
        assert_eq!(g.degrees().per_vertex, vec![2; 6]);
        assert!(g.is_connected());
        assert!(g.is_cycle());
    }

    #[test]
    fn degrees_of_small_cases() {
        let k = BiGraph::complete(4).unwrap();
        let d = k.degrees();
        assert_eq!((d.min, d.max), (4, 4));
        let e = BiGraph::new(3).unwrap().degrees();
        assert_eq!((e.min, e.max), (0, 0));
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(matches!(
            BiGraph::from_edges(3, &[(0, 1)]),
            Err(Error::BadEdge(0, 1, 3, 6))
        ));
        assert!(BiGraph::from_edges(3, &[(3, 4)]).is_err());
        assert!(BiGraph::from_edges(3, &[(0, 6)]).is_err());
        assert!(BiGraph::from_edges(3, &[(4, 0)]).is_err());
        assert!(matches!(BiGraph::new(0), Err(Error::ZeroSize)));
    }

    #[test]
    fn duplicates_collapse() {
        let g = BiGraph::from_edges(2, &[(0, 2), (0, 2), (1, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn connectivity_cases() {
        let matching = BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!matching.is_connected());
        assert!(!matching.is_cycle());
        let k = BiGraph::complete(3).unwrap();
        assert!(k.is_connected());
        assert!(!k.is_cycle());
        // C4 is K_{2,2}
        assert!(BiGraph::complete(2).unwrap().is_cycle());
    }

    #[test]
    fn wide_rows() {
        let mut g = BiGraph::new(130).unwrap();
        g.add_edge(129, 130 + 129).unwrap();
        g.add_edge(3, 130 + 70).unwrap();
        assert!(g.has_edge(259, 129));
        assert_eq!(g.neighbors(200).collect::<Vec<_>>(), vec![3]);
        assert_eq!(g.edges(), vec![(3, 200), (129, 259)]);
    }

    #[test]
    fn masks_are_global() {
        let g = c6();
        assert_eq!(g.mask(0), (1 << 3) | (1 << 4));
        assert_eq!(g.mask(3), 1 | (1 << 2));
    }

    #[test]
    fn criterion_rejects_small_r() {
        assert_eq!(
            BiGraph::complete(4).unwrap().zhu_two_components(),
            Err(Error::CriterionNeedsR5(4))
        );
    }

    #[test]
    fn criterion_examples() {
        let k = BiGraph::complete(5).unwrap();
        assert_eq!(k.zhu_two_components(), Ok(true));
        let c10: Vec<_> = (0..5).flat_map(|i| [(i, 5 + i), ((i + 1) % 5, 5 + i)]).collect();
        let c10 = BiGraph::from_edges(5, &c10).unwrap();
        assert!(c10.is_cycle());
        assert_eq!(c10.zhu_two_components(), Ok(false));
        let m = BiGraph::from_edges(5, &(0..5).map(|i| (i, 5 + i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(m.zhu_two_components(), Ok(false));
        assert_eq!(m.criterion_outcome(), CriterionOutcome::Disconnected);
    }
}
