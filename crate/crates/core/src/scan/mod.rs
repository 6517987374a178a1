//! Scans over pairs of edge-subgraphs of `K_{r,r}` under minimum-degree
//! conditions: exhaustive for `r <= 4`, sampled above.

mod corollary;
mod enumerate;
mod tightness;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::fs::{fs_component_count_with, Bijection, CountOptions};
use crate::{par, seed};

pub use corollary::{corollary_check, d_star, d_sym, CorollaryReport, LowerWitness, UpperCheck};
pub use enumerate::{enumerate_subgraphs, MAX_ENUM_R};
pub use tightness::{isolating_partner, pair_witness, tightness_search};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Random { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub x: BiGraph,
    pub y: BiGraph,
    pub component_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessKind {
    /// A placement admitting no friendly swap.
    Isolated { state: Bijection },
    Components { count: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: BiGraph,
    pub y: BiGraph,
    pub kind: WitnessKind,
    /// Full component count, filled in when the state space is small.
    pub verified_count: Option<u64>,
}

/// Tally for one `(δ(X), δ(Y))` stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileStat {
    pub dx: usize,
    pub dy: usize,
    pub tested: u64,
    pub hits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub r: usize,
    /// Degree-sum bound (theorem scans) or exact degree sum (tightness).
    pub condition: usize,
    pub mode: ScanMode,
    pub pairs_tested: u64,
    pub counterexamples: Vec<PairRecord>,
    pub witnesses: Vec<Witness>,
    pub profiles: Vec<ProfileStat>,
    pub seed: Option<u64>,
    /// False when a search came back empty without being exhaustive.
    pub conclusive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub r: usize,
    pub bound: usize,
    pub mode: ScanMode,
    pub seed: u64,
    pub workers: Option<usize>,
}

/// Exhaustive theorem scans refuse to build more pairs than this.
pub const MAX_EXHAUSTIVE_PAIRS: usize = 200_000;

/// `floor(3r/2) + 1`.
pub fn theorem_bound(r: usize) -> usize {
    3 * r / 2 + 1
}

/// A random edge-subgraph with minimum degree at least `d`: edges of
/// `K_{r,r}` are visited in random order and each is dropped with
/// probability `drop` when both endpoints stay at degree `>= d`.
pub fn random_min_degree<R: Rng + ?Sized>(r: usize, d: usize, drop: f64, rng: &mut R) -> Result<BiGraph> {
    let mut g = BiGraph::complete(r)?;
    let mut edges = g.edges();
    edges.shuffle(rng);
    let mut deg = vec![r; 2 * r];
    for (a, b) in edges {
        if deg[a] > d && deg[b] > d && rng.gen_bool(drop) {
            g.remove_edge(a, b)?;
            deg[a] -= 1;
            deg[b] -= 1;
        }
    }
    Ok(g)
}

fn count(x: &BiGraph, y: &BiGraph, workers: Option<usize>) -> Result<u64> {
    Ok(fs_component_count_with(x, y, &CountOptions { workers, ..Default::default() })?.component_count)
}

fn strata(r: usize, bound: usize) -> Vec<(usize, usize)> {
    (0..=r)
        .flat_map(|dx| (0..=r).map(move |dy| (dx, dy)))
        .filter(|&(dx, dy)| dx + dy >= bound)
        .collect()
}

/// Counts `FS(X, Y)` components for pairs with `δ(X) + δ(Y) >= bound`
/// and records every pair whose count is not 2.
pub fn theorem_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let r = cfg.r;
    if !(2..=5).contains(&r) {
        return Err(Error::Config(format!("theorem scans support 2 <= r <= 5 (got {r})")));
    }
    let strata = strata(r, cfg.bound);
    let mut pairs: Vec<(usize, BiGraph, BiGraph)> = Vec::new();
    match cfg.mode {
        ScanMode::Exhaustive => {
            let all = enumerate_subgraphs(r, 0)?;
            let mut by_deg = vec![Vec::new(); r + 1];
            for g in all {
                by_deg[g.min_degree()].push(g);
            }
            let total: usize = strata.iter().map(|&(dx, dy)| by_deg[dx].len() * by_deg[dy].len()).sum();
            if total > MAX_EXHAUSTIVE_PAIRS {
                return Err(Error::Enumeration(format!(
                    "{total} pairs at bound {} exceeds the exhaustive limit {MAX_EXHAUSTIVE_PAIRS}; raise the bound or use random mode",
                    cfg.bound
                )));
            }
            for (s, &(dx, dy)) in strata.iter().enumerate() {
                for x in &by_deg[dx] {
                    for y in &by_deg[dy] {
                        pairs.push((s, x.clone(), y.clone()));
                    }
                }
            }
        }
        ScanMode::Random { budget } => {
            if strata.is_empty() {
                return Err(Error::Config(format!("bound {} is unreachable at r = {r}", cfg.bound)));
            }
            for i in 0..budget {
                let mut rng = seed::rng(cfg.seed, &[i]);
                let s = rng.gen_range(0..strata.len());
                let (dx, dy) = strata[s];
                let drop = rng.gen_range(0.3..1.0);
                let x = random_min_degree(r, dx, drop, &mut rng)?;
                let y = random_min_degree(r, dy, drop, &mut rng)?;
                pairs.push((s, x, y));
            }
        }
    }
    // Parallelism goes across pairs; each count runs single-threaded.
    let counts = par::map_ordered(&pairs, cfg.workers, |(_, x, y)| count(x, y, Some(1)));
    let mut profiles: Vec<ProfileStat> = strata
        .iter()
        .map(|&(dx, dy)| ProfileStat { dx, dy, tested: 0, hits: 0 })
        .collect();
    let mut counterexamples = Vec::new();
    for ((s, x, y), c) in pairs.iter().zip(counts) {
        let c = c?;
        profiles[*s].tested += 1;
        if c != 2 {
            profiles[*s].hits += 1;
            counterexamples.push(PairRecord {
                x: x.clone(),
                y: y.clone(),
                component_count: c,
            });
        }
    }
    profiles.retain(|p| p.tested > 0);
    Ok(ScanReport {
        r,
        condition: cfg.bound,
        mode: cfg.mode,
        pairs_tested: pairs.len() as u64,
        counterexamples,
        witnesses: Vec::new(),
        profiles,
        seed: matches!(cfg.mode, ScanMode::Random { .. }).then_some(cfg.seed),
        conclusive: true,
    })
}

impl PairRecord {
    /// Recounts the pair from scratch.
    pub fn recheck(&self) -> Result<bool> {
        Ok(count(&self.x, &self.y, None)? == self.component_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r3_bound6_is_the_complete_pair() {
        let cfg = ScanConfig { r: 3, bound: 6, mode: ScanMode::Exhaustive, seed: 0, workers: None };
        let rep = theorem_scan(&cfg).unwrap();
        assert_eq!(rep.pairs_tested, 1);
        assert!(rep.counterexamples.is_empty());
    }

    #[test]
    fn r3_below_bound_finds_counterexamples() {
        let cfg = ScanConfig { r: 3, bound: 5, mode: ScanMode::Exhaustive, seed: 0, workers: None };
        let rep = theorem_scan(&cfg).unwrap();
        assert!(!rep.counterexamples.is_empty());
        assert!(rep.counterexamples.iter().take(3).all(|c| c.recheck().unwrap()));
    }

    #[test]
    fn random_min_degree_respects_floor() {
        let mut rng = seed::rng(3, &[]);
        for d in 0..=5 {
            let g = random_min_degree(5, d, 0.9, &mut rng).unwrap();
            assert!(g.min_degree() >= d);
        }
    }
}
