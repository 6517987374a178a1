use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{check_pair, parity_class, Bijection, SwapSeq};
use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::perm;
use crate::seed;

/// Largest `2r` a packed search state can hold (5 bits per position).
pub const MAX_SEARCH_N: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Maximum number of distinct states a search may visit.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExchangeOutcome {
    /// A shortest witness sequence of token swaps.
    Exchangeable { witness: SwapSeq },
    /// The whole component was explored without meeting the target.
    NotExchangeable { explored: u64 },
    /// The budget ran out first.
    Inconclusive { explored: u64 },
}

impl ExchangeOutcome {
    pub fn is_exchangeable(&self) -> bool {
        matches!(self, ExchangeOutcome::Exchangeable { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentExplore {
    pub size: u64,
    /// False when the budget stopped the search; `size` is then a lower bound.
    pub complete: bool,
    pub parity_class: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedSearch {
    pub found: bool,
    pub witness: Option<Bijection>,
    pub examined: u64,
    pub exhaustive: bool,
    /// Total number of isolated states, known only for exhaustive runs.
    pub isolated_count: Option<u64>,
}

fn pack(p: &[u8]) -> u128 {
    p.iter().rev().fold(0u128, |acc, &t| acc << 5 | t as u128)
}

fn unpack(mut s: u128, out: &mut [u8]) {
    for slot in out.iter_mut() {
        *slot = (s & 31) as u8;
        s >>= 5;
    }
}

pub(crate) enum Bfs {
    Found(Vec<(usize, usize)>),
    Exhausted(u64),
    Budget(u64),
}

/// Breadth-first search from `start` towards `target` over placements of
/// `n` tokens, where positions `a, b` may trade tokens `s, t` when
/// `(a, b)` is in `x_edges` and `friends(s, t)` holds. On success returns
/// the swapped token pairs, shortest first.
pub(crate) fn bfs_exchange(
    x_edges: &[(usize, usize)],
    friends: impl Fn(u8, u8) -> bool,
    start: &[u8],
    target: Option<&[u8]>,
    budget: u64,
) -> Bfs {
    let n = start.len();
    debug_assert!(n <= MAX_SEARCH_N);
    let s0 = pack(start);
    let goal = target.map(pack);
    if goal == Some(s0) {
        return Bfs::Found(Vec::new());
    }
    // state -> (parent, swapped positions)
    let mut parent: HashMap<u128, (u128, u8, u8)> = HashMap::new();
    parent.insert(s0, (s0, 0, 0));
    let mut queue = VecDeque::from([s0]);
    let mut cur = vec![0u8; n];
    while let Some(s) = queue.pop_front() {
        unpack(s, &mut cur);
        for &(a, b) in x_edges {
            if !friends(cur[a], cur[b]) {
                continue;
            }
            cur.swap(a, b);
            let t = pack(&cur);
            cur.swap(a, b);
            if let Entry::Vacant(e) = parent.entry(t) {
                e.insert((s, a as u8, b as u8));
                if Some(t) == goal {
                    return Bfs::Found(walk_back(&parent, s0, t, n));
                }
                if parent.len() as u64 >= budget {
                    return Bfs::Budget(parent.len() as u64);
                }
                queue.push_back(t);
            }
        }
    }
    Bfs::Exhausted(parent.len() as u64)
}

fn walk_back(
    parent: &HashMap<u128, (u128, u8, u8)>,
    s0: u128,
    mut t: u128,
    n: usize,
) -> Vec<(usize, usize)> {
    let mut steps = Vec::new();
    let mut p = vec![0u8; n];
    while t != s0 {
        let (prev, a, b) = parent[&t];
        unpack(prev, &mut p);
        let (u, v) = (p[a as usize] as usize, p[b as usize] as usize);
        steps.push((u.min(v), u.max(v)));
        t = prev;
    }
    steps.reverse();
    steps
}

fn check_search(x: &BiGraph, y: &BiGraph, b: &Bijection) -> Result<()> {
    check_pair(x, y)?;
    if b.n() != x.n() {
        return Err(Error::SizeMismatch(x.n(), b.n()));
    }
    if x.n() > MAX_SEARCH_N {
        return Err(Error::TooManyVertices {
            n: x.n(),
            max: MAX_SEARCH_N,
        });
    }
    Ok(())
}

/// Whether `b` and `(u v) ∘ b` lie in the same component of `FS(x, y)`.
pub fn exchangeable(
    x: &BiGraph,
    y: &BiGraph,
    b: &Bijection,
    u: usize,
    v: usize,
    opts: &SearchOptions,
) -> Result<ExchangeOutcome> {
    check_search(x, y, b)?;
    let target = b.apply_swap(u, v)?;
    let out = bfs_exchange(
        &x.edges(),
        |s, t| y.has_edge(s as usize, t as usize),
        b.place(),
        Some(target.place()),
        opts.budget,
    );
    Ok(match out {
        Bfs::Found(w) => ExchangeOutcome::Exchangeable { witness: SwapSeq(w) },
        Bfs::Exhausted(explored) => ExchangeOutcome::NotExchangeable { explored },
        Bfs::Budget(explored) => ExchangeOutcome::Inconclusive { explored },
    })
}

/// Size of the component of `b` in `FS(x, y)`.
pub fn component_of(
    x: &BiGraph,
    y: &BiGraph,
    b: &Bijection,
    opts: &SearchOptions,
) -> Result<ComponentExplore> {
    check_search(x, y, b)?;
    let out = bfs_exchange(
        &x.edges(),
        |s, t| y.has_edge(s as usize, t as usize),
        b.place(),
        None,
        opts.budget,
    );
    let (size, complete) = match out {
        Bfs::Exhausted(n) => (n, true),
        Bfs::Budget(n) => (n, false),
        Bfs::Found(_) => unreachable!("no target"),
    };
    Ok(ComponentExplore {
        size,
        complete,
        parity_class: parity_class(x.r(), b),
    })
}

fn isolated_place(x_edges: &[(usize, usize)], y: &BiGraph, place: &[u8]) -> bool {
    x_edges
        .iter()
        .all(|&(a, b)| !y.has_edge(place[a] as usize, place[b] as usize))
}

/// True when no friendly swap is available from `b`.
pub fn is_isolated(x: &BiGraph, y: &BiGraph, b: &Bijection) -> Result<bool> {
    check_pair(x, y)?;
    if b.n() != x.n() {
        return Err(Error::SizeMismatch(x.n(), b.n()));
    }
    Ok(isolated_place(&x.edges(), y, b.place()))
}

/// Looks for a placement with no friendly swap. Every placement is
/// examined when `2r <= cap`; above that, `budget` uniformly random
/// placements drawn from `seed` are tried.
pub fn count_isolated_states(
    x: &BiGraph,
    y: &BiGraph,
    budget: u64,
    seed: u64,
    cap: usize,
) -> Result<IsolatedSearch> {
    check_pair(x, y)?;
    let n = x.n();
    let edges = x.edges();
    if n <= cap.min(perm::MAX_N) {
        let mut p: Vec<u8> = (0..n as u8).collect();
        let mut count = 0u64;
        let mut witness = None;
        let total = perm::factorial(n);
        for _ in 0..total {
            if isolated_place(&edges, y, &p) {
                count += 1;
                if witness.is_none() {
                    witness = Some(Bijection::from_place_u8(p.clone()));
                }
            }
            perm::next_permutation(&mut p);
        }
        return Ok(IsolatedSearch {
            found: count > 0,
            witness,
            examined: total,
            exhaustive: true,
            isolated_count: Some(count),
        });
    }
    let mut rng = seed::rng(seed, &[n as u64]);
    let mut p: Vec<u8> = (0..n as u8).collect();
    for i in 0..budget {
        p.shuffle(&mut rng);
        if isolated_place(&edges, y, &p) {
            return Ok(IsolatedSearch {
                found: true,
                witness: Some(Bijection::from_place_u8(p)),
                examined: i + 1,
                exhaustive: false,
                isolated_count: None,
            });
        }
    }
    Ok(IsolatedSearch {
        found: false,
        witness: None,
        examined: budget,
        exhaustive: false,
        isolated_count: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> BiGraph {
        BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn pack_round_trip() {
        let p = [7u8, 0, 24, 3, 11];
        let mut q = [0u8; 5];
        unpack(pack(&p), &mut q);
        assert_eq!(p, q);
    }

    #[test]
    fn adjacent_pair_has_one_swap_witness() {
        let k = BiGraph::complete(3).unwrap();
        let out = exchangeable(&k, &k, &Bijection::identity(6), 0, 4, &SearchOptions::default()).unwrap();
        assert_eq!(out, ExchangeOutcome::Exchangeable { witness: SwapSeq(vec![(0, 4)]) });
    }

    #[test]
    fn edgeless_y_exchanges_nothing() {
        let k = BiGraph::complete(2).unwrap();
        let e = BiGraph::new(2).unwrap();
        for u in 0..4 {
            for v in u + 1..4 {
                let out = exchangeable(&k, &e, &Bijection::identity(4), u, v, &SearchOptions::default()).unwrap();
                assert_eq!(out, ExchangeOutcome::NotExchangeable { explored: 1 });
            }
        }
    }

    #[test]
    fn witness_replays() {
        let k = BiGraph::complete(3).unwrap();
        let id = Bijection::identity(6);
        // tokens 0 and 3 sit on C6-adjacent positions but need a detour
        let out = exchangeable(&c6(), &k, &id, 0, 3, &SearchOptions::default()).unwrap();
        if let ExchangeOutcome::Exchangeable { witness } = out {
            let end = witness.replay(&c6(), &k, &id).unwrap().unwrap();
            assert_eq!(end, id.apply_swap(0, 3).unwrap());
        }
    }

    #[test]
    fn budget_is_inconclusive() {
        let k = BiGraph::complete(3).unwrap();
        let out = exchangeable(&k, &k, &Bijection::identity(6), 0, 1, &SearchOptions { budget: 10 }).unwrap();
        assert!(matches!(out, ExchangeOutcome::Inconclusive { .. }));
    }

    #[test]
    fn component_of_complete_is_half() {
        let k = BiGraph::complete(3).unwrap();
        let c = component_of(&k, &k, &Bijection::identity(6), &SearchOptions::default()).unwrap();
        assert_eq!((c.size, c.complete), (360, true));
    }

    #[test]
    fn isolated_states() {
        let k = BiGraph::complete(2).unwrap();
        let e = BiGraph::new(2).unwrap();
        let none = count_isolated_states(&k, &k, 100, 1, 10).unwrap();
        assert!(!none.found);
        assert_eq!(none.isolated_count, Some(0));
        let all = count_isolated_states(&e, &k, 100, 1, 10).unwrap();
        assert_eq!(all.isolated_count, Some(24));
        let sampled = count_isolated_states(&BiGraph::new(6).unwrap(), &BiGraph::complete(6).unwrap(), 5, 1, 10).unwrap();
        assert!(sampled.found && !sampled.exhaustive);
        assert_eq!(sampled.examined, 1);
    }
}
