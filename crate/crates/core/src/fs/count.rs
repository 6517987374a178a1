use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{check_pair, parity_class, Bijection};
use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::perm;
use crate::unionfind::{AtomicUnionFind, UnionFind};

/// Default ceiling on `2r` for dense counting (10! states).
pub const DEFAULT_DENSE_CAP: usize = 10;
/// Hard ceiling: union-find indices are `u32`.
const HARD_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub cap: usize,
    /// `None` uses the ambient thread pool, `Some(1)` runs single-threaded.
    pub workers: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            cap: DEFAULT_DENSE_CAP,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FsReport {
    pub r: usize,
    pub component_count: u64,
    /// Component sizes, ascending.
    pub component_sizes: Vec<u64>,
    /// size -> number of components of that size
    pub size_histogram: BTreeMap<u64, u64>,
    /// States in parity class 0 and class 1.
    pub parity_split: (u64, u64),
    pub states_explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// `None` where the target has no clock (wasm32-unknown-unknown).
fn clock() -> Option<Instant> {
    if cfg!(all(target_arch = "wasm32", target_os = "unknown")) {
        None
    } else {
        Some(Instant::now())
    }
}

impl FsReport {
    fn build(r: usize, sizes_with_class: Vec<(u64, u8)>, states: u64, started: Option<Instant>) -> Self {
        let mut sizes: Vec<u64> = sizes_with_class.iter().map(|&(s, _)| s).collect();
        sizes.sort_unstable();
        let mut hist = BTreeMap::new();
        for &s in &sizes {
            *hist.entry(s).or_insert(0) += 1;
        }
        let mut split = (0, 0);
        for &(s, c) in &sizes_with_class {
            if c == 0 {
                split.0 += s;
            } else {
                split.1 += s;
            }
        }
        FsReport {
            r,
            component_count: sizes.len() as u64,
            component_sizes: sizes,
            size_histogram: hist,
            parity_split: split,
            states_explored: states,
            elapsed_ms: started.map(|t| t.elapsed().as_secs_f64() * 1e3),
        }
    }

    /// The report without wall-clock data, for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

pub fn fs_component_count(x: &BiGraph, y: &BiGraph) -> Result<FsReport> {
    fs_component_count_with(x, y, &CountOptions::default())
}

struct Sweep {
    n: usize,
    x_edges: Vec<(usize, usize)>,
    y_mask: Vec<u32>,
}

impl Sweep {
    fn new(x: &BiGraph, y: &BiGraph) -> Self {
        Sweep {
            n: x.n(),
            x_edges: x.edges(),
            y_mask: (0..y.n()).map(|t| y.mask(t) as u32).collect(),
        }
    }

    // Calls `f(j)` with the rank of every state one friendly swap away
    // from `perm` whose rank exceeds `rank`.
    #[inline]
    fn for_each_higher(&self, perm: &mut [u8], rank: u64, mut f: impl FnMut(u64)) {
        for &(a, b) in &self.x_edges {
            let (ta, tb) = (perm[a], perm[b]);
            if self.y_mask[ta as usize] >> tb & 1 == 1 {
                perm.swap(a, b);
                let j = perm::rank(perm);
                perm.swap(a, b);
                if j > rank {
                    f(j);
                }
            }
        }
    }
}

fn check_dense(x: &BiGraph, y: &BiGraph, cap: usize) -> Result<u64> {
    check_pair(x, y)?;
    let n = x.n();
    if n > cap.min(HARD_CAP) {
        let states = (1..=n as u128).product::<u128>();
        return Err(Error::StateSpaceTooLarge {
            n,
            cap: cap.min(HARD_CAP),
            states,
            mib: states * 8 / (1 << 20),
        });
    }
    Ok(perm::factorial(n))
}

/// Exact component structure of `FS(x, y)` by union-find over all
/// `(2r)!` Lehmer-ranked placements.
pub fn fs_component_count_with(x: &BiGraph, y: &BiGraph, opts: &CountOptions) -> Result<FsReport> {
    let total = check_dense(x, y, opts.cap)?;
    let started = clock();
    let sweep = Sweep::new(x, y);
    let n = sweep.n;
    let r = x.r();

    let class_of = |root: u64| {
        let mut p = vec![0u8; n];
        perm::unrank(root, &mut p);
        parity_class(r, &Bijection::from_place_u8(p))
    };

    let parallel = cfg!(feature = "parallel") && opts.workers != Some(1) && total > 5040;
    let sets: Vec<(u64, u8)> = if parallel {
        let uf = AtomicUnionFind::new(total as usize);
        run_parallel(&sweep, total, &uf, opts.workers);
        uf.sets()
            .into_iter()
            .map(|(root, size)| (size, class_of(root as u64)))
            .collect()
    } else {
        let mut uf = UnionFind::new(total as usize);
        let mut p: Vec<u8> = (0..n as u8).collect();
        for i in 0..total {
            sweep.for_each_higher(&mut p, i, |j| {
                uf.union(i as u32, j as u32);
            });
            perm::next_permutation(&mut p);
        }
        let roots = uf.roots();
        let mut out = Vec::with_capacity(roots.len());
        // size lives at the root in the sequential forest
        let sizes = {
            let mut counts = vec![0u64; total as usize];
            for i in 0..total as u32 {
                counts[uf.find(i) as usize] += 1;
            }
            counts
        };
        for root in roots {
            out.push((sizes[root as usize], class_of(root as u64)));
        }
        out
    };
    Ok(FsReport::build(r, sets, total, started))
}

#[cfg(feature = "parallel")]
fn run_parallel(sweep: &Sweep, total: u64, uf: &AtomicUnionFind, workers: Option<usize>) {
    use rayon::prelude::*;

    let chunk = (total / 256).max(1);
    let chunks = total.div_ceil(chunk);
    let body = || {
        (0..chunks).into_par_iter().for_each(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(total);
            let mut p = vec![0u8; sweep.n];
            perm::unrank(start, &mut p);
            for i in start..end {
                sweep.for_each_higher(&mut p, i, |j| uf.union(i as u32, j as u32));
                perm::next_permutation(&mut p);
            }
        })
    };
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(body),
        None => body(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(_: &Sweep, _: u64, _: &AtomicUnionFind, _: Option<usize>) {
    unreachable!("parallel counting needs the `parallel` feature")
}

/// Independent route to the same report: repeated breadth-first search
/// over placements, with a rank-indexed visited table. Used as an
/// oracle for the union-find sweep.
pub fn count_by_bfs(x: &BiGraph, y: &BiGraph, cap: usize) -> Result<FsReport> {
    let total = check_dense(x, y, cap)?;
    let started = clock();
    let n = x.n();
    let r = x.r();
    let x_edges = x.edges();
    let mut seen = vec![false; total as usize];
    let mut sets = Vec::new();
    let mut queue = VecDeque::new();
    let mut p = vec![0u8; n];
    for s in 0..total {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        queue.push_back(s);
        let mut size = 0u64;
        let mut class = None;
        while let Some(st) = queue.pop_front() {
            size += 1;
            perm::unrank(st, &mut p);
            if class.is_none() {
                class = Some(parity_class(r, &Bijection::from_place_u8(p.clone())));
            }
            for &(a, b) in &x_edges {
                if y.has_edge(p[a] as usize, p[b] as usize) {
                    p.swap(a, b);
                    let j = perm::rank(&p);
                    p.swap(a, b);
                    if !seen[j as usize] {
                        seen[j as usize] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        sets.push((size, class.unwrap_or(0)));
    }
    Ok(FsReport::build(r, sets, total, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> BiGraph {
        BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn complete_bipartite_has_two_components() {
        for r in 2..=3 {
            let k = BiGraph::complete(r).unwrap();
            let rep = fs_component_count(&k, &k).unwrap();
            assert_eq!(rep.component_count, 2);
            let half = perm::factorial(2 * r) / 2;
            assert_eq!(rep.parity_split, (half, half));
        }
    }

    #[test]
    fn twelve_components_for_six_cycle() {
        let k = BiGraph::complete(3).unwrap();
        assert_eq!(fs_component_count(&k, &c6()).unwrap().component_count, 12);
    }

    #[test]
    fn edgeless_gives_singletons() {
        let e = BiGraph::new(2).unwrap();
        let k = BiGraph::complete(2).unwrap();
        let rep = fs_component_count(&e, &k).unwrap();
        assert_eq!(rep.component_count, 24);
        assert_eq!(rep.size_histogram.get(&1), Some(&24));
    }

    #[test]
    fn refuses_above_cap() {
        let k = BiGraph::complete(6).unwrap();
        let err = fs_component_count(&k, &k).unwrap_err();
        assert!(matches!(err, Error::StateSpaceTooLarge { n: 12, .. }));
        assert!(err.to_string().contains("MiB"));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let k = BiGraph::complete(4).unwrap();
        let x = k.without_edge(0, 4).unwrap().without_edge(1, 5).unwrap();
        let seq = fs_component_count_with(&x, &c6_like4(), &CountOptions { workers: Some(1), ..Default::default() })
            .unwrap()
            .without_timing();
        for w in [2, 3, 8] {
            let par = fs_component_count_with(&x, &c6_like4(), &CountOptions { workers: Some(w), ..Default::default() })
                .unwrap()
                .without_timing();
            assert_eq!(seq, par);
        }
        let bfs = count_by_bfs(&x, &c6_like4(), 10).unwrap().without_timing();
        assert_eq!(seq, bfs);
    }

    fn c6_like4() -> BiGraph {
        // 8-cycle on K_{4,4}
        let e: Vec<_> = (0..4).flat_map(|i| [(i, 4 + i), ((i + 1) % 4, 4 + i)]).collect();
        BiGraph::from_edges(4, &e).unwrap()
    }
}
