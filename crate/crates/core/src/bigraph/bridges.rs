use serde::{Deserialize, Serialize};

use super::BiGraph;

/// Maximal bridge paths of a graph.
///
/// A path `v1..vk` qualifies when every edge on it is a cut edge, the
/// interior vertices have degree exactly 2, and neither endpoint has
/// degree 1. `max_k` is the vertex count of the longest one (0 if none).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub bridges: Vec<Vec<usize>>,
    pub max_k: usize,
}

/// Cut edges as `(a, b)` with `a` in A, sorted. Iterative lowlink DFS.
pub fn cut_edges(g: &BiGraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub(super) fn find_bridges(g: &BiGraph) -> BridgeReport {
    let n = g.n();
    let cuts = cut_edges(g);
    let mut cut_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &cuts {
        cut_adj[a].push(b);
        cut_adj[b].push(a);
    }
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let through = |v: usize| degree[v] == 2 && cut_adj[v].len() == 2;

    let mut used = std::collections::HashSet::new();
    let mut bridges = Vec::new();
    for &(a, b) in &cuts {
        if used.contains(&(a, b)) {
            continue;
        }
        // Walk away from the edge in both directions through
        // degree-2 vertices whose two edges are both cut edges.
        let mut left = walk(a, b, &cut_adj, &through);
        let right = walk(b, a, &cut_adj, &through);
        left.reverse();
        let mut chain = left;
        chain.extend(right);
        for w in chain.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        if degree[chain[0]] == 1 {
            chain.remove(0);
        }
        if chain.last().is_some_and(|&v| degree[v] == 1) {
            chain.pop();
        }
        if chain.len() >= 2 {
            if chain[0] > chain[chain.len() - 1] {
                chain.reverse();
            }
            bridges.push(chain);
        }
    }
    bridges.sort();
    let max_k = bridges.iter().map(Vec::len).max().unwrap_or(0);
    BridgeReport { bridges, max_k }
}

// Vertices from `start` outward, away from `from`, ending at the first
// vertex that cannot pass the chain through.
fn walk(
    start: usize,
    from: usize,
    cut_adj: &[Vec<usize>],
    through: &impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    while through(cur) {
        let next = if cut_adj[cur][0] == prev {
            cut_adj[cur][1]
        } else {
            cut_adj[cur][0]
        };
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(r: usize) -> BiGraph {
        // a0 b0 a1 b1 ... spanning path on 2r vertices
        let mut e = Vec::new();
        for i in 0..r {
            e.push((i, r + i));
            if i + 1 < r {
                e.push((i + 1, r + i));
            }
        }
        BiGraph::from_edges(r, &e).unwrap()
    }

    #[test]
    fn cycle_has_no_bridges() {
        let c10: Vec<_> = (0..5).flat_map(|i| [(i, 5 + i), ((i + 1) % 5, 5 + i)]).collect();
        let g = BiGraph::from_edges(5, &c10).unwrap();
        assert!(cut_edges(&g).is_empty());
        let rep = g.find_bridges();
        assert!(rep.bridges.is_empty());
        assert_eq!(rep.max_k, 0);
    }

    #[test]
    fn four_bridge_between_two_squares() {
        let g = BiGraph::from_edges(
            5,
            &[
                (0, 5),
                (0, 6),
                (1, 5),
                (1, 6),
                (3, 8),
                (3, 9),
                (4, 8),
                (4, 9),
                (2, 6),
                (2, 7),
                (3, 7),
            ],
        )
        .unwrap();
        let rep = g.find_bridges();
        assert_eq!(rep.bridges, vec![vec![3, 7, 2, 6]]);
        assert_eq!(rep.max_k, 4);
    }

    #[test]
    fn spanning_path_trims_leaves_only() {
        // The two leaves are dropped; what remains meets the definition.
        let g = path_graph(5);
        assert_eq!(cut_edges(&g).len(), 9);
        let rep = g.find_bridges();
        assert_eq!(rep.bridges.len(), 1);
        assert_eq!(rep.max_k, 8);
        assert!(rep.bridges[0].iter().all(|&v| g.degree(v) == 2));
    }

    #[test]
    fn single_edge_component_is_not_a_bridge() {
        let g = BiGraph::from_edges(2, &[(0, 2)]).unwrap();
        assert_eq!(g.find_bridges().max_k, 0);
    }

    #[test]
    fn pendant_edge_at_hub() {
        // K_{2,2} on {0,1}x{3,4} with a leaf 5 hanging off vertex 0
        let g = BiGraph::from_edges(3, &[(0, 3), (0, 4), (1, 3), (1, 4), (0, 5)]).unwrap();
        assert_eq!(cut_edges(&g), vec![(0, 5)]);
        assert_eq!(g.find_bridges().max_k, 0);
    }
}
