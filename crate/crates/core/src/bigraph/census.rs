use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::BiGraph;

/// Structure classes used in the random-graph argument.
///
/// * `in_c1`: some path on `r` vertices has all of its interior vertices
///   of degree 2 in the graph.
/// * `in_c2` / `in_c3`: some component is a path / tree on between
///   `r - 2` and `2r - 2` vertices.
///
/// Isolated vertices count as one-vertex paths and trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCensus {
    pub in_c1: bool,
    pub in_c2: bool,
    pub in_c3: bool,
    pub longest_degree2_path: usize,
    pub largest_path_component: usize,
    pub largest_tree_component: usize,
    pub component_sizes: Vec<usize>,
    pub isolated_count: usize,
    pub tree_component_counts: BTreeMap<usize, usize>,
}

pub(super) fn census(g: &BiGraph) -> StructureCensus {
    let r = g.r();
    let degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();

    let mut sizes = Vec::new();
    let mut largest_path = 0;
    let mut largest_tree = 0;
    let mut trees = BTreeMap::new();
    let window = r.saturating_sub(2)..=2 * r - 2;
    let (mut in_c2, mut in_c3) = (false, false);
    for comp in g.components() {
        let k = comp.len();
        let edges: usize = comp.iter().map(|&v| degree[v]).sum::<usize>() / 2;
        sizes.push(k);
        if edges + 1 == k {
            *trees.entry(k).or_insert(0) += 1;
            largest_tree = largest_tree.max(k);
            in_c3 |= window.contains(&k);
            if comp.iter().all(|&v| degree[v] <= 2) {
                largest_path = largest_path.max(k);
                in_c2 |= window.contains(&k);
            }
        }
    }
    sizes.sort_unstable();

    let longest = longest_degree2_path(g, &degree);
    StructureCensus {
        in_c1: longest >= r,
        in_c2,
        in_c3,
        longest_degree2_path: longest,
        largest_path_component: largest_path,
        largest_tree_component: largest_tree,
        component_sizes: sizes,
        isolated_count: degree.iter().filter(|&&d| d == 0).count(),
        tree_component_counts: trees,
    }
}

// Vertex count of the longest path whose interior vertices all have
// degree 2: a maximal run of degree-2 vertices plus its outside ends,
// or a whole cycle made of degree-2 vertices.
fn longest_degree2_path(g: &BiGraph, degree: &[usize]) -> usize {
    let n = g.n();
    let mut best = if degree.iter().any(|&d| d > 0) { 2 } else { 1 };
    let mut seen = vec![false; n];
    for s in 0..n {
        if degree[s] != 2 || seen[s] {
            continue;
        }
        // collect the run of degree-2 vertices containing s
        let mut run = vec![s];
        seen[s] = true;
        let mut ends = Vec::new();
        let mut i = 0;
        while i < run.len() {
            let v = run[i];
            for w in g.neighbors(v) {
                if degree[w] == 2 {
                    if !seen[w] {
                        seen[w] = true;
                        run.push(w);
                    }
                } else {
                    ends.push(w);
                }
            }
            i += 1;
        }
        ends.sort_unstable();
        ends.dedup();
        best = best.max(run.len() + ends.len());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_path_is_in_c1() {
        let mut e = Vec::new();
        for i in 0..4 {
            e.push((i, 4 + i));
            if i + 1 < 4 {
                e.push((i + 1, 4 + i));
            }
        }
        let c = BiGraph::from_edges(4, &e).unwrap().census();
        assert!(c.in_c1);
        assert_eq!(c.largest_path_component, 8);
        assert_eq!(c.longest_degree2_path, 8);
    }

    #[test]
    fn complete_graph_census() {
        let c = BiGraph::complete(3).unwrap().census();
        assert!(!c.in_c1);
        assert_eq!(c.largest_path_component, 0);
        assert_eq!(c.largest_tree_component, 0);
        assert_eq!(c.isolated_count, 0);
        assert_eq!(c.component_sizes, vec![6]);
    }

    #[test]
    fn path_plus_square() {
        // path 0-4-1-5 and K_{2,2} on {2,3}x{6,7}
        let g = BiGraph::from_edges(4, &[(0, 4), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)])
            .unwrap();
        let c = g.census();
        assert_eq!(c.largest_path_component, 4);
        assert_eq!(c.largest_tree_component, 4);
        assert_eq!(c.component_sizes, vec![4, 4]);
        assert_eq!(c.tree_component_counts.get(&4), Some(&1));
    }

    #[test]
    fn isolated_vertices_counted() {
        let g = BiGraph::from_edges(3, &[(0, 3)]).unwrap();
        let c = g.census();
        assert_eq!(c.isolated_count, 4);
        assert_eq!(c.tree_component_counts.get(&1), Some(&4));
        assert_eq!(c.tree_component_counts.get(&2), Some(&1));
    }

    #[test]
    fn cycle_is_in_c1() {
        let c = BiGraph::from_edges(3, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)])
            .unwrap()
            .census();
        assert!(c.in_c1);
        assert_eq!(c.longest_degree2_path, 6);
    }
}
