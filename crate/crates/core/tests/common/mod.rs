//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fsgraph::BiGraph;

fn reachable(g: &BiGraph, from: usize, to: usize, skip: (usize, usize)) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for w in g.neighbors(v) {
            if (v, w) == skip || (w, v) == skip || seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push(w);
        }
    }
    false
}

/// An edge is a cut edge when deleting it separates its endpoints.
pub fn is_cut_edge(g: &BiGraph, a: usize, b: usize) -> bool {
    g.has_edge(a, b) && !reachable(g, a, b, (a, b))
}

/// All maximal paths satisfying the bridge definition, by walking every
/// simple path: every edge a cut edge, interior vertices of degree 2,
/// endpoints not of degree 1. Returns (max_k, paths with the smaller
/// endpoint first).
pub fn brute_force_bridges(g: &BiGraph) -> (usize, BTreeSet<Vec<usize>>) {
    let mut valid: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut path = Vec::new();
    for s in 0..g.n() {
        path.push(s);
        extend(g, &mut path, &mut valid);
        path.pop();
    }
    let contains = |big: &[usize], small: &[usize]| {
        big.len() > small.len()
            && big.windows(small.len()).any(|w| {
                w == small || w.iter().rev().eq(small.iter())
            })
    };
    let maximal: BTreeSet<Vec<usize>> = valid
        .iter()
        .filter(|p| !valid.iter().any(|q| contains(q, p)))
        .cloned()
        .collect();
    let max_k = valid.iter().map(Vec::len).max().unwrap_or(0);
    (max_k, maximal)
}

fn extend(g: &BiGraph, path: &mut Vec<usize>, valid: &mut BTreeSet<Vec<usize>>) {
    let last = *path.last().unwrap();
    if path.len() >= 2 {
        let ends_ok = g.degree(path[0]) != 1 && g.degree(last) != 1;
        if ends_ok {
            let mut p = path.clone();
            if p[0] > *p.last().unwrap() {
                p.reverse();
            }
            valid.insert(p);
        }
        // `last` becomes interior in any extension
        if g.degree(last) != 2 {
            return;
        }
    }
    for w in g.neighbors(last).collect::<Vec<_>>() {
        if path.contains(&w) || !is_cut_edge(g, last, w) {
            continue;
        }
        path.push(w);
        extend(g, path, valid);
        path.pop();
    }
}
