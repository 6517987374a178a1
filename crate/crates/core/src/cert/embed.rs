use serde::{Deserialize, Serialize};

use super::GadgetCase;
use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::fs::{Bijection, SwapSeq};

/// A gadget instantiation realised as concrete graphs on `K_{r,r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub x: BiGraph,
    pub y: BiGraph,
    /// Token `t` starts at `position_vertex[t]`; padding tokens fill the rest.
    pub start: Bijection,
    pub token_vertex: Vec<usize>,
    pub position_vertex: Vec<usize>,
    pub target: (usize, usize),
    /// The case's sequence in `Y` vertex labels.
    pub sequence: SwapSeq,
}

fn two_colour(k: usize, edges: &[(usize, usize)]) -> Option<Vec<u8>> {
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour = vec![u8::MAX; k];
    for s in 0..k {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    stack.push(w);
                } else if colour[w] == colour[v] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

// Vertex label for each gadget index: side 0 fills 0.., side 1 fills r..
fn place(colour: &[u8], r: usize) -> Vec<usize> {
    let mut next = [0, r];
    colour
        .iter()
        .map(|&c| {
            let v = next[c as usize];
            next[c as usize] += 1;
            v
        })
        .collect()
}

/// Embeds one instantiation of `c`. Sides come from 2-colouring the
/// hypothesised edges; both sides are padded with isolated vertices to a
/// common size `r`.
pub fn embed(c: &GadgetCase, inst: &[usize]) -> Result<Embedding> {
    c.validate()?;
    let es = c.edge_set(inst)?;
    let k = c.k();
    let (ys, xs) = (es.y_list(), es.x_list());
    let not_bip = |which: &str| Error::Gadget {
        name: c.name.clone(),
        msg: format!("{which}-edges are not bipartite"),
    };
    let yc = two_colour(k, &ys).ok_or_else(|| not_bip("Y"))?;
    let xc = two_colour(k, &xs).ok_or_else(|| not_bip("X"))?;
    let side_max = |col: &[u8]| {
        let ones = col.iter().filter(|&&s| s == 1).count();
        ones.max(k - ones)
    };
    let r = side_max(&yc).max(side_max(&xc));
    let token_vertex = place(&yc, r);
    let position_vertex = place(&xc, r);
    let as_cross = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let y_edges: Vec<_> = ys.iter().map(|&(a, b)| as_cross(token_vertex[a], token_vertex[b])).collect();
    let x_edges: Vec<_> = xs
        .iter()
        .map(|&(a, b)| as_cross(position_vertex[a], position_vertex[b]))
        .collect();
    let n = 2 * r;
    let mut placement = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for t in 0..k {
        placement[position_vertex[t]] = token_vertex[t];
        used[token_vertex[t]] = true;
    }
    let mut spare = (0..n).filter(|&t| !used[t]);
    for slot in placement.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare.next().expect("token and position counts match");
    }
    Ok(Embedding {
        x: BiGraph::from_edges(r, &x_edges)?,
        y: BiGraph::from_edges(r, &y_edges)?,
        start: Bijection::from_place(&placement)?,
        token_vertex: token_vertex.clone(),
        position_vertex,
        target: (token_vertex[c.target.0], token_vertex[c.target.1]),
        sequence: SwapSeq(
            c.sequence
                .0
                .iter()
                .map(|&(a, b)| (token_vertex[a], token_vertex[b]))
                .collect(),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::super::builtin_corpus;
    use super::*;

    #[test]
    fn five_token_embeds_on_k33() {
        let c = builtin_corpus().into_iter().find(|c| c.name == "five-token").unwrap();
        let e = embed(&c, &[]).unwrap();
        assert_eq!(e.x.r(), 3);
        let end = e.sequence.replay(&e.x, &e.y, &e.start).unwrap().unwrap();
        assert_eq!(end, e.start.apply_swap(e.target.0, e.target.1).unwrap());
    }

    #[test]
    fn odd_cycle_rejected() {
        let c = super::super::parse_gadget(
            "name: t\ntokens: a b c\nyedge: a b\nyedge: b c\nyedge: a c\nxedge: a b\ntarget: a b\nseq: ab\n",
            "t",
        )
        .unwrap();
        assert!(embed(&c, &[]).is_err());
    }
}
