use crate::bigraph::BiGraph;
use crate::error::{Error, Result};

/// Largest `r` for full enumeration (`2^(r^2)` candidate edge sets).
pub const MAX_ENUM_R: usize = 4;

/// Every edge-subgraph of `K_{r,r}` with minimum degree at least
/// `min_deg`, each exactly once, in a fixed order.
///
/// Host edges are decided one at a time in row-major order; a branch is
/// cut as soon as some vertex can no longer reach `min_deg`.
pub fn enumerate_subgraphs(r: usize, min_deg: usize) -> Result<Vec<BiGraph>> {
    if r == 0 {
        return Err(Error::ZeroSize);
    }
    if r > MAX_ENUM_R {
        return Err(Error::Enumeration(format!(
            "full enumeration supports r <= {MAX_ENUM_R} (got {r}); use random mode"
        )));
    }
    if min_deg > r {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut st = State {
        r,
        min_deg,
        deg: vec![0; 2 * r],
        // undecided incident host edges per vertex
        left: vec![r; 2 * r],
        chosen: Vec::with_capacity(r * r),
    };
    st.go(0, &mut out)?;
    Ok(out)
}

struct State {
    r: usize,
    min_deg: usize,
    deg: Vec<usize>,
    left: Vec<usize>,
    chosen: Vec<(usize, usize)>,
}

impl State {
    fn go(&mut self, idx: usize, out: &mut Vec<BiGraph>) -> Result<()> {
        let r = self.r;
        if idx == r * r {
            out.push(BiGraph::from_edges(r, &self.chosen)?);
            return Ok(());
        }
        let (a, b) = (idx / r, r + idx % r);
        self.left[a] -= 1;
        self.left[b] -= 1;

        self.deg[a] += 1;
        self.deg[b] += 1;
        self.chosen.push((a, b));
        self.go(idx + 1, out)?;
        self.chosen.pop();
        self.deg[a] -= 1;
        self.deg[b] -= 1;

        let reachable = |v: usize| self.deg[v] + self.left[v] >= self.min_deg;
        if reachable(a) && reachable(b) {
            self.go(idx + 1, out)?;
        }
        self.left[a] += 1;
        self.left[b] += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Subgraphs with min degree r - 1 are complements of partial matchings.
    fn matchings(r: u64) -> u64 {
        let choose = |n: u64, k: u64| (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
        let fact = |k: u64| (1..=k).product::<u64>();
        (0..=r).map(|k| choose(r, k).pow(2) * fact(k)).sum()
    }

    #[test]
    fn counts_match_the_matching_oracle() {
        assert_eq!(enumerate_subgraphs(3, 2).unwrap().len() as u64, matchings(3));
        assert_eq!(enumerate_subgraphs(4, 3).unwrap().len() as u64, matchings(4));
        assert_eq!(matchings(3), 34);
        assert_eq!(matchings(4), 209);
    }

    #[test]
    fn small_cases() {
        let full = enumerate_subgraphs(3, 3).unwrap();
        assert_eq!(full, vec![BiGraph::complete(3).unwrap()]);
        assert_eq!(enumerate_subgraphs(2, 0).unwrap().len(), 16);
        assert_eq!(enumerate_subgraphs(3, 0).unwrap().len(), 512);
        assert!(enumerate_subgraphs(5, 4).is_err());
    }

    #[test]
    fn no_duplicates_and_filter_respected() {
        let gs = enumerate_subgraphs(3, 1).unwrap();
        let set: std::collections::HashSet<_> = gs.iter().cloned().collect();
        assert_eq!(set.len(), gs.len());
        assert!(gs.iter().all(|g| g.min_degree() >= 1));
        let brute = (0u32..512)
            .filter(|m| {
                let e: Vec<_> = (0..9).filter(|i| m >> i & 1 == 1).map(|i| (i / 3, 3 + i % 3)).collect();
                BiGraph::from_edges(3, &e).unwrap().min_degree() >= 1
            })
            .count();
        assert_eq!(gs.len(), brute);
    }
}
