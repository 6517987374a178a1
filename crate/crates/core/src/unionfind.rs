//! Disjoint-set forests over dense `u32` indices.

use std::sync::atomic::{AtomicU32, Ordering};

/// Path compression + union by size.
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    /// Sizes of all sets, sorted ascending.
    pub fn set_sizes(&mut self) -> Vec<u64> {
        let n = self.parent.len();
        let mut sizes: Vec<u64> = (0..n as u32)
            .filter(|&i| self.parent[i as usize] == i)
            .map(|i| self.size[i as usize] as u64)
            .collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn roots(&mut self) -> Vec<u32> {
        (0..self.parent.len() as u32)
            .filter(|&i| self.parent[i as usize] == i)
            .collect()
    }
}

/// Lock-free variant for concurrent unions. Roots always link under the
/// smaller index, so every set ends up rooted at its minimum element no
/// matter how the unions interleave.
pub struct AtomicUnionFind {
    parent: Vec<AtomicU32>,
}

impl AtomicUnionFind {
    pub fn new(n: usize) -> Self {
        AtomicUnionFind {
            parent: (0..n as u32).map(AtomicU32::new).collect(),
        }
    }

    pub fn find(&self, mut x: u32) -> u32 {
        loop {
            let p = self.parent[x as usize].load(Ordering::Acquire);
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize].load(Ordering::Acquire);
            if gp != p {
                // path halving; losing the race is harmless
                let _ = self.parent[x as usize].compare_exchange_weak(
                    p,
                    gp,
                    Ordering::AcqRel,
                    Ordering::Relaxed,
                );
            }
            x = gp;
        }
    }

    pub fn union(&self, a: u32, b: u32) {
        let (mut a, mut b) = (a, b);
        loop {
            a = self.find(a);
            b = self.find(b);
            if a == b {
                return;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Acquire)
                .is_ok()
            {
                return;
            }
        }
    }

    /// `(root, size)` for every set, ordered by root.
    pub fn sets(&self) -> Vec<(u32, u64)> {
        let n = self.parent.len();
        let mut counts = vec![0u32; n];
        for i in 0..n as u32 {
            counts[self.find(i) as usize] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as u32, c as u64))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_sets() {
        let mut uf = UnionFind::new(6);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(uf.union(1, 3));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.set_sizes(), vec![1, 1, 4]);
    }

    #[test]
    fn atomic_sets_root_at_minimum() {
        let uf = AtomicUnionFind::new(6);
        uf.union(5, 3);
        uf.union(3, 4);
        uf.union(2, 0);
        assert_eq!(uf.sets(), vec![(0, 2), (1, 1), (3, 3)]);
    }
}
