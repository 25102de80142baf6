//! Bitmask view of graphs with at most 64 nodes.
//!
//! Used by the enumeration harnesses and the exhaustive oracles, which sweep
//! over all subsets of the node set and need constant-time set algebra.

use crate::graph::Graph;

/// Iterates the members of a mask in increasing order.
pub fn members(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Saturating binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `size`-subsets of `0..n` in increasing mask order (Gosper's hack).
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut cur: u128 = if size > n {
        limit
    } else if size == 0 {
        0
    } else {
        (1u128 << size) - 1
    };
    let mut done = size > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur as u64;
        if cur == 0 {
            done = true;
            return Some(out);
        }
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        if cur >= limit {
            done = true;
        }
        Some(out)
    })
}

/// Nonempty submasks of `m`, in decreasing order.
pub fn nonempty_submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut s = m;
    let mut done = m == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = s;
        s = (s - 1) & m;
        if s == 0 {
            done = true;
        }
        Some(out)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskGraph {
    n: usize,
    adj: Vec<u64>,
}

impl MaskGraph {
    pub fn from_graph(g: &Graph) -> Option<MaskGraph> {
        if g.n() > 64 {
            return None;
        }
        let mut adj = vec![0u64; g.n()];
        for e in g.edges() {
            let (u, v) = e.ends();
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Some(MaskGraph { n: g.n(), adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn neighbors(&self, m: u64) -> u64 {
        members(m).fold(0, |acc, v| acc | self.adj[v]) & !m
    }

    pub fn gamma(&self, m: u64) -> usize {
        self.neighbors(m).count_ones() as usize
    }

    pub fn outside(&self, m: u64) -> u64 {
        self.full() & !(m | self.neighbors(m))
    }

    pub fn is_deficient(&self, m: u64, k: usize) -> bool {
        m != 0 && self.gamma(m) < k && self.outside(m) != 0
    }

    /// Whether the subgraph induced by `alive` is connected (empty counts as connected).
    pub fn connected_within(&self, alive: u64) -> bool {
        if alive == 0 {
            return true;
        }
        let start = alive & alive.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= alive & !seen;
            seen |= next;
            frontier = next;
        }
        seen == alive
    }

    /// k-connectivity by deleting every (k-1)-subset of nodes.
    pub fn is_k_connected(&self, k: usize) -> bool {
        if self.n < k + 1 {
            return false;
        }
        if k == 0 {
            return true;
        }
        subsets_of_size(self.n, k - 1).all(|cut| self.connected_within(self.full() & !cut))
    }

    /// Calls `f(u0, u1)` once for every set-pair (unordered: the piece holding the
    /// smallest node of the union is passed first).
    pub fn for_each_setpair(&self, mut f: impl FnMut(u64, u64)) {
        for u0 in 1..=self.full() {
            let low = u0 & u0.wrapping_neg();
            // pieces of the other side must avoid u0's closed neighbourhood and
            // contain no node below u0's minimum
            let avail = self.outside(u0) & !(low - 1);
            for u1 in nonempty_submasks(avail) {
                f(u0, u1);
            }
            if u0 == self.full() {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_counts() {
        for n in 0..9 {
            for s in 0..=n {
                let all: Vec<u64> = subsets_of_size(n, s).collect();
                assert_eq!(all.len() as u64, binomial(n, s), "n={n} s={s}");
                assert!(all.iter().all(|m| m.count_ones() as usize == s));
            }
        }
    }

    #[test]
    fn submask_count() {
        assert_eq!(nonempty_submasks(0b1011).count(), 7);
        assert_eq!(nonempty_submasks(0).count(), 0);
    }

    #[test]
    fn setpairs_of_path3() {
        // path 0-1-2: set-pairs are ({0},{2}) only
        let g = Graph::path(3);
        let mg = MaskGraph::from_graph(&g).unwrap();
        let mut pairs = Vec::new();
        mg.for_each_setpair(|a, b| pairs.push((a, b)));
        assert_eq!(pairs, vec![(0b001, 0b100)]);
    }

    #[test]
    fn setpair_count_empty_graph() {
        // unordered pairs of disjoint nonempty subsets of a 4-set: (3^4 - 2*2^4 + 1)/2 = 25
        let g = Graph::empty(4);
        let mg = MaskGraph::from_graph(&g).unwrap();
        let mut count = 0;
        mg.for_each_setpair(|_, _| count += 1);
        assert_eq!(count, 25);
    }
}
