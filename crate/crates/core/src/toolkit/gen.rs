//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostFunction;
use crate::graph::{Edge, Graph};
use crate::rational::int;
use crate::toolkit::instance::Instance;

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub k: usize,
    /// Probability of each base edge.
    pub density: f64,
    /// Inclusive integer cost range.
    pub cost_range: (u64, u64),
    pub seed: u64,
    /// Cap on purchasable pairs; `None` makes every non-edge purchasable.
    /// When set, the purchasable pairs always contain a hidden k-connected
    /// spanning structure, so the cap is raised if that structure needs more.
    pub max_purchasable: Option<usize>,
}

impl GenParams {
    pub fn new(n: usize, k: usize, seed: u64) -> GenParams {
        GenParams { n, k, density: 0.2, cost_range: (1, 10), seed, max_purchasable: None }
    }
}

/// Harary graph `H(k, n)`, the sparsest k-connected graph on `n >= k + 1` nodes.
pub fn harary(k: usize, n: usize) -> Vec<(usize, usize)> {
    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    };
    let reach = if k == 1 { 1 } else { k / 2 };
    for i in 0..n {
        for d in 1..=reach {
            add(i, (i + d) % n);
        }
    }
    if k > 1 && k % 2 == 1 {
        if n % 2 == 0 {
            for i in 0..n / 2 {
                add(i, i + n / 2);
            }
        } else {
            for i in 0..=(n - 1) / 2 {
                add(i, (i + (n + 1) / 2) % n);
            }
        }
    }
    edges.into_iter().collect()
}

pub fn gen_random(p: &GenParams) -> Instance {
    assert!(p.n >= p.k + 1, "need n >= k + 1");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p.density.clamp(0.0, 1.0)) {
                g.add_edge(Edge::new(u, v));
            }
        }
    }
    let (lo, hi) = p.cost_range;
    let mut costs = CostFunction::new();
    let price = |rng: &mut ChaCha8Rng| int(rng.random_range(lo..=hi.max(lo)) as i64);
    match p.max_purchasable {
        None => {
            for e in g.non_edges().collect::<Vec<_>>() {
                costs.set(e, price(&mut rng)).expect("nonnegative");
            }
        }
        Some(cap) => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut chosen: BTreeSet<Edge> = harary(p.k, n)
                .into_iter()
                .map(|(a, b)| Edge::new(perm[a], perm[b]))
                .filter(|e| !g.contains_edge(*e))
                .collect();
            let mut rest: Vec<Edge> = g.non_edges().filter(|e| !chosen.contains(e)).collect();
            rest.shuffle(&mut rng);
            for e in rest {
                if chosen.len() >= cap {
                    break;
                }
                chosen.insert(e);
            }
            for e in chosen {
                costs.set(e, price(&mut rng)).expect("nonnegative");
            }
        }
    }
    Instance { graph: g, k: p.k, costs, name: format!("rand-n{}-k{}-s{}", p.n, p.k, p.seed), seed: Some(p.seed) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_k_connected;

    #[test]
    fn harary_is_k_connected() {
        for k in 1..=4 {
            for n in k + 1..=11 {
                let g = Graph::new(n, harary(k, n)).unwrap();
                assert!(is_k_connected(&g, k), "H({k}, {n})");
            }
        }
    }

    #[test]
    fn deterministic_and_feasible() {
        let mut p = GenParams::new(12, 2, 7);
        p.max_purchasable = Some(25);
        let a = gen_random(&p);
        assert_eq!(a.to_text(), gen_random(&p).to_text());
        assert!(a.candidates().len() <= 25);
        assert!(is_k_connected(&a.graph.with_edges(&a.candidates()), 2));
    }

    #[test]
    fn density_extremes() {
        let mut p = GenParams::new(6, 3, 1);
        p.density = 0.0;
        assert_eq!(gen_random(&p).graph.edge_count(), 0);
        p.density = 1.0;
        assert!(is_k_connected(&gen_random(&p).graph, 3));
    }
}
