//! Rogue sets: the potential h(X) = |X| + (k-1)γ(X), its minimization over
//! sets containing a node, the low-h envelope B, and rogue extraction from
//! fractional LP points.

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{deficient_sets, gamma, outside, Graph, NodeSet};
use crate::lp::{fractional_min_cut, FractionalSolution};
use crate::mask::{self, MaskGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HValue {
    pub set: NodeSet,
    pub value: usize,
}

pub fn h(g: &Graph, k: usize, set: &NodeSet) -> usize {
    set.len() + k.saturating_sub(1) * gamma(g, set)
}

/// Minimum of h over all X containing `v`, with the largest minimizer.
///
/// Each node y gets two cut variables, `p_y` (y ∈ X) and `q_y` (y ∈ X ∪ Γ(X)),
/// with `p_y <= q_y`. Label X costs 1, label Γ costs k-1 and an edge yz forces
/// `p_y => q_z`. The maximal source side of a minimum cut gives the largest
/// minimizer.
pub fn min_h_containing(g: &Graph, k: usize, v: usize) -> HValue {
    min_h_cut(g, k, v, None).expect("unconstrained cut is finite")
}

/// Like [`min_h_containing`], restricted to X with `z ∉ X ∪ Γ(X)`.
/// `None` when `z` is `v` or adjacent to it.
pub fn min_h_avoiding(g: &Graph, k: usize, v: usize, z: usize) -> Option<HValue> {
    if z == v || g.has_edge(v, z) {
        return None;
    }
    min_h_cut(g, k, v, Some(z))
}

fn min_h_cut(g: &Graph, k: usize, v: usize, avoid: Option<usize>) -> Option<HValue> {
    let n = g.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let p = |y: usize| 2 * y;
    let q = |y: usize| 2 * y + 1;
    let inf = (n * k.max(1) + 1) as i64;
    let mut net = FlowNetwork::<i64>::new(2 * n + 2);
    for y in 0..n {
        net.add_arc(p(y), t, 1);
        if k > 1 {
            net.add_arc(q(y), p(y), (k - 1) as i64);
        }
        net.add_arc(p(y), q(y), inf);
        for &z in g.adjacent(y) {
            net.add_arc(p(y), q(z), inf);
        }
    }
    net.add_arc(s, p(v), inf);
    if let Some(z) = avoid {
        net.add_arc(q(z), t, inf);
    }
    let value = net.max_flow(s, t, None);
    if value >= inf {
        return None;
    }
    let value = value as usize;
    let to_sink = net.reaching(t);
    let set: NodeSet = (0..n).filter(|&y| !to_sink[p(y)]).collect();
    debug_assert!(set.contains(v));
    debug_assert_eq!(h(g, k, &set), value);
    Some(HValue { set, value })
}

/// True when some node lies outside `X ∪ Γ(X)`.
pub fn has_outside(g: &Graph, set: &NodeSet) -> bool {
    !outside(g, set).is_empty()
}

/// Exhaustive version of [`min_h_containing`] over all supersets of `{v}`;
/// the largest minimizer is the union of all minimizers.
pub fn min_h_exhaustive(g: &Graph, k: usize, v: usize) -> Result<HValue> {
    let mg = mask_graph_upto(g, 24)?;
    let rest = mg.full() & !(1u64 << v);
    let mut best = usize::MAX;
    let mut union = 0u64;
    let mut eval = |m: u64| {
        let val = m.count_ones() as usize + k.saturating_sub(1) * mg.gamma(m);
        if val < best {
            best = val;
            union = m;
        } else if val == best {
            union |= m;
        }
    };
    eval(1 << v);
    for sub in mask::nonempty_submasks(rest) {
        eval(sub | 1 << v);
    }
    Ok(HValue { set: NodeSet::from_mask(union), value: best })
}

fn mask_graph_upto(g: &Graph, limit: usize) -> Result<MaskGraph> {
    if g.n() > limit {
        return Err(Error::SizeLimit(format!("exhaustive scan needs n <= {limit}, got {}", g.n())));
    }
    Ok(g.mask_graph().expect("n is small"))
}

/// Result of the B-set computation: `b` is the union of all sets X with
/// h(X) <= k(k-1) and `X ∪ Γ(X) != V`, `a` the nodes certified to lie in
/// none of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BReport {
    pub a: NodeSet,
    pub b: NodeSet,
    /// The minimizers merged into `b`, in the order they were found.
    pub members: Vec<HValue>,
}

/// Every node of a qualifying X has its own minimum at most h(X), so it is
/// never put into A and B ends up as the whole union.
///
/// A set with `X ∪ Γ(X) = V` has h(X) >= n, so it only matters when
/// n <= k(k-1). Then the search is repeated once per node kept outside.
pub fn compute_b(g: &Graph, k: usize) -> BReport {
    let threshold = k * k.saturating_sub(1);
    let mut a = NodeSet::new();
    let mut b = NodeSet::new();
    let mut members = Vec::new();
    for v in 0..g.n() {
        if a.contains(v) || b.contains(v) {
            continue;
        }
        let free = min_h_containing(g, k, v);
        let found = if free.value > threshold {
            None
        } else if has_outside(g, &free.set) {
            Some(free)
        } else {
            (0..g.n())
                .filter_map(|z| min_h_avoiding(g, k, v, z))
                .filter(|hv| hv.value <= threshold)
                .min_by(|x, y| x.value.cmp(&y.value).then(y.set.len().cmp(&x.set.len())))
        };
        match found {
            None => {
                a.insert(v);
            }
            Some(hv) => {
                b = b.union(&hv.set);
                members.push(hv);
            }
        }
    }
    BReport { a, b, members }
}

/// Union of all X with h(X) <= k(k-1) and `X ∪ Γ(X) != V`, by scanning
/// every subset.
pub fn b_exhaustive(g: &Graph, k: usize) -> Result<NodeSet> {
    let mg = mask_graph_upto(g, 24)?;
    let threshold = k * k.saturating_sub(1);
    let full = mg.full();
    let mut union = 0u64;
    for m in mask::nonempty_submasks(full) {
        if m.count_ones() as usize + k.saturating_sub(1) * mg.gamma(m) <= threshold
            && mg.outside(m) != 0
        {
            union |= m;
        }
    }
    Ok(NodeSet::from_mask(union))
}

/// A rogue set: deficient with fewer than k nodes.
pub fn is_rogue(g: &Graph, k: usize, set: &NodeSet) -> bool {
    !set.is_empty() && set.len() < k && gamma(g, set) < k && !outside(g, set).is_empty()
}

/// Scans ordered non-adjacent pairs `(u, w)` of the fractional graph
/// `G + x` lexicographically and returns the first inclusion-minimal
/// minimum-cut side that is a rogue set of `G`.
pub fn find_rogue_from_fractional(
    g: &Graph,
    k: usize,
    x: &FractionalSolution,
) -> Option<NodeSet> {
    let n = g.n();
    for u in 0..n {
        for w in 0..n {
            if u == w || g.has_edge(u, w) {
                continue;
            }
            let (_, source, _) = fractional_min_cut(g, x, u, w, None);
            if is_rogue(g, k, &source) {
                return Some(source);
            }
        }
    }
    None
}

pub fn enumerate_rogue_sets(g: &Graph, k: usize) -> Result<Vec<NodeSet>> {
    deficient_sets(g, k, k.saturating_sub(1))
}

pub fn rogue_union(g: &Graph, k: usize) -> Result<NodeSet> {
    Ok(enumerate_rogue_sets(g, k)?.iter().fold(NodeSet::new(), |acc, s| acc.union(s)))
}

pub fn is_rogue_free(g: &Graph, k: usize) -> Result<bool> {
    Ok(enumerate_rogue_sets(g, k)?.is_empty())
}

/// Whether no two deficient set-pairs are independent.
///
/// Independent deficient pairs exist iff there are disjoint U, W with W a
/// deficient set, `U* - W` nonempty and `γ(U) + |U* ∩ W| < k`: the first pair
/// is then `(U, U* - W)`, the second `(W, W*)`.
pub fn is_independence_free(g: &Graph, k: usize) -> Result<bool> {
    let mg = mask_graph_upto(g, 16)?;
    let full = mg.full();
    let small: Vec<(u64, u64, usize)> = mask::nonempty_submasks(full)
        .filter_map(|m| {
            let gm = mg.gamma(m);
            let star = mg.outside(m);
            (gm < k && star != 0).then_some((m, star, gm))
        })
        .collect();
    for &(w, _, _) in &small {
        for &(u, ustar, gu) in &small {
            if u & w != 0 || ustar & !w == 0 {
                continue;
            }
            if gu + ((ustar & w).count_ones() as usize) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairwise [`crate::setpair::classify`] over all deficient set-pairs; a test
/// oracle for [`is_independence_free`] on tiny graphs.
pub fn is_independence_free_brute(g: &Graph, k: usize) -> Result<bool> {
    use crate::setpair::{classify, PairRelation, SetPair};
    let mg = mask_graph_upto(g, 8)?;
    let n = g.n();
    let mut pairs = Vec::new();
    mg.for_each_setpair(|a, b| {
        if n - ((a | b).count_ones() as usize) < k {
            pairs.push(SetPair::from_pieces_unchecked(NodeSet::from_mask(a), NodeSet::from_mask(b)));
        }
    });
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if classify(&pairs[i], &pairs[j]) == PairRelation::Independent {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::rational::rat;

    #[test]
    fn h_examples() {
        let g = Graph::path(3);
        assert_eq!(h(&g, 2, &NodeSet::from([0])), 2);
        assert_eq!(h(&g, 2, &NodeSet::new()), 0);
        assert_eq!(h(&g, 2, &NodeSet::full(3)), 3);
    }

    #[test]
    fn min_h_isolated_node() {
        let g = Graph::new(3, [(1, 2)]).unwrap();
        let hv = min_h_containing(&g, 2, 0);
        assert_eq!(hv, HValue { set: NodeSet::from([0]), value: 1 });
    }

    #[test]
    fn min_h_path_matches_scan() {
        let g = Graph::path(3);
        for k in 1..=4 {
            for v in 0..3 {
                assert_eq!(min_h_containing(&g, k, v), min_h_exhaustive(&g, k, v).unwrap());
            }
        }
    }

    #[test]
    fn b_of_connected_graph_is_empty() {
        for k in 2..=4 {
            let g = Graph::complete(k + 1);
            let rep = compute_b(&g, k);
            assert!(rep.b.is_empty());
            assert_eq!(rep.a, NodeSet::full(k + 1));
        }
    }

    #[test]
    fn c4_rogue_sets() {
        let g = Graph::cycle(4);
        let sets = enumerate_rogue_sets(&g, 3).unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets.iter().all(|s| s.len() == 1));
        assert!(!is_rogue_free(&g, 3).unwrap());
        assert!(is_rogue_free(&g, 2).unwrap());
    }

    #[test]
    fn independence_free_matches_brute() {
        let graphs = [
            Graph::path(5),
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::empty(4),
        ];
        for g in &graphs {
            for k in 1..=3 {
                assert_eq!(
                    is_independence_free(g, k).unwrap(),
                    is_independence_free_brute(g, k).unwrap(),
                    "{g:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn rogue_from_fractional_point() {
        let path = Graph::path(3);
        let x = FractionalSolution::from_values([(Edge::new(0, 2), rat(1, 4))]);
        let s = find_rogue_from_fractional(&path, 2, &x).unwrap();
        assert_eq!(s, NodeSet::from([0]));
        assert!(is_rogue(&path, 2, &s));
    }
}
