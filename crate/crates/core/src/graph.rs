//! Simple undirected graphs, node sets, neighbourhoods and vertex cuts.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::flow::{node_in, node_out, FlowNetwork};
use crate::mask::{self, MaskGraph};

/// Unordered node pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    /// Panics on a self-loop.
    pub fn new(u: usize, v: usize) -> Edge {
        assert_ne!(u, v, "self-loop {u}-{v}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Sorted, duplicate-free set of nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        NodeSet(vec![v])
    }

    /// All nodes `0..n`.
    pub fn full(n: usize) -> Self {
        NodeSet((0..n).collect())
    }

    pub fn from_mask(m: u64) -> Self {
        NodeSet(mask::members(m).collect())
    }

    /// `None` when some member does not fit in a 64-bit mask.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &v| (v < 64).then(|| acc | (1 << v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn intersects(&self, other: &NodeSet) -> bool {
        !self.is_disjoint(other)
    }

    /// `{0..n} - self`.
    pub fn complement(&self, n: usize) -> NodeSet {
        NodeSet((0..n).filter(|&v| !self.contains(v)).collect())
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], edges: BTreeSet::new() }
    }

    /// Rejects self-loops, out-of-range endpoints and parallel edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !g.add_edge(Edge::new(u, v)) {
                return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(Edge::new(u, v));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&Edge::new(u, v))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        assert!(e.v() < self.n, "edge {e} out of range");
        if !self.edges.insert(e) {
            return false;
        }
        let (u, v) = e.ends();
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        true
    }

    /// Copy of the graph with the given edges added (duplicates ignored).
    pub fn with_edges<'a>(&self, extra: impl IntoIterator<Item = &'a Edge>) -> Graph {
        let mut g = self.clone();
        for &e in extra {
            g.add_edge(e);
        }
        g
    }

    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Pairs of `(V choose 2)` that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| Edge::new(u, v))
        })
    }

    pub fn mask_graph(&self) -> Option<MaskGraph> {
        MaskGraph::from_graph(self)
    }
}

/// Γ(U): nodes outside `set` adjacent to some node of `set`.
pub fn neighbors(g: &Graph, set: &NodeSet) -> NodeSet {
    set.iter().flat_map(|u| g.adjacent(u).iter().copied()).filter(|&w| !set.contains(w)).collect()
}

/// γ(U) = |Γ(U)|.
pub fn gamma(g: &Graph, set: &NodeSet) -> usize {
    neighbors(g, set).len()
}

/// U* = V - (U ∪ Γ(U)).
pub fn outside(g: &Graph, set: &NodeSet) -> NodeSet {
    let closed = set.union(&neighbors(g, set));
    closed.complement(g.n())
}

/// A deficient node set: γ(U) < k with both U and U* nonempty.
pub fn is_deficient(g: &Graph, k: usize, set: &NodeSet) -> bool {
    !set.is_empty() && gamma(g, set) < k && !outside(g, set).is_empty()
}

/// Minimum node cut between two non-adjacent terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    pub value: usize,
    pub cut_nodes: NodeSet,
    /// Inclusion-minimal side containing the source terminal.
    pub source_side: NodeSet,
}

/// Node-split max-flow between `u` and `w`: every other node has capacity 1,
/// every edge is bidirected with unbounded capacity. The source side is read
/// off the residual network, which yields the unique inclusion-minimal one.
pub fn min_vertex_cut(g: &Graph, u: usize, w: usize) -> Result<VertexCut> {
    let n = g.n();
    if u >= n || w >= n || u == w {
        return Err(Error::InvalidGraph(format!("bad terminals {u}, {w}")));
    }
    if g.has_edge(u, w) {
        return Err(Error::AdjacentTerminals(u, w));
    }
    let inf = n as i64 + 1;
    let mut net = FlowNetwork::<i64>::new(2 * n);
    for v in 0..n {
        let cap = if v == u || v == w { inf } else { 1 };
        net.add_arc(node_in(v), node_out(v), cap);
    }
    for e in g.edges() {
        let (a, b) = e.ends();
        net.add_arc(node_out(a), node_in(b), inf);
        net.add_arc(node_out(b), node_in(a), inf);
    }
    let value = net.max_flow(node_out(u), node_in(w), None);
    let reach = net.reachable_from(node_out(u));
    let source_side: NodeSet = (0..n).filter(|&v| reach[node_out(v)]).collect();
    let cut_nodes: NodeSet =
        (0..n).filter(|&v| reach[node_in(v)] && !reach[node_out(v)]).collect();
    debug_assert_eq!(cut_nodes.len() as i64, value);
    Ok(VertexCut { value: value as usize, cut_nodes, source_side })
}

/// True iff the graph has at least k+1 nodes and no node cut of size < k.
///
/// Small graphs are checked by deleting every (k-1)-subset; everything else
/// goes through pairwise node-split max-flow.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if let Some(mg) = g.mask_graph() {
        if mask::binomial(g.n(), k.saturating_sub(1)) <= 20_000 {
            return mg.is_k_connected(k);
        }
    }
    is_k_connected_by_flow(g, k)
}

/// Menger-based check over every non-adjacent pair.
pub fn is_k_connected_by_flow(g: &Graph, k: usize) -> bool {
    if g.n() < k + 1 {
        return false;
    }
    for u in 0..g.n() {
        for w in u + 1..g.n() {
            if !g.has_edge(u, w) && min_vertex_cut(g, u, w).map(|c| c.value < k).unwrap_or(true) {
                return false;
            }
        }
    }
    true
}

/// Finds a node cut of size < k, returned as a min vertex cut between some
/// non-adjacent pair. `None` when every such pair is k-connected.
pub fn find_small_cut(g: &Graph, k: usize) -> Option<(usize, usize, VertexCut)> {
    for u in 0..g.n() {
        for w in u + 1..g.n() {
            if g.has_edge(u, w) {
                continue;
            }
            let cut = min_vertex_cut(g, u, w).expect("non-adjacent pair");
            if cut.value < k {
                return Some((u, w, cut));
            }
        }
    }
    None
}

/// Default cap on the number of subsets examined by the enumeration helpers.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 26;

/// All deficient sets U with |U| <= `max_size`.
pub fn deficient_sets(g: &Graph, k: usize, max_size: usize) -> Result<Vec<NodeSet>> {
    deficient_sets_with_budget(g, k, max_size, DEFAULT_ENUM_BUDGET)
}

pub fn deficient_sets_with_budget(
    g: &Graph,
    k: usize,
    max_size: usize,
    budget: u64,
) -> Result<Vec<NodeSet>> {
    let mg = g
        .mask_graph()
        .ok_or_else(|| Error::SizeLimit(format!("enumeration needs n <= 64, got {}", g.n())))?;
    let max_size = max_size.min(g.n());
    let work: u64 = (1..=max_size).map(|s| mask::binomial(g.n(), s)).sum();
    if work > budget {
        return Err(Error::SizeLimit(format!("{work} subsets exceed budget {budget}")));
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        for m in mask::subsets_of_size(g.n(), size) {
            if mg.is_deficient(m, k) {
                out.push(NodeSet::from_mask(m));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::cycle(4)
    }

    #[test]
    fn neighbourhoods() {
        let p = Graph::path(3);
        assert_eq!(neighbors(&p, &NodeSet::from([0])), NodeSet::from([1]));
        assert_eq!(neighbors(&p, &NodeSet::full(3)), NodeSet::new());
        assert_eq!(neighbors(&c4(), &NodeSet::from([0])), NodeSet::from([1, 3]));
        assert_eq!(neighbors(&c4(), &NodeSet::new()), NodeSet::new());
    }

    #[test]
    fn outside_sets() {
        assert_eq!(outside(&c4(), &NodeSet::from([0])), NodeSet::from([2]));
        assert_eq!(outside(&c4(), &NodeSet::full(4)), NodeSet::new());
        assert_eq!(outside(&Graph::complete(4), &NodeSet::from([0])), NodeSet::new());
    }

    #[test]
    fn cut_on_c4() {
        let cut = min_vertex_cut(&c4(), 0, 2).unwrap();
        assert_eq!(cut.value, 2);
        assert_eq!(cut.cut_nodes, NodeSet::from([1, 3]));
        assert_eq!(cut.source_side, NodeSet::from([0]));
    }

    #[test]
    fn three_disjoint_paths() {
        // 0 and 4 joined through 1, 2, 3
        let g = Graph::new(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert_eq!(min_vertex_cut(&g, 0, 4).unwrap().value, 3);
    }

    #[test]
    fn star_cut() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let cut = min_vertex_cut(&g, 1, 2).unwrap();
        assert_eq!(cut.value, 1);
        assert_eq!(cut.cut_nodes, NodeSet::from([0]));
    }

    #[test]
    fn adjacent_terminals_rejected() {
        assert_eq!(min_vertex_cut(&c4(), 0, 1), Err(Error::AdjacentTerminals(0, 1)));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_k_connected(&Graph::complete(4), 3));
        assert!(is_k_connected(&Graph::cycle(5), 2));
        assert!(!is_k_connected(&Graph::cycle(5), 3));
        for k in 1..6 {
            assert!(is_k_connected(&Graph::complete(k + 1), k));
            assert!(is_k_connected_by_flow(&Graph::complete(k + 1), k));
            assert!(!is_k_connected(&Graph::complete(k), k));
        }
        assert!(!is_k_connected_by_flow(&Graph::cycle(5), 3));
    }

    #[test]
    fn deficient_set_examples() {
        assert!(deficient_sets(&Graph::complete(4), 3, 4).unwrap().is_empty());
        let sets = deficient_sets(&c4(), 3, 2).unwrap();
        assert_eq!(
            sets,
            vec![
                NodeSet::from([0]),
                NodeSet::from([1]),
                NodeSet::from([2]),
                NodeSet::from([3])
            ]
        );
        assert!(deficient_sets(&c4(), 2, 3).unwrap().is_empty());
    }

    #[test]
    fn enumeration_budget() {
        let g = Graph::cycle(30);
        assert!(matches!(deficient_sets_with_budget(&g, 2, 10, 1000), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn invalid_graphs() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn node_set_algebra() {
        let a = NodeSet::from([3, 1, 2, 1]);
        assert_eq!(a.as_slice(), &[1, 2, 3]);
        let b = NodeSet::from([2, 5]);
        assert_eq!(a.union(&b), NodeSet::from([1, 2, 3, 5]));
        assert_eq!(a.intersection(&b), NodeSet::from([2]));
        assert_eq!(a.difference(&b), NodeSet::from([1, 3]));
        assert_eq!(a.complement(5), NodeSet::from([0, 4]));
        assert_eq!(NodeSet::from_mask(a.to_mask().unwrap()), a);
        assert_eq!(a.to_string(), "{1,2,3}");
    }
}
