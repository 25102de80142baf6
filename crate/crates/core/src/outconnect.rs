//! Rooted k-outconnectivity. The undirected ROOTED(R) step adds a temporary
//! root joined to the terminals, bidirects every edge and solves the
//! directed problem exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::flow::{node_in, node_out, FlowNetwork};
use crate::graph::{Edge, Graph, NodeSet};
use crate::lp::simplex::{DualSimplex, LpStatus};
use crate::rational::{int, one, Rat};

pub type Arc = (usize, usize);

/// A simple digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<Arc>,
}

impl Digraph {
    pub fn new(n: usize) -> Digraph {
        Digraph { n, arcs: BTreeSet::new() }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Digraph> {
        let mut d = Digraph::new(n);
        for (a, b) in arcs {
            d.add_arc(a, b)?;
        }
        Ok(d)
    }

    /// Both orientations of every edge.
    pub fn bidirected(g: &Graph) -> Digraph {
        let mut d = Digraph::new(g.n());
        for e in g.edges() {
            d.arcs.insert((e.u(), e.v()));
            d.arcs.insert((e.v(), e.u()));
        }
        d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b || a >= self.n || b >= self.n {
            return Err(Error::InvalidGraph(format!("bad arc {a}->{b}")));
        }
        Ok(self.arcs.insert((a, b)))
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.contains(&(a, b))
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

/// Number of internally disjoint `r -> v` dipaths, capped at `limit`.
pub fn disjoint_dipaths(d: &Digraph, r: usize, v: usize, limit: usize) -> usize {
    let n = d.n();
    let mut net = FlowNetwork::<i64>::new(2 * n);
    let inf = n as i64 + 1;
    for y in 0..n {
        let cap = if y == r || y == v { inf } else { 1 };
        net.add_arc(node_in(y), node_out(y), cap);
    }
    for (a, b) in d.arcs() {
        net.add_arc(node_out(a), node_in(b), 1);
    }
    net.max_flow(node_out(r), node_in(v), Some(&(limit as i64))) as usize
}

/// Whether every node other than `r` is reached by `k` internally disjoint dipaths.
pub fn is_k_outconnected(d: &Digraph, r: usize, k: usize) -> bool {
    (0..d.n()).filter(|&v| v != r).all(|v| disjoint_dipaths(d, r, v, k) >= k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedSolution {
    /// Bought candidate arcs, sorted.
    pub arcs: Vec<Arc>,
    pub cost: Rat,
    /// Optimum of the directed cut LP at the root of the search.
    pub lp_bound: Rat,
    /// Search-tree nodes solved (1 when the LP optimum was integral).
    pub explored: usize,
}

/// A row `Σ_{a ∈ cut} x_a >= rhs` over candidate-arc indices.
struct CutRow {
    arcs: Vec<usize>,
    rhs: i64,
}

/// Most violated rooted cut of `x` (over all targets), or `None` when every
/// target has fractional connectivity at least `k`.
fn separate_rooted(
    base: &Digraph,
    cands: &[Arc],
    x: &[Rat],
    r: usize,
    k: usize,
) -> Option<CutRow> {
    let n = base.n();
    let target = int(k as i64);
    let mut best: Option<(Rat, CutRow)> = None;
    for v in (0..n).filter(|&v| v != r) {
        let mut net = FlowNetwork::<Rat>::new(2 * n);
        let inf = int(2 * n as i64 + 2);
        for y in 0..n {
            let cap = if y == r || y == v { inf.clone() } else { one() };
            net.add_arc(node_in(y), node_out(y), cap);
        }
        for (a, b) in base.arcs() {
            net.add_arc(node_out(a), node_in(b), one());
        }
        let mut cand_ids = Vec::new();
        for (i, &(a, b)) in cands.iter().enumerate() {
            if x[i].is_positive() {
                net.add_arc(node_out(a), node_in(b), x[i].clone());
            }
            cand_ids.push(i);
        }
        let value = net.max_flow(node_out(r), node_in(v), Some(&target));
        if value >= target {
            continue;
        }
        let reach = net.reachable_from(node_out(r));
        let cut_nodes = (0..n).filter(|&y| reach[node_in(y)] && !reach[node_out(y)]).count();
        let cut_existing =
            base.arcs().filter(|&(a, b)| reach[node_out(a)] && !reach[node_in(b)]).count();
        let arcs: Vec<usize> = cand_ids
            .into_iter()
            .filter(|&i| {
                let (a, b) = cands[i];
                reach[node_out(a)] && !reach[node_in(b)]
            })
            .collect();
        let rhs = k as i64 - cut_nodes as i64 - cut_existing as i64;
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, CutRow { arcs, rhs }));
        }
    }
    best.map(|(_, row)| row)
}

/// Solves the directed cut LP over `cands` to a basic optimum.
/// `None` when infeasible.
fn solve_rooted_lp(
    base: &Digraph,
    cands: &[Arc],
    costs: &[Rat],
    r: usize,
    k: usize,
) -> Result<Option<(Vec<Rat>, Rat)>> {
    let mut lp = DualSimplex::new(costs.to_vec(), vec![Some(one()); cands.len()]);
    loop {
        if lp.solve()? == LpStatus::Infeasible {
            return Ok(None);
        }
        let x = lp.solution();
        match separate_rooted(base, cands, &x, r, k) {
            None => return Ok(Some((x, lp.objective()))),
            Some(row) => {
                if row.arcs.is_empty() {
                    return Ok(None);
                }
                lp.add_row(row.arcs.into_iter().map(|i| (i, one())).collect(), int(row.rhs));
            }
        }
    }
}

/// Minimum-cost set of candidate arcs whose addition to `base` makes it
/// k-outconnected from `r`. Candidate arcs already in `base` are ignored.
pub fn solve_directed_outconnectivity(
    base: &Digraph,
    costs: &BTreeMap<Arc, Rat>,
    r: usize,
    k: usize,
) -> Result<DirectedSolution> {
    let cands: Vec<Arc> = costs.keys().copied().filter(|&(a, b)| !base.has_arc(a, b)).collect();
    let mut full = base.clone();
    for &(a, b) in &cands {
        full.add_arc(a, b)?;
    }
    if !is_k_outconnected(&full, r, k) {
        return Err(Error::Infeasible);
    }
    let mut search = Search { r, k, best: None, explored: 0, lp_bound: None };
    search.explore(base.clone(), Rat::zero(), Vec::new(), cands, costs)?;
    let (cost, mut arcs) = search.best.ok_or(Error::Infeasible)?;
    arcs.sort_unstable();
    Ok(DirectedSolution {
        arcs,
        cost,
        lp_bound: search.lp_bound.unwrap_or_else(Rat::zero),
        explored: search.explored,
    })
}

struct Search {
    r: usize,
    k: usize,
    best: Option<(Rat, Vec<Arc>)>,
    explored: usize,
    lp_bound: Option<Rat>,
}

impl Search {
    fn explore(
        &mut self,
        base: Digraph,
        fixed_cost: Rat,
        fixed: Vec<Arc>,
        cands: Vec<Arc>,
        costs: &BTreeMap<Arc, Rat>,
    ) -> Result<()> {
        self.explored += 1;
        let cvec: Vec<Rat> = cands.iter().map(|a| costs[a].clone()).collect();
        let Some((x, obj)) = solve_rooted_lp(&base, &cands, &cvec, self.r, self.k)? else {
            return Ok(());
        };
        if self.lp_bound.is_none() {
            self.lp_bound = Some(obj.clone());
        }
        let bound = &fixed_cost + &obj;
        if let Some((b, _)) = &self.best {
            if bound >= *b {
                return Ok(());
            }
        }
        let frac = x.iter().position(|v| !v.is_integer());
        let Some(i) = frac else {
            let mut arcs = fixed;
            arcs.extend(cands.iter().zip(&x).filter(|(_, v)| v.is_positive()).map(|(a, _)| *a));
            self.best = Some((bound, arcs));
            return Ok(());
        };
        let arc = cands[i];
        let rest: Vec<Arc> = cands.iter().copied().filter(|&a| a != arc).collect();

        let mut with = base.clone();
        with.add_arc(arc.0, arc.1)?;
        let mut fixed_with = fixed.clone();
        fixed_with.push(arc);
        self.explore(with, &fixed_cost + &costs[&arc], fixed_with, rest.clone(), costs)?;
        self.explore(base, fixed_cost, fixed, rest, costs)
    }
}

/// Output of ROOTED(R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedResult {
    pub edges: Vec<Edge>,
    pub cost: Rat,
    /// Directed LP optimum; a lower bound on the directed optimum.
    pub lp_bound: Rat,
    pub explored: usize,
}

/// The auxiliary digraph of ROOTED(R): node `n` is the root, the arcs from
/// the root to `terminals` are committed, candidate edges become two
/// opposite candidate arcs of the same cost.
pub fn rooted_digraph(
    g: &Graph,
    c: &CostFunction,
    terminals: &NodeSet,
) -> (Digraph, BTreeMap<Arc, Rat>) {
    let n = g.n();
    let mut base = Digraph::bidirected(g);
    base.n = n + 1;
    for v in terminals.iter() {
        base.arcs.insert((n, v));
    }
    let mut costs = BTreeMap::new();
    for e in c.candidates(g) {
        let w = c.get(e).cloned().expect("candidate has finite cost");
        costs.insert((e.u(), e.v()), w.clone());
        costs.insert((e.v(), e.u()), w);
    }
    (base, costs)
}

/// ROOTED(R): a cheapest edge set `F'` such that `G + F'` plus a root joined
/// to `terminals` is k-outconnected from the root.
pub fn rooted(g: &Graph, c: &CostFunction, terminals: &NodeSet, k: usize) -> Result<RootedResult> {
    if terminals.len() != k {
        return Err(Error::BadTerminalCount { expected: k, got: terminals.len() });
    }
    if let Some(v) = terminals.iter().find(|&v| v >= g.n()) {
        return Err(Error::InvalidGraph(format!("terminal {v} out of range")));
    }
    let (base, costs) = rooted_digraph(g, c, terminals);
    let sol = solve_directed_outconnectivity(&base, &costs, g.n(), k)?;
    let edges: BTreeSet<Edge> = sol.arcs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    let edges: Vec<Edge> = edges.into_iter().collect();
    let cost = c.total(&edges).expect("bought edges are candidates");
    Ok(RootedResult { edges, cost, lp_bound: sol.lp_bound, explored: sol.explored })
}

/// Cheapest candidate-arc subset by exhaustive search; a test oracle for
/// at most 20 candidate arcs.
pub fn directed_exhaustive(
    base: &Digraph,
    costs: &BTreeMap<Arc, Rat>,
    r: usize,
    k: usize,
) -> Result<Option<(Rat, Vec<Arc>)>> {
    let cands: Vec<Arc> = costs.keys().copied().filter(|&(a, b)| !base.has_arc(a, b)).collect();
    if cands.len() > 20 {
        return Err(Error::SizeLimit(format!("{} candidate arcs", cands.len())));
    }
    let mut best: Option<(Rat, Vec<Arc>)> = None;
    for mask in 0u32..(1 << cands.len()) {
        let chosen: Vec<Arc> =
            (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
        let cost: Rat = chosen.iter().map(|a| costs[a].clone()).sum();
        if best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            continue;
        }
        let mut d = base.clone();
        for &(a, b) in &chosen {
            d.add_arc(a, b)?;
        }
        if is_k_outconnected(&d, r, k) {
            best = Some((cost, chosen));
        }
    }
    Ok(best)
}
