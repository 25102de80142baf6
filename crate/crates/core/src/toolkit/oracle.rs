//! Exact minimum-cost augmentation by exhaustive search or branch-and-bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::lp::solve_lpvc;
use crate::mask::{self, MaskGraph};
use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Exhaustive for at most 20 candidates, branch-and-bound above.
    Auto,
    Exhaustive,
    BranchAndBound,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_candidates: usize,
    pub max_nodes: u64,
    /// Prune search nodes with the cut-LP optimum of the residual instance.
    pub lp_bound: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_candidates: 25, max_nodes: 50_000_000, lp_bound: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when no finite-cost augmentation exists.
    pub cost: Option<Rat>,
    pub edges: Vec<Edge>,
    pub explored: u64,
}

/// Candidate costs scaled to integers by a common denominator.
struct Scaled {
    edges: Vec<Edge>,
    ends: Vec<(usize, usize)>,
    cost: Vec<u128>,
    denom: BigInt,
}

impl Scaled {
    fn new(g: &Graph, c: &CostFunction) -> Result<Scaled> {
        let mut edges = c.candidates(g);
        edges.sort_by(|a, b| c.get(*a).cmp(&c.get(*b)).then(a.cmp(b)));
        let denom = edges
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(c.get(*e).expect("finite").denom()));
        let mut cost = Vec::with_capacity(edges.len());
        for e in &edges {
            let r = c.get(*e).expect("finite");
            let v = r.numer() * (&denom / r.denom());
            let v = v.to_u128().ok_or_else(|| Error::BudgetExceeded("cost too large".into()))?;
            cost.push(v);
        }
        let ends = edges.iter().map(|e| e.ends()).collect();
        Ok(Scaled { edges, ends, cost, denom })
    }

    fn unscale(&self, v: u128) -> Rat {
        Rat::new(BigInt::from(v), self.denom.clone())
    }

    fn graph_with(&self, base: &MaskGraph, chosen: u64) -> MaskGraph {
        let mut mg = base.clone();
        for i in mask::members(chosen) {
            let (u, v) = self.ends[i];
            mg.add_edge(u, v);
        }
        mg
    }
}

pub fn exact_opt(g: &Graph, k: usize, c: &CostFunction) -> Result<OracleResult> {
    exact_opt_with(g, k, c, OracleMode::Auto, OracleBudget::default())
}

pub fn exact_opt_with(
    g: &Graph,
    k: usize,
    c: &CostFunction,
    mode: OracleMode,
    budget: OracleBudget,
) -> Result<OracleResult> {
    let base = g
        .mask_graph()
        .ok_or_else(|| Error::BudgetExceeded(format!("n = {} exceeds 64", g.n())))?;
    let sc = Scaled::new(g, c)?;
    let m = sc.edges.len();
    if m > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "{m} candidate edges exceed the budget of {}",
            budget.max_candidates
        )));
    }
    if mask::binomial(g.n(), k.saturating_sub(1)) > 1_000_000 {
        return Err(Error::BudgetExceeded(format!("connectivity checks too large for n = {}", g.n())));
    }
    let exhaustive = match mode {
        OracleMode::Exhaustive => true,
        OracleMode::BranchAndBound => false,
        OracleMode::Auto => m <= 20,
    };
    let found = if exhaustive {
        if m > 24 {
            return Err(Error::BudgetExceeded(format!("{m} candidates for exhaustive search")));
        }
        exhaustive_search(&base, k, &sc)
    } else {
        let mut bb = BranchBound { g, c, base: &base, k, sc: &sc, best: None, explored: 0, budget };
        bb.search(0, 0, 0)?;
        (bb.best, bb.explored)
    };
    let (best, explored) = found;
    Ok(match best {
        None => OracleResult { cost: None, edges: Vec::new(), explored },
        Some((v, chosen)) => {
            let mut edges: Vec<Edge> = mask::members(chosen).map(|i| sc.edges[i]).collect();
            edges.sort_unstable();
            OracleResult { cost: Some(sc.unscale(v)), edges, explored }
        }
    })
}

fn exhaustive_search(base: &MaskGraph, k: usize, sc: &Scaled) -> (Option<(u128, u64)>, u64) {
    let m = sc.edges.len();
    let mut sums = vec![0u128; 1 << m];
    for s in 1..(1usize << m) {
        let low = s.trailing_zeros() as usize;
        sums[s] = sums[s & (s - 1)] + sc.cost[low];
    }
    let mut best: Option<(u128, u64)> = None;
    let mut explored = 0;
    for s in 0..(1usize << m) {
        if best.is_some_and(|(b, _)| sums[s] >= b) {
            continue;
        }
        explored += 1;
        if sc.graph_with(base, s as u64).is_k_connected(k) {
            best = Some((sums[s], s as u64));
        }
    }
    (best, explored)
}

struct BranchBound<'a> {
    g: &'a Graph,
    c: &'a CostFunction,
    base: &'a MaskGraph,
    k: usize,
    sc: &'a Scaled,
    best: Option<(u128, u64)>,
    explored: u64,
    budget: OracleBudget,
}

impl BranchBound<'_> {
    /// Candidates in `chosen` are bought, those in `banned` are excluded.
    fn search(&mut self, chosen: u64, banned: u64, cost: u128) -> Result<()> {
        self.explored += 1;
        if self.explored > self.budget.max_nodes {
            return Err(Error::BudgetExceeded(format!("{} search nodes", self.budget.max_nodes)));
        }
        if self.best.is_some_and(|(b, _)| cost >= b) {
            return Ok(());
        }
        let m = self.sc.edges.len();
        let free = mask::full_mask(m) & !chosen & !banned;
        let cur = self.sc.graph_with(self.base, chosen);
        if cur.is_k_connected(self.k) {
            self.best = Some((cost, chosen));
            return Ok(());
        }
        if !self.sc.graph_with(&cur, free).is_k_connected(self.k) {
            return Ok(());
        }
        if self.budget.lp_bound && self.lp_prunes(chosen, free, cost)? {
            return Ok(());
        }
        let Some(branch) = self.branching_candidates(&cur, free) else {
            return Ok(());
        };
        let mut excluded = banned;
        for i in branch {
            self.search(chosen | 1 << i, excluded, cost + self.sc.cost[i])?;
            excluded |= 1 << i;
        }
        Ok(())
    }

    /// Undecided candidates covering a violated set-pair of `cur`, cheapest
    /// first; the pair with the fewest such candidates is chosen.
    fn branching_candidates(&self, cur: &MaskGraph, free: u64) -> Option<Vec<usize>> {
        let n = cur.n();
        let full = cur.full();
        let mut best: Option<Vec<usize>> = None;
        let cuts: Box<dyn Iterator<Item = u64>> = if n < self.k + 1 {
            Box::new(std::iter::empty())
        } else {
            Box::new(mask::subsets_of_size(n, self.k - 1))
        };
        for cut in cuts {
            let alive = full & !cut;
            if cur.connected_within(alive) {
                continue;
            }
            let side = component(cur, alive);
            let rest = alive & !side;
            let covering: Vec<usize> = mask::members(free)
                .filter(|&i| {
                    let (u, v) = self.sc.ends[i];
                    let (a, b) = (1u64 << u, 1u64 << v);
                    (side & a != 0 && rest & b != 0) || (side & b != 0 && rest & a != 0)
                })
                .collect();
            if best.as_ref().map_or(true, |b| covering.len() < b.len()) {
                let done = covering.len() <= 1;
                best = Some(covering);
                if done {
                    break;
                }
            }
        }
        best
    }

    fn lp_prunes(&self, chosen: u64, free: u64, cost: u128) -> Result<bool> {
        let Some((b, _)) = self.best else {
            return Ok(false);
        };
        let cur = self.g.with_edges(mask::members(chosen).map(|i| &self.sc.edges[i]));
        let mut residual = CostFunction::new();
        for i in mask::members(free) {
            residual.set(self.sc.edges[i], self.c.get(self.sc.edges[i]).cloned().expect("finite"))?;
        }
        let lp = match solve_lpvc(&cur, self.k, &residual) {
            Ok(lp) => lp,
            Err(Error::Infeasible) => return Ok(true),
            Err(e) => return Err(e),
        };
        Ok(self.sc.unscale(cost) + lp.objective >= self.sc.unscale(b))
    }
}

fn component(g: &MaskGraph, alive: u64) -> u64 {
    let start = alive & alive.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for v in mask::members(frontier) {
            next |= g.adj(v);
        }
        next &= alive & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Oracle optimum as a plain rational, or `Rat::zero()` for an already
/// k-connected input. Errors on infeasible instances.
pub fn opt_cost(g: &Graph, k: usize, c: &CostFunction) -> Result<Rat> {
    exact_opt(g, k, c)?.cost.ok_or(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn complete_graph_costs_nothing() {
        for k in 1..4 {
            let r = exact_opt(&Graph::complete(k + 1), k, &CostFunction::new()).unwrap();
            assert_eq!(r.cost, Some(crate::rational::zero()));
            assert!(r.edges.is_empty());
        }
    }

    #[test]
    fn path_forced_edge() {
        let g = Graph::path(3);
        let mut c = CostFunction::new();
        c.set(Edge::new(0, 2), int(5)).unwrap();
        for mode in [OracleMode::Exhaustive, OracleMode::BranchAndBound] {
            let r = exact_opt_with(&g, 2, &c, mode, OracleBudget::default()).unwrap();
            assert_eq!(r.cost, Some(int(5)));
            assert_eq!(r.edges, vec![Edge::new(0, 2)]);
        }
    }

    #[test]
    fn modes_agree_on_cycle() {
        let g = Graph::cycle(6);
        let mut c = CostFunction::new();
        for (i, e) in g.non_edges().enumerate() {
            c.set(e, rat(1 + (i as i64 * 7) % 5, 2)).unwrap();
        }
        let a = exact_opt_with(&g, 3, &c, OracleMode::Exhaustive, OracleBudget::default()).unwrap();
        let lp = OracleBudget { lp_bound: true, ..Default::default() };
        let b = exact_opt_with(&g, 3, &c, OracleMode::BranchAndBound, lp).unwrap();
        assert_eq!(a.cost, b.cost);
        assert!(a.cost.is_some());
    }

    #[test]
    fn infeasible_reports_none() {
        let r = exact_opt(&Graph::path(3), 2, &CostFunction::new()).unwrap();
        assert_eq!(r.cost, None);
    }
}
