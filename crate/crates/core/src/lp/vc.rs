//! The set-pair cut LP for k-connectivity augmentation, solved by row
//! generation with a max-flow separation oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::flow::{node_in, node_out, FlowNetwork};
use crate::graph::{is_k_connected, Edge, Graph, NodeSet};
use crate::lp::simplex::{DualSimplex, LpStatus};
use crate::rational::{fmt_rat, half, int, one, Rat};
use crate::setpair::{covers, deficiency, SetPair};

/// Candidate-edge values of a point of the cut LP. Existing graph edges never
/// appear; missing candidates read as zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FractionalSolution {
    values: BTreeMap<Edge, Rat>,
}

impl FractionalSolution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = (Edge, Rat)>) -> Self {
        FractionalSolution { values: values.into_iter().collect() }
    }

    pub fn set(&mut self, e: Edge, v: Rat) {
        self.values.insert(e, v);
    }

    pub fn get(&self, e: Edge) -> Rat {
        self.values.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &Rat)> {
        self.values.iter().map(|(e, v)| (*e, v))
    }

    pub fn support(&self) -> Vec<Edge> {
        self.values.iter().filter(|(_, v)| v.is_positive()).map(|(e, _)| *e).collect()
    }

    /// x(δ(𝕌)).
    pub fn coverage(&self, p: &SetPair) -> Rat {
        self.values.iter().filter(|(e, _)| covers(**e, p)).map(|(_, v)| v.clone()).sum()
    }

    pub fn cost(&self, c: &CostFunction) -> Rat {
        self.values
            .iter()
            .filter(|(_, v)| v.is_positive())
            .map(|(e, v)| c.get(*e).expect("support edges have finite cost") * v)
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }
}

/// A generated row `x(δ(𝕌)) >= p(𝕌)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub setpair: SetPair,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationResult {
    Feasible,
    /// `slack = x(δ(𝕌)) - p(𝕌) < 0`.
    Violated { setpair: SetPair, slack: Rat },
}

/// Minimum over set-pairs 𝕌 with `u ∈ U0`, `w ∈ U1` of `|Γ(𝕌)| + x(δ(𝕌))`,
/// together with the set-pair whose first piece is inclusion-minimal.
/// The flow stops early once it reaches `limit`.
pub(crate) fn fractional_min_cut(
    g: &Graph,
    x: &FractionalSolution,
    u: usize,
    w: usize,
    limit: Option<&Rat>,
) -> (Rat, NodeSet, NodeSet) {
    let n = g.n();
    let total: Rat = x.iter().map(|(_, v)| v.clone()).sum();
    let inf = int(n as i64 + 1) + total;
    let mut net = FlowNetwork::<Rat>::new(2 * n);
    for v in 0..n {
        let cap = if v == u || v == w { inf.clone() } else { one() };
        net.add_arc(node_in(v), node_out(v), cap);
    }
    for e in g.edges() {
        let (a, b) = e.ends();
        net.add_arc(node_out(a), node_in(b), inf.clone());
        net.add_arc(node_out(b), node_in(a), inf.clone());
    }
    for (e, v) in x.iter() {
        if v.is_positive() && !g.contains_edge(e) {
            let (a, b) = e.ends();
            net.add_arc(node_out(a), node_in(b), v.clone());
            net.add_arc(node_out(b), node_in(a), v.clone());
        }
    }
    let value = net.max_flow(node_out(u), node_in(w), limit);
    let reach = net.reachable_from(node_out(u));
    let source: NodeSet = (0..n).filter(|&v| reach[node_out(v)]).collect();
    let cut: NodeSet = (0..n).filter(|&v| reach[node_in(v)] && !reach[node_out(v)]).collect();
    (value, source, cut)
}

/// Finds a most-violated set-pair constraint for `x`, or reports that every
/// constraint holds. Ties go to the smaller node cut, then to the
/// lexicographically first terminal pair.
pub fn separate(g: &Graph, k: usize, x: &FractionalSolution) -> SeparationResult {
    let n = g.n();
    let target = int(k as i64);
    let mut best: Option<(Rat, usize, SetPair)> = None;
    for u in 0..n {
        for w in u + 1..n {
            if g.has_edge(u, w) {
                continue;
            }
            let (value, source, cut) = fractional_min_cut(g, x, u, w, Some(&target));
            if value >= target {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bv, bc, _)) => value < *bv || (value == *bv && cut.len() < *bc),
            };
            if better {
                let sink = source.union(&cut).complement(n);
                let sp = SetPair::from_pieces_unchecked(source, sink);
                best = Some((value, cut.len(), sp));
            }
        }
    }
    match best {
        None => SeparationResult::Feasible,
        Some((value, _, setpair)) => SeparationResult::Violated { setpair, slack: value - target },
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub max_rounds: usize,
    pub max_pivots: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { max_rounds: 10_000, max_pivots: 1_000_000 }
    }
}

/// Basic optimal solution of the cut LP together with the rows that certify it.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: FractionalSolution,
    pub objective: Rat,
    pub candidates: Vec<Edge>,
    pub rows: Vec<ConstraintRow>,
    pub rounds: usize,
}

impl LpSolution {
    /// Restricted LP in LP text format with exact `p/q` coefficients.
    pub fn to_lp_text(&self, g: &Graph, k: usize, c: &CostFunction) -> String {
        let name = |e: &Edge| format!("x_{}_{}", e.u(), e.v());
        let mut out = String::new();
        let _ = writeln!(out, "\\ restricted cut LP, n = {} k = {}", g.n(), k);
        let _ = writeln!(out, "minimize");
        let terms: Vec<String> = self
            .candidates
            .iter()
            .map(|e| format!("{} {}", fmt_rat(c.get(*e).expect("finite cost")), name(e)))
            .collect();
        let _ = writeln!(out, " obj: {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
        let _ = writeln!(out, "subject to");
        for (i, row) in self.rows.iter().enumerate() {
            let lhs: Vec<String> =
                self.candidates.iter().filter(|e| covers(**e, &row.setpair)).map(name).collect();
            let _ = writeln!(out, " r{i}: {} >= {}/1", lhs.join(" + "), row.rhs);
        }
        let _ = writeln!(out, "bounds");
        for e in &self.candidates {
            let _ = writeln!(out, " 0 <= {} <= 1", name(e));
        }
        let _ = writeln!(out, "end");
        out
    }
}

/// Solves the cut LP (with `0 <= x <= 1`) to a basic optimum by row generation.
pub fn solve_lpvc(g: &Graph, k: usize, c: &CostFunction) -> Result<LpSolution> {
    solve_lpvc_with(g, k, c, LpOptions::default())
}

pub fn solve_lpvc_with(g: &Graph, k: usize, c: &CostFunction, opts: LpOptions) -> Result<LpSolution> {
    let candidates = c.candidates(g);
    if is_k_connected(g, k) {
        let x = FractionalSolution::from_values(candidates.iter().map(|&e| (e, Rat::zero())));
        return Ok(LpSolution { x, objective: Rat::zero(), candidates, rows: Vec::new(), rounds: 0 });
    }
    if !is_k_connected(&g.with_edges(&candidates), k) {
        return Err(Error::Infeasible);
    }
    let costs = candidates.iter().map(|e| c.get(*e).cloned().expect("finite")).collect();
    let mut lp = DualSimplex::new(costs, vec![Some(one()); candidates.len()])
        .with_max_pivots(opts.max_pivots);
    let mut rows = Vec::new();
    for round in 0..opts.max_rounds {
        if lp.solve()? == LpStatus::Infeasible {
            return Err(Error::Infeasible);
        }
        let x = FractionalSolution::from_values(candidates.iter().copied().zip(lp.solution()));
        match separate(g, k, &x) {
            SeparationResult::Feasible => {
                return Ok(LpSolution { objective: lp.objective(), x, candidates, rows, rounds: round });
            }
            SeparationResult::Violated { setpair, .. } => {
                let rhs = deficiency(g, k, &setpair);
                let coeffs: Vec<(usize, Rat)> = candidates
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| covers(**e, &setpair))
                    .map(|(i, _)| (i, one()))
                    .collect();
                if coeffs.is_empty() {
                    return Err(Error::Infeasible);
                }
                lp.add_row(coeffs, int(rhs as i64));
                rows.push(ConstraintRow { setpair, rhs });
            }
        }
    }
    Err(Error::IterationLimit(opts.max_rounds))
}

/// Largest entry (lexicographically smallest edge on ties).
pub fn max_fractional_edge(x: &FractionalSolution) -> Result<(Edge, Rat)> {
    let mut best: Option<(Edge, &Rat)> = None;
    for (e, v) in x.iter() {
        if !v.is_positive() {
            continue;
        }
        if best.map_or(true, |(_, b)| v > b) {
            best = Some((e, v));
        }
    }
    best.map(|(e, v)| (e, v.clone())).ok_or(Error::EmptySupport)
}

/// Whether the largest entry is at least one half, compared exactly.
pub fn has_half_edge(x: &FractionalSolution) -> bool {
    max_fractional_edge(x).map(|(_, v)| v >= half()).unwrap_or(false)
}
