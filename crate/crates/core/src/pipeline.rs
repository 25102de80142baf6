//! End-to-end augmentation: ROOTED(R0), rogue elimination with ROOTED(R1),
//! then iterative rounding.

use std::fmt::Write as _;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::graph::{find_small_cut, is_k_connected, min_vertex_cut, Edge, Graph, NodeSet, VertexCut};
use crate::outconnect::rooted;
use crate::rational::{fmt_rat, Rat};
use crate::rogue::compute_b;
use crate::rounding::{iterative_round_with, RoundingConfig, RoundingOutcome, TraceLine};
use crate::toolkit::oracle::{exact_opt, exact_opt_with, OracleBudget, OracleMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Guaranteed,
    BestEffort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Forbidden-set restarts.
    SmallN,
    /// Terminals chosen outside the low-h envelope B.
    LargeN,
    /// Nothing to eliminate: the input is already k-connected or k = 1.
    Direct,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::SmallN => "small-n",
            Branch::LargeN => "large-n",
            Branch::Direct => "direct",
        }
    }
}

/// Smallest n for which the approximation guarantee holds.
pub fn guaranteed_threshold(k: usize) -> usize {
    k.pow(3) * k.saturating_sub(1) + k
}

/// Smallest n for which the B-set branch is used.
pub fn large_threshold(k: usize) -> usize {
    k.pow(4) * k.saturating_sub(1) + k
}

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub mode: Option<Mode>,
    /// First terminal set; defaults to the k smallest nodes (or a seeded choice).
    pub r0: Option<NodeSet>,
    /// Seed for terminal choices; `None` picks lexicographically.
    pub seed: Option<u64>,
    /// Run the B-set branch whenever |V - B| >= k, even below its threshold.
    pub force_large: bool,
    pub rounding: RoundingConfig,
}

impl PipelineOptions {
    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::Guaranteed)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    /// Whether n is in the regime covered by the approximation guarantee.
    pub regime: bool,
    pub branch: Branch,
    pub r0: NodeSet,
    pub r1: NodeSet,
    pub b: Option<NodeSet>,
    pub restarts: usize,
    pub forbidden: NodeSet,
    pub f0: Vec<Edge>,
    pub f1: Vec<Edge>,
    pub f2: Vec<Edge>,
    pub cost0: Rat,
    pub cost1: Rat,
    pub cost2: Rat,
    /// The exact oracle finished the job (best-effort only).
    pub fallback: bool,
    pub trace: Vec<TraceLine>,
    /// `(u, w, min cut)` for every non-adjacent pair of the output graph.
    pub certificates: Vec<(usize, usize, usize)>,
    pub connected: bool,
}

impl PipelineReport {
    pub fn edges(&self) -> Vec<Edge> {
        let mut all: Vec<Edge> = self.f0.iter().chain(&self.f1).chain(&self.f2).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn total(&self) -> Rat {
        &self.cost0 + &self.cost1 + &self.cost2
    }

    pub fn to_text(&self) -> String {
        let set = |s: &[Edge]| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "report 1");
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "k {}", self.k);
        let mode = match self.mode {
            Mode::Guaranteed => "guaranteed",
            Mode::BestEffort => "best-effort",
        };
        let _ = writeln!(out, "mode {mode}");
        let _ = writeln!(out, "regime {}", self.regime);
        let _ = writeln!(out, "branch {}", self.branch.name());
        let _ = writeln!(out, "r0 {}", self.r0);
        let _ = writeln!(out, "r1 {}", self.r1);
        match &self.b {
            Some(b) => writeln!(out, "b {b}"),
            None => writeln!(out, "b -"),
        }
        .ok();
        let _ = writeln!(out, "restarts {}", self.restarts);
        let _ = writeln!(out, "forbidden {}", self.forbidden);
        let _ = writeln!(out, "f0 {}", set(&self.f0));
        let _ = writeln!(out, "cost0 {}", fmt_rat(&self.cost0));
        let _ = writeln!(out, "f1 {}", set(&self.f1));
        let _ = writeln!(out, "cost1 {}", fmt_rat(&self.cost1));
        let _ = writeln!(out, "f2 {}", set(&self.f2));
        let _ = writeln!(out, "cost2 {}", fmt_rat(&self.cost2));
        let _ = writeln!(out, "total {}", fmt_rat(&self.total()));
        let _ = writeln!(out, "fallback {}", self.fallback);
        let _ = writeln!(out, "connected {}", self.connected);
        for (u, w, v) in &self.certificates {
            let _ = writeln!(out, "cert {u} {w} {v}");
        }
        out
    }
}

/// Picks `k` nodes from `eligible`: the smallest ones, or a seeded sample.
fn choose(eligible: &NodeSet, k: usize, rng: &mut Option<ChaCha8Rng>) -> Option<NodeSet> {
    if eligible.len() < k {
        return None;
    }
    let mut pool: Vec<usize> = eligible.iter().collect();
    if let Some(rng) = rng {
        pool.shuffle(rng);
    }
    Some(pool.into_iter().take(k).collect())
}

fn certificates(g: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for w in u + 1..g.n() {
            if !g.has_edge(u, w) {
                out.push((u, w, min_vertex_cut(g, u, w).expect("non-adjacent").value));
            }
        }
    }
    out
}

struct Phase2 {
    f1: Vec<Edge>,
    cost1: Rat,
    f2: Vec<Edge>,
    trace: Vec<TraceLine>,
    outcome: RoundingOutcome,
    r1: NodeSet,
}

fn phase_two(
    g0: &Graph,
    k: usize,
    c: &CostFunction,
    r1: NodeSet,
    cfg: RoundingConfig,
) -> Result<Phase2> {
    let rr = rooted(g0, c, &r1, k)?;
    let g1 = g0.with_edges(&rr.edges);
    let run = iterative_round_with(&g1, k, c, cfg)?;
    let f2 = match &run.outcome {
        RoundingOutcome::Success { edges, .. } => edges.clone(),
        RoundingOutcome::Stalled { partial, .. } => partial.clone(),
    };
    Ok(Phase2 { f1: rr.edges, cost1: rr.cost, f2, trace: run.trace, outcome: run.outcome, r1 })
}

/// Augments `g` to k-connectivity.
pub fn augment(g: &Graph, k: usize, c: &CostFunction, opts: &PipelineOptions) -> Result<PipelineReport> {
    let n = g.n();
    let mode = opts.mode();
    if k == 0 {
        return Err(Error::InvalidGraph("k must be at least 1".into()));
    }
    let regime = n >= guaranteed_threshold(k);
    if mode == Mode::Guaranteed && !regime {
        return Err(Error::RegimeViolation { n, k, required: guaranteed_threshold(k) });
    }
    if n < k + 1 || !is_k_connected(&g.with_edges(&c.candidates(g)), k) {
        return Err(Error::Infeasible);
    }
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    let r0 = match &opts.r0 {
        Some(r) if r.len() != k => {
            return Err(Error::BadTerminalCount { expected: k, got: r.len() });
        }
        Some(r) => r.clone(),
        None => choose(&NodeSet::full(n), k, &mut rng).expect("n >= k + 1"),
    };
    let mut rep = PipelineReport {
        n,
        k,
        mode,
        regime,
        branch: Branch::Direct,
        r0: r0.clone(),
        r1: NodeSet::new(),
        b: None,
        restarts: 0,
        forbidden: NodeSet::new(),
        f0: Vec::new(),
        f1: Vec::new(),
        f2: Vec::new(),
        cost0: Rat::zero(),
        cost1: Rat::zero(),
        cost2: Rat::zero(),
        fallback: false,
        trace: Vec::new(),
        certificates: Vec::new(),
        connected: false,
    };

    if is_k_connected(g, k) || k == 1 {
        // every graph is rogue-free for k = 1
        let run = iterative_round_with(g, k, c, opts.rounding)?;
        match run.outcome {
            RoundingOutcome::Success { edges, cost } => {
                rep.f2 = edges;
                rep.cost2 = cost;
            }
            RoundingOutcome::Stalled { rogue, .. } => {
                return Err(Error::UnexpectedStall(rogue.as_slice().to_vec()));
            }
        }
        rep.trace = run.trace;
        return finish(g, rep);
    }

    let r = rooted(g, c, &r0, k)?;
    rep.f0 = r.edges;
    rep.cost0 = r.cost;
    let g0 = g.with_edges(&rep.f0);

    let large = n >= large_threshold(k) || opts.force_large;
    if large {
        let b = compute_b(&g0, k).b;
        let eligible = b.complement(n);
        rep.b = Some(b);
        if let Some(r1) = choose(&eligible, k, &mut rng) {
            rep.branch = Branch::LargeN;
            let p = phase_two(&g0, k, c, r1, opts.rounding)?;
            if let RoundingOutcome::Stalled { rogue, .. } = &p.outcome {
                return Err(Error::UnexpectedStall(rogue.as_slice().to_vec()));
            }
            install(&mut rep, c, p);
            return finish(g, rep);
        }
        if n >= large_threshold(k) {
            return Err(Error::BestEffortExhausted(format!(
                "only {} nodes outside B, need {k}",
                eligible.len()
            )));
        }
    }

    rep.branch = Branch::SmallN;
    let budget = (k.pow(3) * (k - 1)).saturating_sub(k);
    let mut forbidden = r0.clone();
    loop {
        let eligible = forbidden.complement(n);
        let Some(r1) = choose(&eligible, k, &mut rng) else {
            rep.forbidden = forbidden;
            if mode == Mode::Guaranteed {
                return Err(Error::RestartBudgetExceeded(budget));
            }
            return exact_fallback(g, &g0, k, c, rep);
        };
        let p = phase_two(&g0, k, c, r1, opts.rounding)?;
        match &p.outcome {
            RoundingOutcome::Success { .. } => {
                rep.forbidden = forbidden;
                install(&mut rep, c, p);
                return finish(g, rep);
            }
            RoundingOutcome::Stalled { rogue, .. } => {
                let grown = forbidden.union(rogue);
                if grown.len() == forbidden.len() {
                    return Err(Error::UnexpectedStall(rogue.as_slice().to_vec()));
                }
                forbidden = grown;
                rep.restarts += 1;
                if mode == Mode::Guaranteed && rep.restarts > budget {
                    return Err(Error::RestartBudgetExceeded(budget));
                }
            }
        }
    }
}

fn install(rep: &mut PipelineReport, c: &CostFunction, p: Phase2) {
    rep.r1 = p.r1;
    rep.f1 = p.f1;
    rep.cost1 = p.cost1;
    rep.cost2 = c.total(&p.f2).expect("bought edges are candidates");
    rep.f2 = p.f2;
    rep.trace = p.trace;
}

fn exact_fallback(
    g: &Graph,
    g0: &Graph,
    k: usize,
    c: &CostFunction,
    mut rep: PipelineReport,
) -> Result<PipelineReport> {
    let res = exact_opt(g0, k, c).map_err(|e| {
        Error::BestEffortExhausted(format!("no eligible terminal set left and {e}"))
    })?;
    if res.cost.is_none() {
        return Err(Error::Infeasible);
    }
    rep.fallback = true;
    rep.cost2 = c.total(&res.edges).expect("oracle edges are candidates");
    rep.f2 = res.edges;
    finish(g, rep)
}

fn finish(g: &Graph, mut rep: PipelineReport) -> Result<PipelineReport> {
    let out = g.with_edges(&rep.edges());
    rep.connected = is_k_connected(&out, rep.k);
    rep.certificates = certificates(&out);
    Ok(rep)
}

/// Result of checking a proposed augmentation.
#[derive(Debug, Clone)]
pub struct Verification {
    pub connected: bool,
    /// Cost of `F`; `None` when it contains a non-purchasable pair.
    pub cost: Option<Rat>,
    /// A pair whose minimum node cut is below k, when not connected.
    pub witness: Option<(usize, usize, VertexCut)>,
    pub lp_bound: Option<Rat>,
    pub opt: Option<Rat>,
    /// cost / opt when both are known and opt > 0.
    pub ratio: Option<Rat>,
}

/// Checks `G + F`, and bounds its cost against the LP and, within the oracle
/// budget, the exact optimum.
pub fn verify(g: &Graph, k: usize, f: &[Edge], c: &CostFunction, budget: Option<OracleBudget>) -> Verification {
    let out = g.with_edges(f);
    let connected = is_k_connected(&out, k);
    let witness = if connected { None } else { find_small_cut(&out, k) };
    let cost = c.total(f.iter().filter(|e| !g.contains_edge(**e)));
    let lp_bound = crate::lp::solve_lpvc(g, k, c).ok().map(|s| s.objective);
    let opt = budget
        .and_then(|b| exact_opt_with(g, k, c, OracleMode::Auto, b).ok())
        .and_then(|r| r.cost);
    let ratio = match (&cost, &opt) {
        (Some(c), Some(o)) if !o.is_zero() => Some(c / o),
        _ => None,
    };
    Verification { connected, cost, witness, lp_bound, opt, ratio }
}
