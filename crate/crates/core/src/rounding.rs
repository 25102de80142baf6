//! Iterative rounding: solve the cut LP, buy every edge with `x_e >= 1/2`,
//! repeat on the augmented graph.

use std::fmt;

use num_traits::Zero;

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::graph::{is_k_connected, Edge, Graph, NodeSet};
use crate::lp::{max_fractional_edge, solve_lpvc_with, LpOptions};
use crate::rational::{fmt_rat, half, Rat};
use crate::rogue::{find_rogue_from_fractional, is_rogue};

#[derive(Debug, Clone, Copy, Default)]
pub struct RoundingConfig {
    /// Round only the largest entry per iteration instead of every entry >= 1/2.
    pub one_edge: bool,
    pub lp: LpOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundingOutcome {
    Success { edges: Vec<Edge>, cost: Rat },
    /// Every LP entry fell below one half; `rogue` is a rogue set of both the
    /// working graph and the starting graph.
    Stalled { rogue: NodeSet, partial: Vec<Edge> },
}

impl RoundingOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, RoundingOutcome::Success { .. })
    }
}

/// One line of the per-iteration trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub iter: usize,
    pub objective: Rat,
    pub rounded: usize,
    pub max: Rat,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "iter {} obj {} rounded {} max {}",
            self.iter,
            fmt_rat(&self.objective),
            self.rounded,
            fmt_rat(&self.max)
        )
    }
}

#[derive(Debug, Clone)]
pub struct RoundingRun {
    pub outcome: RoundingOutcome,
    pub trace: Vec<TraceLine>,
    /// LP optimum of the starting graph, a lower bound on its optimum.
    pub first_objective: Option<Rat>,
}

pub fn iterative_round(g: &Graph, k: usize, c: &CostFunction) -> Result<RoundingRun> {
    iterative_round_with(g, k, c, RoundingConfig::default())
}

pub fn iterative_round_with(
    g: &Graph,
    k: usize,
    c: &CostFunction,
    cfg: RoundingConfig,
) -> Result<RoundingRun> {
    let cap = c.candidates(g).len() + 1;
    let mut work = g.clone();
    let mut bought: Vec<Edge> = Vec::new();
    let mut trace = Vec::new();
    let mut first_objective = None;
    for iter in 0..cap {
        if is_k_connected(&work, k) {
            bought.sort_unstable();
            let cost = c.total(&bought).expect("bought edges are candidates");
            let outcome = RoundingOutcome::Success { edges: bought, cost };
            return Ok(RoundingRun { outcome, trace, first_objective });
        }
        let sol = solve_lpvc_with(&work, k, c, cfg.lp)?;
        first_objective.get_or_insert_with(|| sol.objective.clone());
        let (top, max) = max_fractional_edge(&sol.x)?;
        let picked: Vec<Edge> = if max < half() {
            Vec::new()
        } else if cfg.one_edge {
            vec![top]
        } else {
            sol.x.iter().filter(|(_, v)| **v >= half()).map(|(e, _)| e).collect()
        };
        trace.push(TraceLine { iter, objective: sol.objective.clone(), rounded: picked.len(), max });
        if picked.is_empty() {
            let rogue = find_rogue_from_fractional(&work, k, &sol.x).ok_or(Error::NoRogueFound)?;
            if !is_rogue(g, k, &rogue) {
                return Err(Error::NoRogueFound);
            }
            bought.sort_unstable();
            let outcome = RoundingOutcome::Stalled { rogue, partial: bought };
            return Ok(RoundingRun { outcome, trace, first_objective });
        }
        for e in picked {
            work.add_edge(e);
            bought.push(e);
        }
    }
    Err(Error::IterationLimit(cap))
}

/// Cost of a rounding outcome (the partial set when stalled).
pub fn outcome_cost(c: &CostFunction, out: &RoundingOutcome) -> Rat {
    match out {
        RoundingOutcome::Success { cost, .. } => cost.clone(),
        RoundingOutcome::Stalled { partial, .. } => c.total(partial).unwrap_or_else(Rat::zero),
    }
}
