//! Named property suites. Each suite runs seeded cases in parallel and
//! reports failures together with a reproducer instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::graph::{deficient_sets, gamma, is_k_connected, outside, Edge, Graph, NodeSet};
use crate::lp::{separate, solve_lpvc, FractionalSolution, SeparationResult};
use crate::mask::MaskGraph;
use crate::outconnect::rooted;
use crate::pipeline::{augment, Branch, Mode, PipelineOptions};
use crate::rational::{fmt_rat, half, int, rat, Rat};
use crate::rogue::{
    b_exhaustive, compute_b, enumerate_rogue_sets, is_independence_free,
    is_independence_free_brute, is_rogue_free, min_h_containing, min_h_exhaustive, rogue_union,
};
use crate::rounding::{iterative_round_with, RoundingConfig, RoundingOutcome};
use crate::setpair::{classify, covers, meeting_points, uncross, PairRelation, PiecePair, SetPair};
use crate::toolkit::gen::{gen_random, GenParams};
use crate::toolkit::instance::Instance;
use crate::toolkit::oracle::{exact_opt, exact_opt_with, OracleBudget, OracleMode};

pub const SUITES: &[&str] = &[
    "pipeline-ratio",
    "rooted-ratio",
    "half-edge",
    "rooted-terminals",
    "large-n-rogue-free",
    "rogue-union",
    "uncross-identities",
    "independence-free",
    "h-min",
    "separation",
    "oracle-consistency",
];

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Overrides the suite's default case count.
    pub cases: Option<usize>,
    /// Where failing cases are written; nothing is written when `None`.
    pub dump_dir: Option<PathBuf>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { seed: 1, cases: None, dump_dir: None }
    }
}

#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub case: usize,
    pub detail: String,
    pub reproducer: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<CaseFailure>,
    /// Largest value seen for each named statistic.
    pub maxima: BTreeMap<&'static str, Rat>,
    /// Number of cases carrying each tag.
    pub tags: BTreeMap<&'static str, usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} cases, {} skipped, {} failures: {}",
            self.suite,
            self.cases,
            self.skipped,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for (name, v) in &self.maxima {
            let _ = writeln!(out, "  max {name} {} (~{:.4})", fmt_rat(v), approx(v));
        }
        for (tag, count) in &self.tags {
            let _ = writeln!(out, "  count {tag} {count}");
        }
        for f in &self.failures {
            let _ = write!(out, "  fail case {}: {}", f.case, f.detail);
            match &f.reproducer {
                Some(p) => writeln!(out, " [{}]", p.display()),
                None => writeln!(out),
            }
            .ok();
        }
        out
    }
}

fn approx(v: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[derive(Default)]
struct Case {
    stats: Vec<(&'static str, Rat)>,
    tags: Vec<&'static str>,
    skipped: bool,
}

impl Case {
    fn stat(mut self, name: &'static str, v: Rat) -> Self {
        self.stats.push((name, v));
        self
    }

    fn tag(mut self, t: &'static str) -> Self {
        self.tags.push(t);
        self
    }

    fn skip() -> Self {
        Case { skipped: true, ..Default::default() }
    }
}

struct Fail {
    detail: String,
    instance: Option<Instance>,
}

type CaseResult = std::result::Result<Case, Fail>;

fn fail(detail: impl Into<String>, instance: Option<&Instance>) -> Fail {
    Fail { detail: detail.into(), instance: instance.cloned() }
}

fn graph_fail(detail: impl Into<String>, g: &Graph, k: usize) -> Fail {
    fail(detail, Some(&Instance::new(g.clone(), k, CostFunction::new())))
}

/// Wraps a library error as a case failure.
fn lib<T>(r: Result<T>, inst: &Instance) -> std::result::Result<T, Fail> {
    r.map_err(|e| fail(format!("library error: {e}"), Some(inst)))
}

fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

pub fn run_suite(name: &str, cfg: &HarnessConfig) -> Result<SuiteReport> {
    let (default_cases, f): (usize, fn(usize, u64) -> CaseResult) = match name {
        "pipeline-ratio" => (50, pipeline_ratio),
        "rooted-ratio" => (50, rooted_ratio),
        "half-edge" => (100, half_edge),
        "rooted-terminals" => (60, rooted_terminals),
        "large-n-rogue-free" => (40, large_n_rogue_free),
        "rogue-union" => (60, rogue_union_bound),
        "uncross-identities" => (10_000, uncross_identities),
        "independence-free" => (1000, independence_free),
        "h-min" => (200, h_min),
        "separation" => (100, separation),
        "oracle-consistency" => (100, oracle_consistency),
        _ => return Err(Error::InvalidGraph(format!("unknown suite {name}; known: {}", SUITES.join(", ")))),
    };
    let cases = cfg.cases.unwrap_or(default_cases);
    let results: Vec<(usize, CaseResult)> =
        (0..cases).into_par_iter().map(|i| (i, f(i, case_seed(cfg.seed, i)))).collect();
    let mut rep = SuiteReport {
        suite: name.to_string(),
        cases,
        skipped: 0,
        failures: Vec::new(),
        maxima: BTreeMap::new(),
        tags: BTreeMap::new(),
    };
    for (i, r) in results {
        match r {
            Ok(case) => {
                if case.skipped {
                    rep.skipped += 1;
                }
                for (k, v) in case.stats {
                    let e = rep.maxima.entry(k).or_insert_with(|| v.clone());
                    if v > *e {
                        *e = v;
                    }
                }
                for t in case.tags {
                    *rep.tags.entry(t).or_default() += 1;
                }
            }
            Err(f) => {
                let reproducer = match (&cfg.dump_dir, &f.instance) {
                    (Some(dir), Some(inst)) => {
                        std::fs::create_dir_all(dir)?;
                        let path = dir.join(format!("{name}-case{i}.kaug"));
                        inst.write(&path)?;
                        Some(path)
                    }
                    _ => None,
                };
                rep.failures.push(CaseFailure { case: i, detail: f.detail, reproducer });
            }
        }
    }
    Ok(rep)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                g.add_edge(Edge::new(u, v));
            }
        }
    }
    g
}

fn random_set(rng: &mut ChaCha8Rng, pool: &NodeSet, p: f64) -> NodeSet {
    pool.iter().filter(|_| rng.random_bool(p)).collect()
}

fn random_terminals(rng: &mut ChaCha8Rng, n: usize, k: usize) -> NodeSet {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.into_iter().take(k).collect()
}

/// Instance family shared by the two ratio suites.
pub fn ratio_instance(i: usize, seed: u64) -> Instance {
    let mut p = GenParams::new(10 + i % 5, 2, seed);
    p.density = 0.2;
    p.max_purchasable = Some(25);
    gen_random(&p)
}

fn pipeline_ratio(i: usize, seed: u64) -> CaseResult {
    let inst = ratio_instance(i, seed);
    let (g, k, c) = (&inst.graph, inst.k, &inst.costs);
    let opt = lib(exact_opt(g, k, c), &inst)?.cost.ok_or_else(|| fail("generator produced an infeasible instance", Some(&inst)))?;
    let rep = lib(augment(g, k, c, &PipelineOptions::default()), &inst)?;
    if !rep.connected || !is_k_connected(&g.with_edges(&rep.edges()), k) {
        return Err(fail("pipeline output is not k-connected", Some(&inst)));
    }
    let total = rep.total();
    if total > int(6) * &opt {
        return Err(fail(format!("cost {} > 6 * opt {}", fmt_rat(&total), fmt_rat(&opt)), Some(&inst)));
    }
    let mut case = Case::default().tag(rep.branch.name());
    if rep.restarts > 0 {
        case = case.tag("restarted");
    }
    if !opt.is_zero() {
        case = case.stat("ratio", &total / &opt).stat("phase0-ratio", &rep.cost0 / &opt);
    }
    Ok(case)
}

fn rooted_ratio(i: usize, seed: u64) -> CaseResult {
    let inst = ratio_instance(i, seed);
    let (g, k, c) = (&inst.graph, inst.k, &inst.costs);
    let opt = lib(exact_opt(g, k, c), &inst)?.cost.ok_or_else(|| fail("infeasible instance", Some(&inst)))?;
    let r0: NodeSet = (0..k).collect();
    let r = lib(rooted(g, c, &r0, k), &inst)?;
    if r.cost > int(2) * &opt {
        return Err(fail(format!("rooted cost {} > 2 * opt {}", fmt_rat(&r.cost), fmt_rat(&opt)), Some(&inst)));
    }
    let case = Case::default();
    Ok(if opt.is_zero() { case } else { case.stat("ratio", &r.cost / &opt) })
}

/// Random graph made rogue-free by joining rogue sets to nodes outside
/// them; `None` if that already made it k-connected.
/// Thins a complete graph edge by edge, undoing any deletion that creates a
/// rogue set. `None` when the result is still k-connected.
fn rogue_free_instance(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Option<Instance> {
    let mut g = Graph::complete(n);
    let mut order: Vec<Edge> = g.edges().collect();
    order.shuffle(rng);
    let keep = rng.random_range(order.len() / 2..=order.len());
    for &e in &order[..keep] {
        let trial = Graph::new(n, g.edges().filter(|f| *f != e).map(|f| f.ends())).ok()?;
        if is_rogue_free(&trial, k).ok()? {
            g = trial;
        }
    }
    if is_k_connected(&g, k) {
        return None;
    }
    let mut c = CostFunction::new();
    for e in g.non_edges().collect::<Vec<_>>() {
        c.set(e, int(rng.random_range(1..=20))).ok()?;
    }
    Some(Instance::new(g, k, c))
}

/// Cliques of at least k nodes each, all joined to a shared (k-1)-clique,
/// plus a few random edges between them. Every deficient set is a union of
/// whole petals, so the graph is rogue-free.
fn flower_instance(rng: &mut ChaCha8Rng, k: usize) -> Option<Instance> {
    let core = k - 1;
    let mut sizes = Vec::new();
    let mut n = core;
    while sizes.len() < 3 || (n + k <= 12 && sizes.len() < 5 && rng.random_bool(0.5)) {
        let size = if n + k + 1 <= 12 && rng.random_bool(0.5) { k + 1 } else { k };
        sizes.push(size);
        n += size;
    }
    let mut edges = Vec::new();
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
        }
    }
    let mut start = core;
    for size in sizes {
        let petal: Vec<usize> = (start..start + size).collect();
        for (i, &u) in petal.iter().enumerate() {
            edges.extend((0..core).map(|c| (c, u)));
            edges.extend(petal[i + 1..].iter().map(|&v| (u, v)));
        }
        start += size;
    }
    let mut g = Graph::new(n, edges).ok()?;
    for _ in 0..rng.random_range(0..=2) {
        let (u, v) = (rng.random_range(core..n), rng.random_range(core..n));
        if u != v && !g.has_edge(u, v) {
            let mut trial = g.clone();
            trial.add_edge(Edge::new(u, v));
            if !is_k_connected(&trial, k) {
                g = trial;
            }
        }
    }
    let mut c = CostFunction::new();
    for e in g.non_edges().collect::<Vec<_>>() {
        c.set(e, int(rng.random_range(1..=20))).ok()?;
    }
    Some(Instance::new(g, k, c))
}

fn half_edge(i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2 + i % 2;
    let thinned = if (i / 2) % 2 == 0 {
        (0..50).find_map(|_| {
            let n = rng.random_range(k + 4..=11);
            rogue_free_instance(&mut rng, n, k)
        })
    } else {
        None
    };
    let inst = thinned.or_else(|| flower_instance(&mut rng, k));
    let Some(inst) = inst else {
        return Ok(Case::skip());
    };
    let g = &inst.graph;
    if !lib(is_rogue_free(g, k), &inst)? {
        return Err(fail("construction left a rogue set", Some(&inst)));
    }
    let mut case = Case::default().tag(if k == 2 { "k2" } else { "k3" });
    let mut solves = 0;
    let mut fractional = false;
    // the instance costs, then narrow ranges whose ties favour fractional optima
    for hi in [0, 3, 1] {
        let mut inst = inst.clone();
        if hi > 0 {
            for e in g.non_edges().collect::<Vec<_>>() {
                inst.costs.set(e, int(rng.random_range(1..=hi))).expect("nonnegative");
            }
        }
        let cfg = RoundingConfig { one_edge: true, ..Default::default() };
        let run = lib(iterative_round_with(g, k, &inst.costs, cfg), &inst)?;
        for t in &run.trace {
            if t.max < half() {
                return Err(fail(format!("iteration {}: max x_e = {} < 1/2", t.iter, fmt_rat(&t.max)), Some(&inst)));
            }
            fractional |= t.max < int(1);
        }
        solves += run.trace.len();
        let RoundingOutcome::Success { cost, .. } = run.outcome else {
            return Err(fail("rounding stalled on a rogue-free graph", Some(&inst)));
        };
        let lp = run.first_objective.unwrap_or_else(Rat::zero);
        if cost > int(2) * &lp {
            return Err(fail(format!("rounded cost {} > 2 * LP {}", fmt_rat(&cost), fmt_rat(&lp)), Some(&inst)));
        }
        if !lp.is_zero() {
            case = case.stat("cost-over-lp", cost / lp);
        }
    }
    if fractional {
        case = case.tag("fractional-optimum");
    }
    Ok(case.stat("lp-solves", int(solves as i64)))
}

/// Checks that every deficient set-pair of `g` has both pieces meeting `r`.
fn both_pieces_meet(g: &Graph, k: usize, r: &NodeSet) -> Option<String> {
    let mg = MaskGraph::from_graph(g)?;
    let rm = r.to_mask()?;
    let n = g.n();
    let mut bad = None;
    mg.for_each_setpair(|a, b| {
        if bad.is_none() && n - ((a | b).count_ones() as usize) < k && (a & rm == 0 || b & rm == 0) {
            bad = Some(format!("deficient set-pair ({}, {}) misses R = {r}", NodeSet::from_mask(a), NodeSet::from_mask(b)));
        }
    });
    bad
}

fn rooted_terminals(i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2 + i % 2;
    let n = rng.random_range(k + 3..=12);
    let mut p = GenParams::new(n, k, seed);
    p.density = rng.random_range(0.1..0.4);
    p.max_purchasable = Some(25);
    let inst = gen_random(&p);
    let r = random_terminals(&mut rng, n, k);
    let res = lib(rooted(&inst.graph, &inst.costs, &r, k), &inst)?;
    let g1 = inst.graph.with_edges(&res.edges);
    if let Some(msg) = both_pieces_meet(&g1, k, &r) {
        return Err(fail(msg, Some(&inst)));
    }
    Ok(Case::default().stat("added", int(res.edges.len() as i64)))
}

fn large_n_rogue_free(i: usize, seed: u64) -> CaseResult {
    let genuine = i % 10 == 9;
    let n = if genuine { 18 + (i / 10) % 2 } else { 10 + i % 5 };
    let inst = (0..20u64)
        .map(|t| {
            let mut p = GenParams::new(n, 2, seed.wrapping_add(t.wrapping_mul(0x9e37_79b9)));
            p.density = 0.2;
            p.max_purchasable = Some(25);
            gen_random(&p)
        })
        .find(|inst| !is_k_connected(&inst.graph, 2))
        .ok_or_else(|| fail("every draw was already 2-connected", None))?;
    let opts = PipelineOptions {
        mode: Some(if genuine { Mode::Guaranteed } else { Mode::BestEffort }),
        force_large: !genuine,
        ..Default::default()
    };
    let rep = lib(augment(&inst.graph, 2, &inst.costs, &opts), &inst)?;
    if rep.branch == Branch::Direct {
        return Ok(Case::skip().tag("direct"));
    }
    if rep.branch != Branch::LargeN {
        if genuine {
            return Err(fail("n >= 18 did not take the large-n branch", Some(&inst)));
        }
        return Ok(Case::skip().tag("b-too-large"));
    }
    let mid: Vec<Edge> = rep.f0.iter().chain(&rep.f1).copied().collect();
    let g1 = inst.graph.with_edges(&mid);
    let rogues = lib(enumerate_rogue_sets(&g1, 2), &inst)?;
    if let Some(x) = rogues.first() {
        return Err(fail(format!("rogue set {x} survives both rooted phases"), Some(&inst)));
    }
    if !rep.connected {
        return Err(fail("output not 2-connected", Some(&inst)));
    }
    Ok(Case::default().tag(if genuine { "natural-large-n" } else { "forced-large-n" }))
}

fn rogue_union_bound(i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2 + i % 2;
    let n = if k == 2 { rng.random_range(6..=14) } else { rng.random_range(7..=12) };
    let mut p = GenParams::new(n, k, seed);
    p.density = rng.random_range(0.05..0.35);
    p.max_purchasable = Some(25);
    let inst = gen_random(&p);
    let r = random_terminals(&mut rng, n, k);
    let res = lib(rooted(&inst.graph, &inst.costs, &r, k), &inst)?;
    let g0 = inst.graph.with_edges(&res.edges);
    let union = lib(rogue_union(&g0, k), &inst)?;
    let bound = k.pow(3) * (k - 1);
    if union.len() > bound {
        return Err(fail(format!("rogue union {union} has {} > {bound} nodes", union.len()), Some(&inst)));
    }
    // union of deficient sets of size <= s, all of which meet R
    for s in 1..=(k * (k - 1)).min(n) {
        let sets = lib(deficient_sets(&g0, k, s), &inst)?;
        if let Some(x) = sets.iter().find(|x| !x.intersects(&r)) {
            return Err(fail(format!("deficient set {x} misses R = {r}"), Some(&inst)));
        }
        let u = sets.iter().fold(NodeSet::new(), |acc, x| acc.union(x));
        if u.len() > k * k * k * s {
            return Err(fail(format!("size-{s} deficient union has {} nodes", u.len()), Some(&inst)));
        }
    }
    Ok(Case::default().stat("union", int(union.len() as i64)).stat("bound", int(bound as i64)))
}

fn random_setpair(rng: &mut ChaCha8Rng, g: &Graph) -> Option<SetPair> {
    let all = NodeSet::full(g.n());
    for _ in 0..20 {
        let a = random_set(rng, &all, 0.35);
        if a.is_empty() {
            continue;
        }
        let b = random_set(rng, &outside(g, &a), 0.6);
        if !b.is_empty() {
            return Some(SetPair::from_pieces_unchecked(a, b));
        }
    }
    None
}

fn piece_covers(p: &PiecePair, e: Edge) -> usize {
    usize::from(!p.is_degenerate() && p.covers(e))
}

fn uncross_identities(i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=8);
    let k = rng.random_range(1..=n - 2);
    let density = rng.random_range(0.1..0.5);
    let g = random_graph(&mut rng, n, density);
    let all = NodeSet::full(n);
    let mut case = Case::default();

    let u = random_set(&mut rng, &all, 0.4);
    let w = random_set(&mut rng, &all, 0.4);
    let (gu, gw) = (gamma(&g, &u), gamma(&g, &w));
    if gu + gw < gamma(&g, &u.intersection(&w)) + gamma(&g, &u.union(&w)) {
        return Err(graph_fail(format!("gamma submodularity fails for U = {u}, W = {w}"), &g, k));
    }
    let (us, ws) = (outside(&g, &u), outside(&g, &w));
    if gu + gw < gamma(&g, &us.intersection(&w)) + gamma(&g, &u.intersection(&ws)) {
        return Err(graph_fail(format!("gamma posimodularity fails for U = {u}, W = {w}"), &g, k));
    }

    let (Some(p), Some(q)) = (random_setpair(&mut rng, &g), random_setpair(&mut rng, &g)) else {
        return Ok(case.tag("no-setpair"));
    };
    if p == q {
        return Ok(case.tag("equal-pairs"));
    }
    let rel = classify(&p, &q);
    if rel != classify(&q, &p).swap() {
        return Err(graph_fail(format!("classify not symmetric for {p}, {q}"), &g, k));
    }
    let meet = meeting_points(&p, &q);
    let brute_meet: NodeSet = all
        .iter()
        .filter(|&a| all.iter().any(|b| a != b && covers(Edge::new(a, b), &p) && covers(Edge::new(a, b), &q)))
        .collect();
    if meet != brute_meet {
        return Err(graph_fail(format!("meeting points {meet} != brute force {brute_meet}"), &g, k));
    }
    if (rel == PairRelation::Independent) != meet.is_empty() {
        return Err(graph_fail(format!("independence criterion disagrees for {p}, {q}"), &g, k));
    }
    let x: BTreeMap<Edge, Rat> =
        g.non_edges().map(|e| (e, rat(rng.random_range(0..=4), rng.random_range(1..=4)))).collect();
    let xd = |f: &dyn Fn(Edge) -> bool| -> Rat { x.iter().filter(|(e, _)| f(**e)).map(|(_, v)| v.clone()).sum() };
    let pk = |sp: &SetPair| k.saturating_sub(sp.gamma_size(n));
    let mut results = Vec::new();
    for m in meet.iter() {
        let (ot, op) = uncross(&p, &q, m).map_err(|e| graph_fail(e.to_string(), &g, k))?;
        if p.gamma_size(n) + q.gamma_size(n) != ot.gamma_size(n) + op.gamma_size(n) {
            return Err(graph_fail(format!("gamma conservation fails at {m} for {p}, {q}"), &g, k));
        }
        let lhs = xd(&|e| covers(e, &p)) + xd(&|e| covers(e, &q));
        let rhs = xd(&|e| piece_covers(&ot, e) == 1) + xd(&|e| piece_covers(&op, e) == 1);
        if lhs < rhs {
            return Err(graph_fail(format!("x(delta) bisubmodularity fails at {m} for {p}, {q}"), &g, k));
        }
        for e in all.iter().flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b))) {
            let l = usize::from(covers(e, &p)) + usize::from(covers(e, &q));
            if l < piece_covers(&ot, e) + piece_covers(&op, e) {
                return Err(graph_fail(format!("edge {e} covers the uncrossed pairs more often than {p}, {q}"), &g, k));
            }
        }
        if rel == PairRelation::Crossing && pk(&p) > 0 && pk(&q) > 0 {
            if pk(&p) + pk(&q) > ot.deficiency(n, k) + op.deficiency(n, k) {
                return Err(graph_fail(format!("crossing bisupermodularity fails at {m} for {p}, {q}"), &g, k));
            }
            case = case.tag("crossing-deficient");
        }
        if let PairRelation::Nested { .. } = rel {
            let mut got = [ot.to_setpair(&g), op.to_setpair(&g)];
            got.sort_by_key(|r| r.is_err());
            if !matches!(&got, [Ok(a), Ok(b)] if (a == &p && b == &q) || (a == &q && b == &p)) {
                return Err(graph_fail(format!("nested uncrossing at {m} did not return the pair itself"), &g, k));
            }
        }
        results.push((ot, op));
    }
    // {⊗, ⊕} at a point of U_i ∩ W_j is {⊕, ⊗} at a point of U_1-i ∩ W_1-j
    let unordered = |a: &NodeSet, b: &NodeSet| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let distinct: std::collections::BTreeSet<_> = results
        .iter()
        .map(|(a, b)| {
            let (x, y) = (unordered(&a.first, &a.second), unordered(&b.first, &b.second));
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    if distinct.len() > 2 {
        return Err(graph_fail(format!("{} distinct uncrossings of {p}, {q}", distinct.len()), &g, k));
    }
    if i % 50 == 0 {
        case = tight_support_identity(&g, k, case)?;
    }
    Ok(case)
}

/// On a basic optimum of the cut LP, uncrossing two tight deficient set-pairs
/// with valid results gives tight set-pairs, and on the support the covering
/// counts add up edge by edge.
fn tight_support_identity(g: &Graph, k: usize, mut case: Case) -> std::result::Result<Case, Fail> {
    let n = g.n();
    let c = CostFunction::uniform(g, int(1));
    let sol = match solve_lpvc(g, k, &c) {
        Ok(s) => s,
        Err(Error::Infeasible) => return Ok(case),
        Err(e) => return Err(graph_fail(format!("LP failed: {e}"), g, k)),
    };
    let support = sol.x.support();
    let mg = MaskGraph::from_graph(g).expect("small n");
    let mut tight = Vec::new();
    mg.for_each_setpair(|a, b| {
        let sp = SetPair::from_pieces_unchecked(NodeSet::from_mask(a), NodeSet::from_mask(b));
        let p = k.saturating_sub(sp.gamma_size(n));
        if p > 0 && sol.x.coverage(&sp) == int(p as i64) {
            tight.push(sp);
        }
    });
    let is_tight = |sp: &SetPair| sol.x.coverage(sp) == int(k.saturating_sub(sp.gamma_size(n)) as i64);
    for (ai, a) in tight.iter().enumerate() {
        for b in &tight[ai + 1..] {
            for m in meeting_points(a, b).iter() {
                let (ot, op) = uncross(a, b, m).expect("meeting point");
                let (Ok(s1), Ok(s2)) = (ot.to_setpair(g), op.to_setpair(g)) else {
                    continue;
                };
                if !is_tight(&s1) || !is_tight(&s2) {
                    return Err(graph_fail(format!("uncrossing {a}, {b} at {m} left the tight family"), g, k));
                }
                for &e in &support {
                    let l = usize::from(covers(e, a)) + usize::from(covers(e, b));
                    let r = usize::from(covers(e, &s1)) + usize::from(covers(e, &s2));
                    if l != r {
                        return Err(graph_fail(format!("support edge {e}: {l} != {r} for {a}, {b} at {m}"), g, k));
                    }
                }
                case = case.tag("tight-uncrossing");
            }
        }
    }
    Ok(case)
}

fn independence_free(_i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=10);
    let k = rng.random_range(1..=4);
    let density = rng.random_range(0.1..0.6);
    let g = random_graph(&mut rng, n, density);
    let rogue_free = is_rogue_free(&g, k).map_err(|e| graph_fail(e.to_string(), &g, k))?;
    let indep_free = is_independence_free(&g, k).map_err(|e| graph_fail(e.to_string(), &g, k))?;
    let mut case = Case::default();
    if n <= 6 {
        let brute = is_independence_free_brute(&g, k).map_err(|e| graph_fail(e.to_string(), &g, k))?;
        if brute != indep_free {
            return Err(graph_fail("independence check disagrees with pairwise classification", &g, k));
        }
        case = case.tag("cross-checked");
    }
    if rogue_free && !indep_free {
        return Err(graph_fail("rogue-free graph has two independent deficient set-pairs", &g, k));
    }
    Ok(case.tag(if rogue_free { "rogue-free" } else { "has-rogue" }))
}

fn h_min(_i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=12);
    let k = rng.random_range(1..=4);
    let density = rng.random_range(0.05..0.5);
    let g = random_graph(&mut rng, n, density);
    for v in 0..n {
        let fast = min_h_containing(&g, k, v);
        let slow = min_h_exhaustive(&g, k, v).map_err(|e| graph_fail(e.to_string(), &g, k))?;
        if fast != slow {
            return Err(graph_fail(
                format!("v = {v}: cut gives {} {}, scan gives {} {}", fast.value, fast.set, slow.value, slow.set),
                &g,
                k,
            ));
        }
    }
    let b = compute_b(&g, k);
    let slow = b_exhaustive(&g, k).map_err(|e| graph_fail(e.to_string(), &g, k))?;
    if b.b != slow || b.a.union(&b.b) != NodeSet::full(n) {
        return Err(graph_fail(format!("B = {} but scan gives {slow}", b.b), &g, k));
    }
    let threshold = k * (k - 1);
    for x in enumerate_rogue_sets(&g, k).map_err(|e| graph_fail(e.to_string(), &g, k))? {
        if x.len() + (k - 1) * gamma(&g, &x) > threshold || !x.is_subset(&b.b) {
            return Err(graph_fail(format!("rogue set {x} escapes B"), &g, k));
        }
    }
    for m in &b.members {
        if !crate::graph::is_deficient(&g, k, &m.set) || m.set.len() > threshold {
            return Err(graph_fail(format!("low-h set {} is not a small deficient set", m.set), &g, k));
        }
    }
    Ok(Case::default().stat("b-size", int(b.b.len() as i64)))
}

/// min over all set-pairs of |Γ| + x(δ) - k, by enumeration.
fn brute_min_slack(g: &Graph, k: usize, x: &FractionalSolution) -> Option<Rat> {
    let mg = MaskGraph::from_graph(g)?;
    let n = g.n();
    let xs: Vec<(u64, u64, Rat)> = x
        .iter()
        .filter(|(_, v)| v.is_positive())
        .map(|(e, v)| (1u64 << e.u(), 1u64 << e.v(), v.clone()))
        .collect();
    let mut best: Option<Rat> = None;
    mg.for_each_setpair(|a, b| {
        let mut val = int((n - (a | b).count_ones() as usize) as i64) - int(k as i64);
        for (p, q, v) in &xs {
            if (a & p != 0 && b & q != 0) || (a & q != 0 && b & p != 0) {
                val += v;
            }
        }
        if best.as_ref().map_or(true, |b| val < *b) {
            best = Some(val);
        }
    });
    best
}

fn separation(_i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=9);
    let k = rng.random_range(1..=(n - 2).min(4));
    let density = rng.random_range(0.1..0.5);
    let g = random_graph(&mut rng, n, density);
    let scale = rng.random_range(1..=3);
    let x = FractionalSolution::from_values(g.non_edges().map(|e| {
        let v = if rng.random_bool(0.5) { rat(rng.random_range(0..=scale), 3).min(int(1)) } else { Rat::zero() };
        (e, v)
    }));
    let brute = brute_min_slack(&g, k, &x);
    let got = separate(&g, k, &x);
    match (got, brute) {
        (SeparationResult::Feasible, None) => Ok(Case::default().tag("no-setpairs")),
        (SeparationResult::Feasible, Some(b)) if !b.is_negative() => Ok(Case::default().tag("feasible")),
        (SeparationResult::Violated { setpair, slack }, Some(b)) if b.is_negative() => {
            let actual = x.coverage(&setpair) - int(crate::setpair::deficiency(&g, k, &setpair) as i64);
            if slack != b || actual != slack || SetPair::new(&g, setpair.piece(0).clone(), setpair.piece(1).clone()).is_err() {
                return Err(graph_fail(
                    format!("separation slack {} (pair {setpair}, actual {}) but brute force {}", fmt_rat(&slack), fmt_rat(&actual), fmt_rat(&b)),
                    &g,
                    k,
                ));
            }
            Ok(Case::default().tag("violated"))
        }
        (got, b) => Err(graph_fail(format!("separation {got:?} disagrees with brute force minimum {b:?}"), &g, k)),
    }
}

fn oracle_consistency(i: usize, seed: u64) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=3);
    let n = rng.random_range(k + 2..=7);
    let mut p = GenParams::new(n, k, seed);
    p.density = rng.random_range(0.0..0.5);
    p.max_purchasable = Some(14);
    let mut inst = gen_random(&p);
    if i % 4 == 3 {
        // drop a candidate so some instances are infeasible
        if let Some(e) = inst.candidates().first().copied() {
            inst.costs.remove(e);
        }
    }
    let (g, c) = (&inst.graph, &inst.costs);
    let budget = OracleBudget { lp_bound: i % 2 == 0, ..Default::default() };
    let ex = lib(exact_opt_with(g, k, c, OracleMode::Exhaustive, budget), &inst)?;
    let bb = lib(exact_opt_with(g, k, c, OracleMode::BranchAndBound, budget), &inst)?;
    if ex.cost != bb.cost {
        return Err(fail(format!("exhaustive {:?} vs branch-and-bound {:?}", ex.cost, bb.cost), Some(&inst)));
    }
    let Some(opt) = ex.cost.clone() else {
        return Ok(Case::default().tag("infeasible"));
    };
    for r in [&ex, &bb] {
        if !is_k_connected(&g.with_edges(&r.edges), k) || c.total(&r.edges) != Some(opt.clone()) {
            return Err(fail("oracle returned an invalid set", Some(&inst)));
        }
    }
    let lp = lib(solve_lpvc(g, k, c), &inst)?;
    if lp.objective > opt {
        return Err(fail(format!("LP {} above opt {}", fmt_rat(&lp.objective), fmt_rat(&opt)), Some(&inst)));
    }
    let case = Case::default().stat("bb-nodes", int(bb.explored as i64));
    Ok(if opt.is_zero() { case } else { case.stat("opt-over-lp", if lp.objective.is_zero() { int(0) } else { opt / lp.objective }) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_errors() {
        assert!(run_suite("nope", &HarnessConfig::default()).is_err());
    }

    #[test]
    fn small_runs_pass() {
        for name in ["independence-free", "h-min", "separation", "uncross-identities", "oracle-consistency"] {
            let cfg = HarnessConfig { cases: Some(8), ..Default::default() };
            let rep = run_suite(name, &cfg).unwrap();
            assert!(rep.passed(), "{}", rep.to_table());
        }
    }
}
