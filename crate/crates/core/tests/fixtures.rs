use std::collections::BTreeMap;

use kaug_core::graph::{deficient_sets, gamma, is_k_connected, min_vertex_cut, neighbors, outside};
use kaug_core::lp::{max_fractional_edge, separate, solve_lpvc};
use kaug_core::outconnect::{directed_exhaustive, is_k_outconnected, rooted, solve_directed_outconnectivity, Digraph};
use kaug_core::pipeline::{augment, verify, Branch, Mode, PipelineOptions};
use kaug_core::rational::{half, int, rat, zero};
use kaug_core::rogue::{compute_b, enumerate_rogue_sets, find_rogue_from_fractional, h, is_rogue, min_h_containing};
use kaug_core::rounding::{iterative_round, RoundingOutcome};
use kaug_core::setpair::{classify, deficiency, from_deficient_set, meeting_points, tail_head, uncross, PairRelation};
use kaug_core::toolkit::gen::{gen_random, GenParams};
use kaug_core::toolkit::oracle::exact_opt;
use kaug_core::{CostFunction, Edge, Error, FractionalSolution, Graph, NodeSet, SeparationResult, SetPair};

fn set(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}

fn path_with_chord() -> (Graph, CostFunction) {
    let g = Graph::path(3);
    let mut c = CostFunction::new();
    c.set(Edge::new(0, 2), int(5)).unwrap();
    (g, c)
}

#[test]
fn neighborhoods() {
    let c4 = Graph::cycle(4);
    assert_eq!(neighbors(&Graph::path(3), &set(&[0])), set(&[1]));
    assert_eq!(neighbors(&c4, &set(&[0])), set(&[1, 3]));
    assert_eq!(outside(&c4, &set(&[0])), set(&[2]));
    assert!(outside(&Graph::complete(4), &set(&[0])).is_empty());
    assert!(outside(&c4, &NodeSet::full(4)).is_empty());
}

#[test]
fn vertex_cuts() {
    let cut = min_vertex_cut(&Graph::cycle(4), 0, 2).unwrap();
    assert_eq!((cut.value, cut.cut_nodes), (2, set(&[1, 3])));
    // three paths u-m-w through middles 2, 3, 4
    let g = Graph::new(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
    assert_eq!(min_vertex_cut(&g, 0, 1).unwrap().value, 3);
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    assert_eq!(min_vertex_cut(&star, 1, 2).unwrap().cut_nodes, set(&[0]));
    assert_eq!(min_vertex_cut(&star, 0, 1).unwrap_err(), Error::AdjacentTerminals(0, 1));
}

#[test]
fn connectivity_and_deficient_sets() {
    assert!(is_k_connected(&Graph::complete(4), 3));
    assert!(is_k_connected(&Graph::cycle(5), 2));
    assert!(!is_k_connected(&Graph::cycle(5), 3));
    assert!(deficient_sets(&Graph::complete(4), 3, 3).unwrap().is_empty());
    assert_eq!(deficient_sets(&Graph::cycle(4), 3, 2).unwrap(), (0..4).map(|v| set(&[v])).collect::<Vec<_>>());
    assert!(deficient_sets(&Graph::cycle(4), 2, 3).unwrap().is_empty());
}

#[test]
fn setpair_algebra() {
    let c4 = Graph::cycle(4);
    let p = SetPair::new(&c4, set(&[0]), set(&[2])).unwrap();
    assert_eq!(deficiency(&c4, 2, &p), 0);
    assert_eq!(deficiency(&c4, 3, &p), 1);
    assert_eq!(from_deficient_set(&c4, 3, &set(&[0])).unwrap(), p);
    let p5 = Graph::path(5);
    let q = from_deficient_set(&p5, 2, &set(&[0])).unwrap();
    assert_eq!(q, SetPair::new(&p5, set(&[0]), set(&[2, 3, 4])).unwrap());
    assert_eq!(tail_head(&q), (set(&[0]), set(&[2, 3, 4])));
    assert_eq!(from_deficient_set(&Graph::complete(4), 3, &set(&[0])).unwrap_err(), Error::NotDeficient);

    let empty = Graph::empty(6);
    let sp = |a: &[usize], b: &[usize]| SetPair::new(&empty, set(a), set(b)).unwrap();
    assert_eq!(classify(&sp(&[0], &[1]), &sp(&[2], &[3])), PairRelation::Independent);
    assert!(meeting_points(&sp(&[0], &[1]), &sp(&[2], &[3])).is_empty());

    let (p, q) = (sp(&[0], &[1, 2, 3]), sp(&[0, 1, 2], &[3]));
    assert!(matches!(classify(&p, &q), PairRelation::Nested { .. }));
    let meet = meeting_points(&p, &q);
    assert_eq!(meet, set(&[0, 3]));
    for m in meet.iter() {
        let (x, y) = uncross(&p, &q, m).unwrap();
        let mut got = vec![x.to_setpair(&empty).unwrap(), y.to_setpair(&empty).unwrap()];
        got.sort();
        let mut want = vec![p.clone(), q.clone()];
        want.sort();
        assert_eq!(got, want);
    }

    let (p, q) = (sp(&[0, 1], &[3, 4]), sp(&[1, 2], &[4, 5]));
    assert_eq!(classify(&p, &q), PairRelation::Crossing);
    let (x, y) = uncross(&p, &q, 1).unwrap();
    assert_eq!((x.first, x.second), (set(&[0, 1, 2]), set(&[4])));
    assert_eq!((y.first, y.second), (set(&[1]), set(&[3, 4, 5])));
    assert_eq!(uncross(&p, &q, 2).unwrap_err(), Error::NotMeetingPoint(2));
}

#[test]
fn cut_lp_examples() {
    let (g, c) = path_with_chord();
    let sol = solve_lpvc(&g, 2, &c).unwrap();
    assert_eq!(sol.objective, int(5));
    assert_eq!(sol.x.get(Edge::new(0, 2)), int(1));
    assert_eq!(solve_lpvc(&Graph::complete(3), 2, &CostFunction::new()).unwrap().objective, int(0));

    let triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    match separate(&triangles, 1, &FractionalSolution::new()) {
        SeparationResult::Violated { setpair, slack } => {
            assert_eq!(slack, int(-1));
            assert_eq!(setpair.pieces(), (&set(&[0, 1, 2]), &set(&[3, 4, 5])));
        }
        SeparationResult::Feasible => panic!("components are not covered"),
    }
    let mut x = FractionalSolution::new();
    x.set(Edge::new(1, 2), rat(1, 3));
    x.set(Edge::new(0, 3), rat(1, 3));
    assert_eq!(max_fractional_edge(&x).unwrap(), (Edge::new(0, 3), rat(1, 3)));
    x.set(Edge::new(2, 4), rat(3, 4));
    assert_eq!(max_fractional_edge(&x).unwrap(), (Edge::new(2, 4), rat(3, 4)));
    assert_eq!(max_fractional_edge(&FractionalSolution::new()).unwrap_err(), Error::EmptySupport);
}

#[test]
fn directed_outconnectivity() {
    let cycle = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert!(is_k_outconnected(&cycle, 0, 1));
    assert!(!is_k_outconnected(&cycle, 0, 2));
    let k4 = Digraph::bidirected(&Graph::complete(4));
    assert!(is_k_outconnected(&k4, 2, 3));

    let star = Digraph::from_arcs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut costs = BTreeMap::new();
    for a in 1..4 {
        for b in 1..4 {
            if a != b {
                costs.insert((a, b), int((a + b) as i64));
            }
        }
    }
    assert_eq!(solve_directed_outconnectivity(&star, &costs, 0, 1).unwrap().cost, int(0));
    let two = solve_directed_outconnectivity(&star, &costs, 0, 2).unwrap();
    let brute = directed_exhaustive(&star, &costs, 0, 2).unwrap().unwrap();
    assert_eq!(two.cost, brute.0);
}

#[test]
fn rooted_examples() {
    let k3 = Graph::complete(3);
    let r = rooted(&k3, &CostFunction::new(), &set(&[0, 1]), 2).unwrap();
    assert!(r.edges.is_empty());
    let g = Graph::path(4);
    let c = CostFunction::uniform(&g, int(1));
    let r = rooted(&g, &c, &set(&[0, 3]), 2).unwrap();
    let opt = exact_opt(&g, 2, &c).unwrap().cost.unwrap();
    assert!(r.cost <= int(2) * opt);
    assert_eq!(
        rooted(&g, &c, &set(&[0]), 2).unwrap_err(),
        Error::BadTerminalCount { expected: 2, got: 1 }
    );
}

#[test]
fn potential_h() {
    let p3 = Graph::path(3);
    assert_eq!(h(&p3, 2, &set(&[0])), 2);
    assert_eq!(h(&p3, 2, &NodeSet::new()), 0);
    assert_eq!(h(&p3, 2, &NodeSet::full(3)), 3);
    let lone = Graph::new(3, [(1, 2)]).unwrap();
    let m = min_h_containing(&lone, 2, 0);
    assert_eq!((m.value, m.set), (1, set(&[0])));
    for k in 2..=4 {
        let rep = compute_b(&Graph::complete(k + 1), k);
        assert!(rep.b.is_empty());
        assert_eq!(rep.a, NodeSet::full(k + 1));
    }
}

#[test]
fn rogue_examples() {
    assert_eq!(enumerate_rogue_sets(&Graph::cycle(4), 3).unwrap(), (0..4).map(|v| set(&[v])).collect::<Vec<_>>());
    assert!(enumerate_rogue_sets(&Graph::cycle(6), 2).unwrap().is_empty());
    // a path has two pendant nodes, and a small fractional chord keeps them rogue
    let g = Graph::path(4);
    let mut x = FractionalSolution::new();
    for (u, v) in [(0, 2), (0, 3), (1, 3)] {
        x.set(Edge::new(u, v), rat(1, 3));
    }
    let found = find_rogue_from_fractional(&g, 2, &x).unwrap();
    assert!(is_rogue(&g, 2, &found));
    assert!(found.len() < 2 && gamma(&g, &found) < 2);
}

#[test]
fn rounding_examples() {
    let (g, c) = path_with_chord();
    let run = iterative_round(&g, 2, &c).unwrap();
    assert_eq!(run.outcome, RoundingOutcome::Success { edges: vec![Edge::new(0, 2)], cost: int(5) });
    assert!(run.trace.iter().all(|t| t.max >= half()));
    assert_eq!(run.trace[0].to_string(), "iter 0 obj 5/1 rounded 1 max 1/1");
    let done = iterative_round(&Graph::complete(4), 3, &CostFunction::new()).unwrap();
    assert!(done.outcome.is_success() && done.trace.is_empty());
}

#[test]
fn pipeline_examples() {
    let best = PipelineOptions { mode: Some(Mode::BestEffort), ..Default::default() };
    for k in 1..=3 {
        let rep = augment(&Graph::complete(k + 1), k, &CostFunction::new(), &best).unwrap();
        assert_eq!(rep.total(), zero());
        assert!(rep.edges().is_empty() && rep.connected);
    }
    let (g, c) = path_with_chord();
    assert_eq!(
        augment(&g, 2, &c, &PipelineOptions::default()).unwrap_err(),
        Error::RegimeViolation { n: 3, k: 2, required: 10 }
    );
    assert_eq!(augment(&g, 2, &c, &best).unwrap().total(), int(5));
    assert_eq!(augment(&Graph::path(3), 2, &CostFunction::new(), &best).unwrap_err(), Error::Infeasible);

    let mut p = GenParams::new(12, 2, 3);
    p.max_purchasable = Some(25);
    let inst = gen_random(&p);
    let rep = augment(&inst.graph, 2, &inst.costs, &PipelineOptions::default()).unwrap();
    assert!(matches!(rep.branch, Branch::SmallN | Branch::Direct));
    let v = verify(&inst.graph, 2, &rep.edges(), &inst.costs, Some(Default::default()));
    assert!(v.connected);
    assert!(v.ratio.is_none_or(|r| r <= int(6)));
}

#[test]
fn generator_examples() {
    let mut p = GenParams::new(8, 2, 99);
    assert_eq!(gen_random(&p).to_text(), gen_random(&p).to_text());
    p.density = 0.0;
    let empty = gen_random(&p);
    assert_eq!(empty.graph.edge_count(), 0);
    assert_eq!(empty.candidates().len(), 28);
    p.density = 1.0;
    let full = gen_random(&p);
    assert!(full.candidates().is_empty());
    assert_eq!(exact_opt(&full.graph, 2, &full.costs).unwrap().cost, Some(int(0)));
}
