//! Shortest-augmenting-path max-flow over any totally ordered capacity type.
//!
//! Integer capacities are used for plain node-connectivity queries, exact
//! rationals for the fractional networks built by the separation oracles.
//! Arcs are stored in pairs so that `id ^ 1` is the residual twin of `id`.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_traits::Zero;

pub trait FlowValue: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T> FlowValue for T where T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T> {}

#[derive(Debug, Clone)]
pub struct FlowNetwork<C> {
    out: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<C>,
}

impl<C: FlowValue> FlowNetwork<C> {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { out: vec![Vec::new(); nodes], head: Vec::new(), residual: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: C) -> usize {
        let id = self.head.len();
        self.out[from].push(id);
        self.head.push(to);
        self.residual.push(cap);
        self.out[to].push(id + 1);
        self.head.push(from);
        self.residual.push(C::zero());
        id
    }

    /// Pushes flow from `s` to `t` until no augmenting path remains, or until
    /// the flow value reaches `limit` when one is given.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: Option<&C>) -> C {
        let mut total = C::zero();
        if s == t {
            return total;
        }
        let mut pred = vec![usize::MAX; self.node_count()];
        loop {
            if let Some(l) = limit {
                if &total >= l {
                    break;
                }
            }
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.node_count()];
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &a in &self.out[v] {
                    let w = self.head[a];
                    if !seen[w] && self.residual[a] > C::zero() {
                        seen[w] = true;
                        pred[w] = a;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck: Option<C> = None;
            let mut v = t;
            while v != s {
                let a = pred[v];
                bottleneck = Some(match bottleneck {
                    Some(b) if b <= self.residual[a] => b,
                    _ => self.residual[a].clone(),
                });
                v = self.head[a ^ 1];
            }
            let b = bottleneck.expect("augmenting path has at least one arc");
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.residual[a] = self.residual[a].clone() - b.clone();
                self.residual[a ^ 1] = self.residual[a ^ 1].clone() + b.clone();
                v = self.head[a ^ 1];
            }
            total = total + b;
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.out[v] {
                let w = self.head[a];
                if !seen[w] && self.residual[a] > C::zero() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Nodes that can still reach `t` in the residual network.
    pub fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            // an arc u -> v with residual capacity appears as twin (v -> u)
            for &twin in &self.out[v] {
                let a = twin ^ 1;
                let u = self.head[twin];
                if !seen[u] && self.residual[a] > C::zero() {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Index of the entry copy of node `v` in a node-split network.
pub fn node_in(v: usize) -> usize {
    2 * v
}

/// Index of the exit copy of node `v` in a node-split network.
pub fn node_out(v: usize) -> usize {
    2 * v + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut net = FlowNetwork::<i64>::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (1, 3, 12),
            (2, 1, 4),
            (2, 4, 14),
            (3, 2, 9),
            (3, 5, 20),
            (4, 3, 7),
            (4, 5, 4),
        ] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5, None), 23);
        let src = net.reachable_from(0);
        assert!(src[0] && !src[5]);
        let snk = net.reaching(5);
        assert!(snk[5] && !snk[0]);
    }

    #[test]
    fn limit_stops_early() {
        let mut net = FlowNetwork::<i64>::new(4);
        net.add_arc(0, 1, 1);
        net.add_arc(0, 2, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 1);
        assert_eq!(net.max_flow(0, 3, Some(&1)), 1);
    }
}
