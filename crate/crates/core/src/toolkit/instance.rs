//! Line-oriented instance and solution files.
//!
//! Instance:
//! ```text
//! kaug 1
//! n 4 k 2
//! e 0 1
//! c 0 2 5/1
//! ```
//! Pairs listed neither as `e` nor `c` cannot be bought. Solution:
//! ```text
//! f 0 2
//! cost 5/1
//! connected 2 true
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::cost::CostFunction;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rational::{fmt_rat, parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub costs: CostFunction,
    pub name: String,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, costs: CostFunction) -> Instance {
        Instance { graph, k, costs, name: String::new(), seed: None }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn candidates(&self) -> Vec<Edge> {
        self.costs.candidates(&self.graph)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kaug 1");
        let _ = writeln!(out, "n {} k {}", self.graph.n(), self.k);
        for e in self.graph.edges() {
            let _ = writeln!(out, "e {} {}", e.u(), e.v());
        }
        for (e, c) in self.costs.iter() {
            if !self.graph.contains_edge(e) {
                let _ = writeln!(out, "c {} {} {}", e.u(), e.v(), fmt_rat(c));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        if header.split_whitespace().collect::<Vec<_>>() != ["kaug", "1"] {
            return Err(err(ln, "expected header `kaug 1`"));
        }
        let (ln, size) = lines.next().ok_or_else(|| err(ln, "missing `n <n> k <k>` line"))?;
        let toks: Vec<&str> = size.split_whitespace().collect();
        let (n, k) = match toks.as_slice() {
            ["n", n, "k", k] => (
                n.parse::<usize>().map_err(|_| err(ln, "bad node count"))?,
                k.parse::<usize>().map_err(|_| err(ln, "bad k"))?,
            ),
            _ => return Err(err(ln, "expected `n <n> k <k>`")),
        };
        if n == 0 || k == 0 {
            return Err(err(ln, "n and k must be positive"));
        }
        let mut graph = Graph::empty(n);
        let mut costs = CostFunction::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let pair = |a: &str, b: &str| -> Result<Edge> {
                let u = a.parse::<usize>().map_err(|_| err(ln, "bad node"))?;
                let v = b.parse::<usize>().map_err(|_| err(ln, "bad node"))?;
                if u == v || u >= n || v >= n {
                    return Err(err(ln, "node out of range or self-loop"));
                }
                Ok(Edge::new(u, v))
            };
            match toks.as_slice() {
                ["e", a, b] => {
                    if !graph.add_edge(pair(a, b)?) {
                        return Err(err(ln, "duplicate edge"));
                    }
                }
                ["c", a, b, r] => {
                    let e = pair(a, b)?;
                    let c = parse_rat(r).ok_or_else(|| err(ln, "bad rational cost"))?;
                    if costs.is_purchasable(e) {
                        return Err(err(ln, "duplicate cost"));
                    }
                    costs.set(e, c).map_err(|_| err(ln, "negative cost"))?;
                }
                _ => return Err(err(ln, "unrecognized line")),
            }
        }
        for (e, _) in costs.iter() {
            if graph.contains_edge(e) {
                return Err(err(0, &format!("pair {e} is both an edge and a candidate")));
            }
        }
        Ok(Instance::new(graph, k, costs))
    }

    pub fn read(path: &Path) -> Result<Instance> {
        let mut inst = Instance::parse(&std::fs::read_to_string(path)?)?;
        inst.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(inst)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub edges: Vec<Edge>,
    pub cost: Rat,
    pub k: usize,
    pub connected: bool,
}

impl Solution {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "f {} {}", e.u(), e.v());
        }
        let _ = writeln!(out, "cost {}", fmt_rat(&self.cost));
        let _ = writeln!(out, "connected {} {}", self.k, self.connected);
        out
    }

    pub fn parse(text: &str) -> Result<Solution> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut edges = Vec::new();
        let mut cost = None;
        let mut conn = None;
        for (ln, line) in content_lines(text) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["f", a, b] => {
                    let u = a.parse::<usize>().map_err(|_| err(ln, "bad node"))?;
                    let v = b.parse::<usize>().map_err(|_| err(ln, "bad node"))?;
                    if u == v {
                        return Err(err(ln, "self-loop"));
                    }
                    edges.push(Edge::new(u, v));
                }
                ["cost", r] => cost = Some(parse_rat(r).ok_or_else(|| err(ln, "bad rational"))?),
                ["connected", k, flag] => {
                    let k = k.parse::<usize>().map_err(|_| err(ln, "bad k"))?;
                    let flag = match *flag {
                        "true" => true,
                        "false" => false,
                        _ => return Err(err(ln, "expected true or false")),
                    };
                    conn = Some((k, flag));
                }
                _ => return Err(err(ln, "unrecognized line")),
            }
        }
        let cost = cost.ok_or_else(|| err(0, "missing cost line"))?;
        let (k, connected) = conn.ok_or_else(|| err(0, "missing connected line"))?;
        Ok(Solution { edges, cost, k, connected })
    }
}
