use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rational::Rat;

/// Edge costs over `(V choose 2)`. Pairs without an entry cost +∞ and can
/// never be bought.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostFunction {
    costs: BTreeMap<Edge, Rat>,
}

impl CostFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every non-edge of `g` gets cost `c`.
    pub fn uniform(g: &Graph, c: Rat) -> Self {
        let mut f = Self::new();
        for e in g.non_edges() {
            f.costs.insert(e, c.clone());
        }
        f
    }

    pub fn set(&mut self, e: Edge, c: Rat) -> Result<()> {
        if c.is_negative() {
            return Err(Error::InvalidGraph(format!("negative cost on {e}")));
        }
        self.costs.insert(e, c);
        Ok(())
    }

    pub fn remove(&mut self, e: Edge) {
        self.costs.remove(&e);
    }

    /// `None` means +∞.
    pub fn get(&self, e: Edge) -> Option<&Rat> {
        self.costs.get(&e)
    }

    pub fn is_purchasable(&self, e: Edge) -> bool {
        self.costs.contains_key(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &Rat)> {
        self.costs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Finite-cost pairs that are not already edges of `g`, in lexicographic order.
    pub fn candidates(&self, g: &Graph) -> Vec<Edge> {
        self.costs.keys().copied().filter(|&e| e.v() < g.n() && !g.contains_edge(e)).collect()
    }

    /// Total cost; `None` when some edge is not purchasable.
    pub fn total<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Option<Rat> {
        let mut sum = Rat::zero();
        for e in edges {
            sum += self.costs.get(e)?;
        }
        Some(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn candidates_skip_existing_and_infinite() {
        let g = Graph::path(3);
        let mut c = CostFunction::new();
        c.set(Edge::new(0, 2), int(5)).unwrap();
        c.set(Edge::new(0, 1), int(1)).unwrap();
        assert_eq!(c.candidates(&g), vec![Edge::new(0, 2)]);
        assert_eq!(c.total(&[Edge::new(0, 2)]), Some(int(5)));
        assert_eq!(c.total(&[Edge::new(1, 2)]), None);
        assert!(c.set(Edge::new(1, 2), int(-1)).is_err());
    }
}
