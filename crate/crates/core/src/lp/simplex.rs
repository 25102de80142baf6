//! Exact bounded dual simplex for covering-type LPs.
//!
//! Solves `min c·x` subject to rows `a·x >= b` and `0 <= x_j <= u_j`, with
//! `c >= 0`. Starting from every structural at its lower bound is then dual
//! feasible, so the dual simplex needs no phase one, and a row appended after
//! an optimal solve only costs a few extra pivots. Leaving and entering
//! choices use smallest-index tie breaking.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct DualSimplex {
    structurals: usize,
    cost: Vec<Rat>,
    upper: Vec<Option<Rat>>,
    tableau: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    value: Vec<Rat>,
    reduced: Vec<Rat>,
    rows: Vec<(Vec<(usize, Rat)>, Rat)>,
    pivots: usize,
    max_pivots: usize,
}

impl DualSimplex {
    /// Structural columns with the given costs and optional upper bounds.
    /// Panics on a negative cost.
    pub fn new(cost: Vec<Rat>, upper: Vec<Option<Rat>>) -> DualSimplex {
        assert_eq!(cost.len(), upper.len());
        assert!(cost.iter().all(|c| !c.is_negative()), "costs must be nonnegative");
        let m = cost.len();
        DualSimplex {
            structurals: m,
            reduced: cost.clone(),
            cost,
            upper,
            tableau: Vec::new(),
            basis: Vec::new(),
            is_basic: vec![false; m],
            at_upper: vec![false; m],
            value: vec![Rat::zero(); m],
            rows: Vec::new(),
            pivots: 0,
            max_pivots: 200_000,
        }
    }

    pub fn with_max_pivots(mut self, max: usize) -> Self {
        self.max_pivots = max;
        self
    }

    pub fn structurals(&self) -> usize {
        self.structurals
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[(Vec<(usize, Rat)>, Rat)] {
        &self.rows
    }

    pub fn costs(&self) -> &[Rat] {
        &self.cost[..self.structurals]
    }

    pub fn upper_bounds(&self) -> &[Option<Rat>] {
        &self.upper[..self.structurals]
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Appends `Σ coeffs · x >= rhs`; the new surplus column starts basic.
    pub fn add_row(&mut self, coeffs: Vec<(usize, Rat)>, rhs: Rat) {
        let slack = self.cost.len();
        self.cost.push(Rat::zero());
        self.upper.push(None);
        self.reduced.push(Rat::zero());
        self.is_basic.push(true);
        self.at_upper.push(false);
        for row in &mut self.tableau {
            row.push(Rat::zero());
        }
        let width = self.cost.len();
        let mut row = vec![Rat::zero(); width];
        let mut level = -rhs.clone();
        for (j, a) in &coeffs {
            assert!(*j < self.structurals, "row references unknown column {j}");
            row[*j] = &row[*j] - a;
            level += a * &self.value[*j];
        }
        row[slack] = Rat::from_integer(1.into());
        for (i, &b) in self.basis.iter().enumerate() {
            if row[b].is_zero() {
                continue;
            }
            let f = row[b].clone();
            for (x, y) in row.iter_mut().zip(&self.tableau[i]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.value.push(level);
        self.tableau.push(row);
        self.basis.push(slack);
        self.rows.push((coeffs, rhs));
    }

    fn infeasibility(&self, col: usize) -> Option<bool> {
        let v = &self.value[col];
        if v.is_negative() {
            Some(false)
        } else {
            match &self.upper[col] {
                Some(u) if v > u => Some(true),
                _ => None,
            }
        }
    }

    /// Re-optimizes after rows were added.
    pub fn solve(&mut self) -> Result<LpStatus> {
        loop {
            let mut leave: Option<(usize, usize, bool)> = None;
            for (r, &b) in self.basis.iter().enumerate() {
                if let Some(above) = self.infeasibility(b) {
                    if leave.map_or(true, |(_, lb, _)| b < lb) {
                        leave = Some((r, b, above));
                    }
                }
            }
            let Some((r, leaving, above)) = leave else {
                return Ok(LpStatus::Optimal);
            };
            if self.pivots >= self.max_pivots {
                return Err(Error::IterationLimit(self.max_pivots));
            }

            let row = &self.tableau[r];
            let mut enter: Option<(usize, Rat)> = None;
            for (j, t) in row.iter().enumerate() {
                if t.is_zero() || self.is_basic[j] {
                    continue;
                }
                if matches!(&self.upper[j], Some(u) if u.is_zero()) {
                    continue;
                }
                let up = self.at_upper[j];
                // below: x_B must rise; above: x_B must fall
                let eligible = match (above, up) {
                    (false, false) => t.is_negative(),
                    (false, true) => t.is_positive(),
                    (true, false) => t.is_positive(),
                    (true, true) => t.is_negative(),
                };
                if !eligible {
                    continue;
                }
                let ratio = (&self.reduced[j] / t).abs();
                if enter.as_ref().map_or(true, |(_, best)| ratio < *best) {
                    enter = Some((j, ratio));
                }
            }
            let Some((j, _)) = enter else {
                return Ok(LpStatus::Infeasible);
            };
            let target = if above {
                self.upper[leaving].clone().expect("above implies an upper bound")
            } else {
                Rat::zero()
            };
            self.pivot(r, j, leaving, target, above);
        }
    }

    fn pivot(&mut self, r: usize, j: usize, leaving: usize, target: Rat, above: bool) {
        self.pivots += 1;
        let t = self.tableau[r][j].clone();
        let delta = (&self.value[leaving] - &target) / &t;
        for (i, &b) in self.basis.iter().enumerate() {
            let a = &self.tableau[i][j];
            if !a.is_zero() {
                self.value[b] -= a * &delta;
            }
        }
        self.value[j] += &delta;
        self.value[leaving] = target;

        let inv = Rat::from_integer(1.into()) / &t;
        let nonzero: Vec<usize> =
            (0..self.tableau[r].len()).filter(|&c| !self.tableau[r][c].is_zero()).collect();
        for &c in &nonzero {
            self.tableau[r][c] *= &inv;
        }
        let pivot_row = self.tableau[r].clone();
        for (i, row) in self.tableau.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for &c in &nonzero {
                row[c] -= &f * &pivot_row[c];
            }
        }
        if !self.reduced[j].is_zero() {
            let f = self.reduced[j].clone();
            for &c in &nonzero {
                self.reduced[c] -= &f * &pivot_row[c];
            }
        }
        self.basis[r] = j;
        self.is_basic[j] = true;
        self.is_basic[leaving] = false;
        self.at_upper[j] = false;
        self.at_upper[leaving] = above;
    }

    /// Structural values of the current basic solution.
    pub fn solution(&self) -> Vec<Rat> {
        self.value[..self.structurals].to_vec()
    }

    pub fn objective(&self) -> Rat {
        self.cost.iter().zip(&self.value).map(|(c, v)| c * v).sum()
    }

    /// Structural columns that are basic (the rest sit at a bound).
    pub fn basic_structurals(&self) -> Vec<usize> {
        self.basis.iter().copied().filter(|&b| b < self.structurals).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn lp(costs: &[i64], ub: Option<i64>) -> DualSimplex {
        DualSimplex::new(
            costs.iter().map(|&c| int(c)).collect(),
            costs.iter().map(|_| ub.map(int)).collect(),
        )
    }

    #[test]
    fn no_rows_is_zero() {
        let mut s = lp(&[1, 2], Some(1));
        assert_eq!(s.solve().unwrap(), LpStatus::Optimal);
        assert_eq!(s.solution(), vec![int(0), int(0)]);
    }

    #[test]
    fn triangle_cover_half_integral() {
        // min x0+x1+x2, x0+x1>=1, x1+x2>=1, x0+x2>=1  -> all 1/2, objective 3/2
        let mut s = lp(&[1, 1, 1], Some(1));
        s.add_row(vec![(0, int(1)), (1, int(1))], int(1));
        s.add_row(vec![(1, int(1)), (2, int(1))], int(1));
        s.add_row(vec![(0, int(1)), (2, int(1))], int(1));
        assert_eq!(s.solve().unwrap(), LpStatus::Optimal);
        assert_eq!(s.objective(), rat(3, 2));
        assert_eq!(s.solution(), vec![rat(1, 2); 3]);
    }

    #[test]
    fn incremental_rows_match_batch() {
        let mut a = lp(&[3, 1, 2, 4], Some(1));
        let mut b = a.clone();
        let rows = vec![
            (vec![(0, int(1)), (1, int(1))], int(1)),
            (vec![(1, int(1)), (2, int(1)), (3, int(1))], int(2)),
            (vec![(0, int(1)), (3, int(1))], int(1)),
        ];
        for (c, r) in rows.clone() {
            a.add_row(c, r);
            a.solve().unwrap();
        }
        for (c, r) in rows {
            b.add_row(c, r);
        }
        b.solve().unwrap();
        assert_eq!(a.objective(), b.objective());
        assert_eq!(a.objective(), int(5));
    }

    #[test]
    fn upper_bounds_bind() {
        // min x0 + 10 x1, x0 + x1 >= 2, x <= 1  -> x0 = x1 = 1
        let mut s = lp(&[1, 10], Some(1));
        s.add_row(vec![(0, int(1)), (1, int(1))], int(2));
        s.solve().unwrap();
        assert_eq!(s.solution(), vec![int(1), int(1)]);
        assert_eq!(s.objective(), int(11));
    }

    #[test]
    fn infeasible_detected() {
        let mut s = lp(&[1, 1], Some(1));
        s.add_row(vec![(0, int(1)), (1, int(1))], int(3));
        assert_eq!(s.solve().unwrap(), LpStatus::Infeasible);
    }

    #[test]
    fn zero_costs_are_fine() {
        let mut s = lp(&[0, 0, 5], Some(1));
        s.add_row(vec![(0, int(1)), (2, int(1))], int(1));
        s.add_row(vec![(1, int(1)), (2, int(1))], int(1));
        s.solve().unwrap();
        assert_eq!(s.objective(), int(0));
    }
}
