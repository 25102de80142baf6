//! Set-pair algebra: deficiency, covering, relations between two set-pairs,
//! meeting points and the two uncrossing operations.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{gamma, outside, Edge, Graph, NodeSet};

/// Unordered pair of disjoint, nonempty node sets with no graph edge between
/// them. Pieces are kept in canonical (lexicographic) order so equality
/// ignores orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPair {
    pieces: [NodeSet; 2],
}

impl SetPair {
    pub fn new(g: &Graph, a: NodeSet, b: NodeSet) -> Result<SetPair> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidSetPair("empty piece".into()));
        }
        if a.intersects(&b) {
            return Err(Error::InvalidSetPair(format!("pieces {a} and {b} overlap")));
        }
        if a.iter().chain(b.iter()).any(|v| v >= g.n()) {
            return Err(Error::InvalidSetPair("node out of range".into()));
        }
        if a.iter().any(|u| g.adjacent(u).iter().any(|&w| b.contains(w))) {
            return Err(Error::InvalidSetPair(format!("an edge joins {a} and {b}")));
        }
        Ok(Self::from_pieces_unchecked(a, b))
    }

    /// Caller guarantees the set-pair invariants.
    pub fn from_pieces_unchecked(a: NodeSet, b: NodeSet) -> SetPair {
        if a <= b {
            SetPair { pieces: [a, b] }
        } else {
            SetPair { pieces: [b, a] }
        }
    }

    pub fn piece(&self, i: usize) -> &NodeSet {
        &self.pieces[i]
    }

    pub fn pieces(&self) -> (&NodeSet, &NodeSet) {
        (&self.pieces[0], &self.pieces[1])
    }

    /// |Γ(𝕌)| = |V - (U0 ∪ U1)|.
    pub fn gamma_size(&self, n: usize) -> usize {
        n - self.pieces[0].len() - self.pieces[1].len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.pieces[0].contains(v) || self.pieces[1].contains(v)
    }
}

impl fmt::Display for SetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pieces[0], self.pieces[1])
    }
}

/// p(𝕌) = max{0, k - |Γ(𝕌)|}.
pub fn deficiency(g: &Graph, k: usize, p: &SetPair) -> usize {
    k.saturating_sub(p.gamma_size(g.n()))
}

/// Whether `e` has one endpoint in each piece.
pub fn covers(e: Edge, p: &SetPair) -> bool {
    let (a, b) = e.ends();
    let (x, y) = p.pieces();
    (x.contains(a) && y.contains(b)) || (x.contains(b) && y.contains(a))
}

/// d_F(𝕌): number of edges of `edges` covering the set-pair.
pub fn coverage_count<'a>(edges: impl IntoIterator<Item = &'a Edge>, p: &SetPair) -> usize {
    edges.into_iter().filter(|&&e| covers(e, p)).count()
}

/// The deficient set-pair (U, U*) of a deficient set U.
pub fn from_deficient_set(g: &Graph, k: usize, set: &NodeSet) -> Result<SetPair> {
    if set.is_empty() || gamma(g, set) >= k {
        return Err(Error::NotDeficient);
    }
    let star = outside(g, set);
    if star.is_empty() {
        return Err(Error::NotDeficient);
    }
    Ok(SetPair::from_pieces_unchecked(set.clone(), star))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRelation {
    Independent,
    /// Indices of the dominant piece of each set-pair (w.r.t. the other).
    Nested { first: usize, second: usize },
    Crossing,
}

impl PairRelation {
    /// The relation seen from the other set-pair.
    pub fn swap(self) -> PairRelation {
        match self {
            PairRelation::Nested { first, second } => PairRelation::Nested { first: second, second: first },
            other => other,
        }
    }
}

/// Classifies two distinct set-pairs as independent, nested or crossing.
pub fn classify(p: &SetPair, q: &SetPair) -> PairRelation {
    let free_piece = |a: &SetPair, b: &SetPair| {
        (0..2).any(|i| a.piece(i).is_disjoint(b.piece(0)) && a.piece(i).is_disjoint(b.piece(1)))
    };
    if free_piece(p, q) || free_piece(q, p) {
        return PairRelation::Independent;
    }
    for i in 0..2 {
        for j in 0..2 {
            if q.piece(1 - j).is_subset(p.piece(i)) && p.piece(1 - i).is_subset(q.piece(j)) {
                return PairRelation::Nested { first: i, second: j };
            }
        }
    }
    PairRelation::Crossing
}

/// Nodes that are an endpoint of some pair covering both set-pairs.
pub fn meeting_points(p: &SetPair, q: &SetPair) -> NodeSet {
    let mut out = NodeSet::new();
    for i in 0..2 {
        for j in 0..2 {
            if p.piece(1 - i).intersects(q.piece(1 - j)) {
                for v in p.piece(i).intersection(q.piece(j)).iter() {
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Pair of pieces produced by uncrossing; may have an empty piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecePair {
    pub first: NodeSet,
    pub second: NodeSet,
}

impl PiecePair {
    pub fn is_degenerate(&self) -> bool {
        self.first.is_empty() || self.second.is_empty()
    }

    /// |V - (A ∪ B)|; pieces produced by uncrossing are always disjoint.
    pub fn gamma_size(&self, n: usize) -> usize {
        n - self.first.union(&self.second).len()
    }

    pub fn deficiency(&self, n: usize, k: usize) -> usize {
        k.saturating_sub(self.gamma_size(n))
    }

    pub fn to_setpair(&self, g: &Graph) -> Result<SetPair> {
        SetPair::new(g, self.first.clone(), self.second.clone())
    }

    pub fn covers(&self, e: Edge) -> bool {
        let (a, b) = e.ends();
        (self.first.contains(a) && self.second.contains(b))
            || (self.first.contains(b) && self.second.contains(a))
    }
}

/// Uncrossing at meeting point `u ∈ U_i ∩ W_j`:
/// returns `(U_i ∪ W_j, U_{1-i} ∩ W_{1-j})` and `(U_i ∩ W_j, U_{1-i} ∪ W_{1-j})`.
pub fn uncross(p: &SetPair, q: &SetPair, u: usize) -> Result<(PiecePair, PiecePair)> {
    if !meeting_points(p, q).contains(u) {
        return Err(Error::NotMeetingPoint(u));
    }
    let i = if p.piece(0).contains(u) { 0 } else { 1 };
    let j = if q.piece(0).contains(u) { 0 } else { 1 };
    let (ui, uo) = (p.piece(i), p.piece(1 - i));
    let (wj, wo) = (q.piece(j), q.piece(1 - j));
    let otimes = PiecePair { first: ui.union(wj), second: uo.intersection(wo) };
    let oplus = PiecePair { first: ui.intersection(wj), second: uo.union(wo) };
    Ok((otimes, oplus))
}

/// Tail (strictly smaller piece; lexicographically smaller on ties) and head.
pub fn tail_head(p: &SetPair) -> (NodeSet, NodeSet) {
    let (a, b) = p.pieces();
    if a.len() < b.len() || (a.len() == b.len() && a <= b) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}
