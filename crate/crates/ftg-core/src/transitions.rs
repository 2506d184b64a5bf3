use std::collections::BTreeSet;

use crate::graph::{EdgeId, Graph, VertexId};

/// Set of permitted transitions, stored as unordered pairs of edge ids.
///
/// In a digraph the pair `{e, f}` may only be used at `v` when
/// `head(e) = v = tail(f)` (or the same with `e` and `f` swapped).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transitions {
    pairs: BTreeSet<(EdgeId, EdgeId)>,
}

fn key(e: EdgeId, f: EdgeId) -> (EdgeId, EdgeId) {
    (e.min(f), e.max(f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SameEdge(EdgeId),
    NotAdjacent(EdgeId, EdgeId),
    EdgeOutOfRange(EdgeId),
    /// Two arcs sharing a vertex but never head-to-tail.
    NotConsecutive(EdgeId, EdgeId),
}

impl Transitions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>) -> Self {
        let mut t = Self::new();
        for (e, f) in pairs {
            t.insert(e, f);
        }
        t
    }

    /// Every pair of distinct edges that can be traversed consecutively.
    pub fn all_permitted(g: &Graph) -> Self {
        let mut t = Self::new();
        for v in 0..g.n() {
            for (e, f) in all_pairs_at(g, v) {
                t.insert(e, f);
            }
        }
        t
    }

    pub fn insert(&mut self, e: EdgeId, f: EdgeId) -> bool {
        self.pairs.insert(key(e, f))
    }

    pub fn remove(&mut self, e: EdgeId, f: EdgeId) -> bool {
        self.pairs.remove(&key(e, f))
    }

    pub fn contains(&self, e: EdgeId, f: EdgeId) -> bool {
        self.pairs.contains(&key(e, f))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in increasing order, each with the smaller id first.
    pub fn pairs(&self) -> impl Iterator<Item = (EdgeId, EdgeId)> + '_ {
        self.pairs.iter().copied()
    }

    /// Whether a walk may arrive at `v` along `e` and leave along `f`.
    pub fn permits_at(&self, g: &Graph, v: VertexId, e: EdgeId, f: EdgeId) -> bool {
        if e == f || !self.contains(e, f) {
            return false;
        }
        if g.is_directed() {
            g.head(e) == v && g.tail(f) == v
        } else {
            g.has_endpoint(e, v) && g.has_endpoint(f, v)
        }
    }

    /// The view T(v): permitted pairs usable at `v`.
    pub fn at(&self, g: &Graph, v: VertexId) -> Vec<(EdgeId, EdgeId)> {
        all_pairs_at(g, v).into_iter().filter(|&(e, f)| self.contains(e, f)).collect()
    }
}

/// All pairs of distinct edges that a walk could use consecutively at `v`,
/// normalised with the smaller id first.
pub fn all_pairs_at(g: &Graph, v: VertexId) -> Vec<(EdgeId, EdgeId)> {
    let mut r = BTreeSet::new();
    if g.is_directed() {
        for e in g.in_edges(v) {
            for &f in g.out_edges(v) {
                if e != f {
                    r.insert(key(e, f));
                }
            }
        }
    } else {
        let inc = g.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                r.insert(key(e, f));
            }
        }
    }
    r.into_iter().collect()
}

pub fn validate_transition_system(g: &Graph, t: &Transitions) -> Vec<Violation> {
    let mut out = Vec::new();
    for (e, f) in t.pairs() {
        if e >= g.m() || f >= g.m() {
            out.push(Violation::EdgeOutOfRange(e.max(f)));
            continue;
        }
        if e == f {
            out.push(Violation::SameEdge(e));
            continue;
        }
        let common = g.common_vertices(e, f);
        if g.is_directed() {
            if common.is_empty() {
                out.push(Violation::NotAdjacent(e, f));
            } else if !(g.head(e) == g.tail(f) || g.head(f) == g.tail(e)) {
                out.push(Violation::NotConsecutive(e, f));
            }
        } else if common.len() != 1 {
            out.push(Violation::NotAdjacent(e, f));
        }
    }
    out
}

/// Edge colouring with colours in `1..=num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<u32>,
    pub num_colors: u32,
}

impl EdgeColoring {
    pub fn new(colors: Vec<u32>) -> Self {
        let num_colors = colors.iter().copied().max().unwrap_or(0);
        EdgeColoring { colors, num_colors }
    }

    pub fn with_palette(colors: Vec<u32>, num_colors: u32) -> Self {
        EdgeColoring { colors, num_colors }
    }

    pub fn color(&self, e: EdgeId) -> u32 {
        self.colors[e]
    }
}

/// The transition system whose compatible walks are the properly coloured walks.
pub fn proper_coloring_transitions(g: &Graph, c: &EdgeColoring) -> Transitions {
    let mut t = Transitions::new();
    for v in 0..g.n() {
        for (e, f) in all_pairs_at(g, v) {
            if c.color(e) != c.color(f) {
                t.insert(e, f);
            }
        }
    }
    t
}
