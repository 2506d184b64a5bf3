//! Compatible paths and pairs of disjoint compatible paths in acyclic digraphs.

use std::collections::VecDeque;

use ftg_core::{is_compatible_walk, topological_order, EdgeId, Error, Graph, Result, Transitions, VertexId, Walk};

/// Arc sequences of the two paths, in order.
pub type PathPair = (Vec<EdgeId>, Vec<EdgeId>);

const UNSEEN: usize = usize::MAX;
const ROOT: usize = usize::MAX - 1;

fn check_dag(g: &Graph, terminals: &[VertexId]) -> Result<()> {
    if !g.is_directed() {
        return Err(Error::invalid("expected a directed graph"));
    }
    if terminals.iter().any(|&v| v >= g.n()) {
        return Err(Error::invalid("terminal out of range"));
    }
    if topological_order(g, |_| true).is_none() {
        return Err(Error::precondition("graph has a directed cycle"));
    }
    Ok(())
}

fn checked_walk(g: &Graph, t: &Transitions, start: VertexId, es: &[EdgeId]) -> Result<Walk> {
    let w = Walk::from_edges(g, start, es)?;
    if !w.is_path() || !is_compatible_walk(g, t, &w)? {
        return Err(Error::internal("reconstructed walk is not a compatible path"));
    }
    Ok(w)
}

/// A compatible `s`-`tgt` path, searched in the line digraph whose vertices
/// are arcs and whose arcs are permitted transitions.
pub fn dag_compatible_path(g: &Graph, t: &Transitions, s: VertexId, tgt: VertexId) -> Result<Option<Vec<EdgeId>>> {
    check_dag(g, &[s, tgt])?;
    if s == tgt {
        return Ok(Some(Vec::new()));
    }
    let mut parent = vec![UNSEEN; g.m()];
    let mut q = VecDeque::new();
    for &e in g.out_edges(s) {
        parent[e] = ROOT;
        q.push_back(e);
    }
    while let Some(e) = q.pop_front() {
        let v = g.head(e);
        if v == tgt {
            let mut path = vec![e];
            let mut cur = e;
            while parent[cur] != ROOT {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            checked_walk(g, t, s, &path)?;
            return Ok(Some(path));
        }
        for &f in g.out_edges(v) {
            if parent[f] == UNSEEN && t.permits_at(g, v, e, f) {
                parent[f] = e;
                q.push_back(f);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Edge,
    Vertex,
}

/// The input extended by sources `s₁'`, `s₂'`, sinks `t₁'`, `t₂'` and the
/// arcs `s₁'s₁`, `s₂'s₂`, `t₁t₁'`, `t₂t₂'` (ids `m`..`m+4`).
struct Augmented {
    g: Graph,
    t: Transitions,
    level: Vec<usize>,
    m: usize,
}

impl Augmented {
    fn new(g: &Graph, t: &Transitions, s: [VertexId; 2], e: [VertexId; 2]) -> Result<Self> {
        let n = g.n();
        let m = g.m();
        let mut arcs = g.edges().to_vec();
        arcs.extend([(n, s[0]), (n + 1, s[1]), (e[0], n + 2), (e[1], n + 3)]);
        let ag = Graph::directed(n + 4, arcs)?;
        let mut at = t.clone();
        for i in 0..2 {
            for &f in ag.out_edges(s[i]) {
                if f != m + i {
                    at.insert(m + i, f);
                }
            }
            for f in ag.in_edges(e[i]) {
                if f != m + 2 + i {
                    at.insert(f, m + 2 + i);
                }
            }
        }
        let order = topological_order(&ag, |_| true).ok_or_else(|| Error::internal("augmented graph is cyclic"))?;
        let mut level = vec![0; n + 4];
        for &v in order.iter().rev() {
            level[v] = ag.out_edges(v).iter().map(|&f| level[ag.head(f)] + 1).max().unwrap_or(0);
        }
        Ok(Augmented { g: ag, t: at, level, m })
    }

    fn head(&self, e: EdgeId) -> VertexId {
        self.g.head(e)
    }

    fn tail(&self, e: EdgeId) -> VertexId {
        self.g.tail(e)
    }

    fn lv(&self, e: EdgeId) -> usize {
        self.level[self.head(e)]
    }

    /// Successors of `(e1, e2)` in the pair digraph, tagged with the side
    /// that advanced (0 for the first path).
    fn successors(&self, mode: Mode, e1: EdgeId, e2: EdgeId, out: &mut Vec<(EdgeId, EdgeId, usize)>) {
        out.clear();
        let (end1, end2) = (self.m + 2, self.m + 3);
        let t1p = self.head(end1);
        let t2p = self.head(end2);
        // Types (1) and (3): the second path advances.
        let second = self.lv(e2) >= self.lv(e1) || (e1 == end1 && self.lv(e2) < self.level[t1p]);
        if second {
            let v = self.head(e2);
            for &f in self.g.out_edges(v) {
                if f == e1 || !self.t.permits_at(&self.g, v, e2, f) {
                    continue;
                }
                if mode == Mode::Vertex && (self.head(f) == self.tail(e1) || self.head(f) == self.head(e1)) {
                    continue;
                }
                out.push((e1, f, 1));
            }
        }
        // Types (2) and (4): the first path advances.
        let first = self.lv(e1) >= self.lv(e2) || (e2 == end2 && self.lv(e1) < self.level[t2p]);
        if first {
            let v = self.head(e1);
            for &f in self.g.out_edges(v) {
                if f == e2 || !self.t.permits_at(&self.g, v, e1, f) {
                    continue;
                }
                if mode == Mode::Vertex && (self.head(f) == self.tail(e2) || self.head(f) == self.head(e2)) {
                    continue;
                }
                out.push((f, e2, 0));
            }
        }
    }
}

fn two_disjoint(
    g: &Graph,
    t: &Transitions,
    s1: VertexId,
    t1: VertexId,
    s2: VertexId,
    t2: VertexId,
    mode: Mode,
) -> Result<Option<PathPair>> {
    check_dag(g, &[s1, t1, s2, t2])?;
    if mode == Mode::Vertex && [s1, t1].iter().any(|v| *v == s2 || *v == t2) {
        return Ok(None);
    }
    let a = Augmented::new(g, t, [s1, s2], [t1, t2])?;
    let mm = a.g.m();
    let idx = |e1: EdgeId, e2: EdgeId| e1 * mm + e2;
    let start = idx(a.m, a.m + 1);
    let goal = idx(a.m + 2, a.m + 3);
    let mut parent = vec![UNSEEN; mm * mm];
    parent[start] = ROOT;
    let mut q = VecDeque::from([start]);
    let mut buf = Vec::new();
    while let Some(x) = q.pop_front() {
        if x == goal {
            break;
        }
        a.successors(mode, x / mm, x % mm, &mut buf);
        for &(f1, f2, _) in &buf {
            let y = idx(f1, f2);
            if parent[y] == UNSEEN {
                parent[y] = x;
                q.push_back(y);
            }
        }
    }
    if parent[goal] == UNSEEN {
        return Ok(None);
    }
    let mut states = vec![goal];
    while parent[*states.last().unwrap()] != ROOT {
        states.push(parent[*states.last().unwrap()]);
    }
    states.reverse();
    let (mut p1, mut p2) = (vec![a.m], vec![a.m + 1]);
    for w in states.windows(2) {
        let (x1, x2) = (w[0] / mm, w[0] % mm);
        let (y1, y2) = (w[1] / mm, w[1] % mm);
        if x1 != y1 {
            p1.push(y1);
        }
        if x2 != y2 {
            p2.push(y2);
        }
    }
    let inner = |p: &[EdgeId]| p[1..p.len() - 1].to_vec();
    let (q1, q2) = (inner(&p1), inner(&p2));
    let w1 = checked_walk(g, t, s1, &q1)?;
    let w2 = checked_walk(g, t, s2, &q2)?;
    let disjoint = match mode {
        Mode::Edge => q1.iter().all(|e| !q2.contains(e)),
        Mode::Vertex => w1.vertices.iter().all(|v| !w2.vertices.contains(v)),
    };
    if w1.last() != t1 || w2.last() != t2 || !disjoint {
        return Err(Error::internal("reconstructed paths are not disjoint terminal paths"));
    }
    Ok(Some((q1, q2)))
}

/// Two arc-disjoint compatible paths `s1`-`t1` and `s2`-`t2`.
pub fn dag_two_edge_disjoint(
    g: &Graph,
    t: &Transitions,
    s1: VertexId,
    t1: VertexId,
    s2: VertexId,
    t2: VertexId,
) -> Result<Option<PathPair>> {
    two_disjoint(g, t, s1, t1, s2, t2, Mode::Edge)
}

/// Two vertex-disjoint compatible paths `s1`-`t1` and `s2`-`t2`.
pub fn dag_two_vertex_disjoint(
    g: &Graph,
    t: &Transitions,
    s1: VertexId,
    t1: VertexId,
    s2: VertexId,
    t2: VertexId,
) -> Result<Option<PathPair>> {
    two_disjoint(g, t, s1, t1, s2, t2, Mode::Vertex)
}
