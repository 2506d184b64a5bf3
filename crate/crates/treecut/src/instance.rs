//! Mutable ComVDP instances whose edges keep their identity across
//! termination and suppression, plus the SComVDP solver.

use std::collections::BTreeSet;

use ftg_core::{Error, Graph, Result, Transitions, VertexId};

/// Stable edge identifier. Edges of the input graph keep their ids.
pub type Key = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdpInstance {
    alive: Vec<bool>,
    ends: Vec<Option<(VertexId, VertexId)>>,
    inc: Vec<Vec<Key>>,
    trans: BTreeSet<(Key, Key)>,
    pub pairs: Vec<(VertexId, VertexId)>,
}

fn key(e: Key, f: Key) -> (Key, Key) {
    (e.min(f), e.max(f))
}

impl VdpInstance {
    pub fn new(g: &Graph, t: &Transitions, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        if g.is_directed() {
            return Err(Error::invalid("vertex-disjoint path instances must be undirected"));
        }
        let mut seen = vec![false; g.n()];
        for &(a, b) in pairs {
            if a >= g.n() || b >= g.n() || a == b {
                return Err(Error::invalid(format!("bad terminal pair ({a},{b})")));
            }
            for v in [a, b] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::invalid(format!("vertex {v} is in two terminal pairs")));
                }
            }
        }
        let mut inst = VdpInstance {
            alive: vec![true; g.n()],
            ends: Vec::new(),
            inc: vec![Vec::new(); g.n()],
            trans: BTreeSet::new(),
            pairs: pairs.to_vec(),
        };
        for &(u, v) in g.edges() {
            inst.add_edge(u, v);
        }
        for (e, f) in t.pairs() {
            if inst.common(e, f).is_some() {
                inst.trans.insert(key(e, f));
            }
        }
        Ok(inst)
    }

    pub fn slots(&self) -> usize {
        self.alive.len()
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    pub fn num_vertices(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn edge(&self, e: Key) -> Option<(VertexId, VertexId)> {
        self.ends.get(e).copied().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Key, VertexId, VertexId)> + '_ {
        self.ends.iter().enumerate().filter_map(|(e, x)| x.map(|(u, v)| (e, u, v)))
    }

    pub fn incident(&self, v: VertexId) -> &[Key] {
        &self.inc[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    pub fn other(&self, e: Key, v: VertexId) -> VertexId {
        let (a, b) = self.edge(e).expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.inc[v].iter().map(move |&e| self.other(e, v))
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<Key> {
        self.inc[u].iter().copied().find(|&e| self.other(e, u) == v)
    }

    /// The vertex shared by two distinct live edges.
    pub fn common(&self, e: Key, f: Key) -> Option<VertexId> {
        let (a, b) = self.edge(e)?;
        let (c, d) = self.edge(f)?;
        if e == f {
            return None;
        }
        [a, b].into_iter().find(|&x| x == c || x == d)
    }

    pub fn permits(&self, e: Key, f: Key) -> bool {
        self.common(e, f).is_some() && self.trans.contains(&key(e, f))
    }

    pub fn allow(&mut self, e: Key, f: Key) {
        debug_assert!(self.common(e, f).is_some());
        self.trans.insert(key(e, f));
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.alive.push(true);
        self.inc.push(Vec::new());
        self.alive.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Key {
        let e = self.ends.len();
        self.ends.push(Some((u, v)));
        self.inc[u].push(e);
        self.inc[v].push(e);
        e
    }

    pub fn remove_edge(&mut self, e: Key) {
        let Some((u, v)) = self.ends[e].take() else { return };
        self.inc[u].retain(|&x| x != e);
        self.inc[v].retain(|&x| x != e);
        self.trans.retain(|&(a, b)| a != e && b != e);
    }

    /// Deletes `v`, its edges, and every terminal pair containing it.
    pub fn remove_vertex(&mut self, v: VertexId) {
        for e in self.inc[v].clone() {
            self.remove_edge(e);
        }
        self.alive[v] = false;
        self.pairs.retain(|&(a, b)| a != v && b != v);
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Moves the `from` endpoint of `e` to `to`.
    fn repoint(&mut self, e: Key, from: VertexId, to: VertexId) {
        let (a, b) = self.ends[e].expect("live edge");
        self.ends[e] = Some(if a == from { (to, b) } else { (a, to) });
        self.inc[from].retain(|&x| x != e);
        self.inc[to].push(e);
    }

    fn purge_stale(&mut self) {
        let stale: Vec<(Key, Key)> =
            self.trans.iter().copied().filter(|&(a, b)| self.common(a, b).is_none()).collect();
        for p in stale {
            self.trans.remove(&p);
        }
    }

    /// Compact copy with vertices renumbered; also returns the original id of
    /// each new vertex and the original key of each new edge.
    pub fn to_graph(&self) -> (Graph, Transitions, Vec<(VertexId, VertexId)>, Vec<VertexId>, Vec<Key>) {
        let old: Vec<VertexId> = self.vertices().collect();
        let mut new_id = vec![usize::MAX; self.slots()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let keys: Vec<Key> = self.edges().map(|(e, _, _)| e).collect();
        let mut edge_id = vec![usize::MAX; self.ends.len()];
        for (i, &e) in keys.iter().enumerate() {
            edge_id[e] = i;
        }
        let g = Graph::undirected(
            old.len(),
            self.edges().map(|(_, u, v)| (new_id[u], new_id[v])).collect(),
        )
        .expect("instances stay simple");
        let t = Transitions::from_pairs(
            self.trans.iter().filter(|&&(a, b)| self.common(a, b).is_some()).map(|&(a, b)| (edge_id[a], edge_id[b])),
        );
        let pairs = self.pairs.iter().map(|&(a, b)| (new_id[a], new_id[b])).collect();
        (g, t, pairs, old, keys)
    }

    /// Terminates `groups` with respect to the subgraph induced by the vertices
    /// not flagged in `removed`. Each group edge keeps its key and has its
    /// removed endpoint replaced by the group's new vertex, so transitions at
    /// kept vertices carry over unchanged. Returns the new vertex of each group.
    pub fn terminate(&self, removed: &[bool], groups: &[Vec<Key>]) -> Result<(VdpInstance, Vec<VertexId>)> {
        let gone = |v: VertexId| removed.get(v).copied().unwrap_or(false);
        let mut used = BTreeSet::new();
        let mut inside = Vec::new();
        for grp in groups {
            if grp.is_empty() || grp.len() > 2 {
                return Err(Error::precondition("terminable groups hold one or two edges"));
            }
            let mut kept = Vec::new();
            for &e in grp {
                if !used.insert(e) {
                    return Err(Error::precondition(format!("edge {e} is in two groups")));
                }
                let (u, v) = self.edge(e).ok_or_else(|| Error::precondition(format!("edge {e} is not present")))?;
                match (gone(u), gone(v)) {
                    (false, true) => kept.push((u, v)),
                    (true, false) => kept.push((v, u)),
                    _ => return Err(Error::precondition(format!("edge {e} does not cross the cut"))),
                }
            }
            if kept.len() == 2 && kept[0].0 == kept[1].0 {
                return Err(Error::precondition("paired edges must have distinct inner endpoints"));
            }
            inside.push(kept);
        }
        let mut out = self.clone();
        let mut created = Vec::new();
        for (grp, kept) in groups.iter().zip(&inside) {
            let c = out.add_vertex();
            for (&e, &(_, far)) in grp.iter().zip(kept) {
                out.repoint(e, far, c);
            }
            created.push(c);
        }
        for v in 0..self.slots() {
            if gone(v) && out.alive[v] {
                out.remove_vertex(v);
            }
        }
        out.purge_stale();
        for grp in groups {
            if let [e, f] = grp[..] {
                out.allow(e, f);
            }
        }
        Ok((out, created))
    }

    /// Suppresses a vertex of degree at most two. Returns `false` and leaves
    /// the instance unchanged when `v` has neighbours `u`, `w` already joined
    /// by an edge and merging the transitions would admit new paths.
    pub fn suppress(&mut self, v: VertexId) -> Result<bool> {
        if !self.is_alive(v) {
            return Err(Error::invalid(format!("vertex {v} is not present")));
        }
        if self.degree(v) > 2 {
            return Err(Error::precondition(format!("vertex {v} has degree {}", self.degree(v))));
        }
        if self.degree(v) < 2 || !self.permits(self.inc[v][0], self.inc[v][1]) {
            self.remove_vertex(v);
            return Ok(true);
        }
        let (e, f) = (self.inc[v][0], self.inc[v][1]);
        let (u, w) = (self.other(e, v), self.other(f, v));
        let via = |s: &Self, x: VertexId, through: Key, skip: Key| -> BTreeSet<Key> {
            s.inc[x].iter().copied().filter(|&y| y != through && y != skip && s.permits(through, y)).collect()
        };
        match self.find_edge(u, w) {
            None => {
                let xu = via(self, u, e, e);
                let yw = via(self, w, f, f);
                let h = self.add_edge(u, w);
                for x in xu.into_iter().chain(yw) {
                    self.allow(h, x);
                }
            }
            Some(h) => {
                let xu = via(self, u, e, h);
                let xh = via(self, u, h, e);
                let yw = via(self, w, f, h);
                let yh = via(self, w, h, f);
                // None stands for the path ending at u or w.
                let left: Vec<Option<Key>> = xu.union(&xh).map(|&x| Some(x)).chain([None]).collect();
                let right: Vec<Option<Key>> = yw.union(&yh).map(|&y| Some(y)).chain([None]).collect();
                let inset = |s: &BTreeSet<Key>, x: Option<Key>| x.map_or(true, |x| s.contains(&x));
                let exact = left.iter().all(|&x| {
                    right.iter().all(|&y| (inset(&xh, x) && inset(&yh, y)) || (inset(&xu, x) && inset(&yw, y)))
                });
                if !exact {
                    return Ok(false);
                }
                for x in xu.into_iter().chain(yw) {
                    self.allow(h, x);
                }
            }
        }
        self.remove_vertex(v);
        Ok(true)
    }

    /// Exhaustive search for vertex-disjoint compatible paths joining every pair.
    pub fn solve_exhaustive(&self) -> bool {
        let mut blocked = vec![false; self.slots()];
        for &(a, b) in &self.pairs {
            blocked[a] = true;
            blocked[b] = true;
        }
        let mut order = self.pairs.clone();
        order.sort_by_key(|&(a, b)| self.degree(a).min(self.degree(b)));
        self.route(&order, 0, &mut blocked)
    }

    fn route(&self, pairs: &[(VertexId, VertexId)], i: usize, blocked: &mut Vec<bool>) -> bool {
        let Some(&(s, t)) = pairs.get(i) else { return true };
        if !self.is_alive(s) || !self.is_alive(t) {
            return false;
        }
        let mut path = Vec::new();
        self.extend(pairs, i, s, t, None, blocked, &mut path)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        pairs: &[(VertexId, VertexId)],
        i: usize,
        v: VertexId,
        t: VertexId,
        prev: Option<Key>,
        blocked: &mut Vec<bool>,
        path: &mut Vec<VertexId>,
    ) -> bool {
        for &e in &self.inc[v] {
            if prev.is_some_and(|p| !self.permits(p, e)) {
                continue;
            }
            let w = self.other(e, v);
            if w == t {
                if self.route(pairs, i + 1, blocked) {
                    return true;
                }
                continue;
            }
            if blocked[w] {
                continue;
            }
            blocked[w] = true;
            path.push(w);
            let ok = self.extend(pairs, i, w, t, Some(e), blocked, path);
            path.pop();
            blocked[w] = false;
            if ok {
                return true;
            }
        }
        false
    }

    /// SComVDP with `in_a` marking the set A; every other vertex must have
    /// degree at most two.
    pub fn solve_scomvdp(&self, in_a: &[bool]) -> Result<bool> {
        let a = |v: VertexId| in_a.get(v).copied().unwrap_or(false);
        if let Some(v) = self.vertices().find(|&v| !a(v) && self.degree(v) > 2) {
            return Err(Error::precondition(format!("vertex {v} outside A has degree {}", self.degree(v))));
        }
        if self.pairs.len() > self.num_vertices() {
            return Ok(false);
        }
        let mut count = vec![0u8; self.slots()];
        for &(x, y) in &self.pairs {
            if !self.is_alive(x) || !self.is_alive(y) {
                return Ok(false);
            }
            count[x] += 1;
            count[y] += 1;
        }
        if count.iter().any(|&c| c > 1) {
            return Ok(false);
        }
        let mut inst = self.clone();
        let mut kept_inner = 0;
        let bs: Vec<VertexId> = inst.vertices().filter(|&v| !a(v)).collect();
        for &v in &bs {
            if !inst.is_terminal(v) && !inst.suppress(v)? {
                kept_inner += 1;
            }
        }
        for &v in &bs {
            if !inst.is_alive(v) || !inst.is_terminal(v) {
                continue;
            }
            let p = inst.partner(v).unwrap();
            if inst.find_edge(v, p).is_some() {
                inst.remove_vertex(v);
                inst.remove_vertex(p);
            } else if !inst.neighbors(v).any(a) && inst.neighbors(v).all(|w| inst.is_terminal(w)) {
                return Ok(false);
            }
        }
        let nb = inst.vertices().filter(|&v| !a(v)).count();
        let na = inst.vertices().filter(|&v| a(v)).count();
        if kept_inner == 0 && nb > 2 * na {
            return Ok(false);
        }
        Ok(inst.solve_exhaustive())
    }
}
