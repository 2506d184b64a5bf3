//! Exhaustive reference solvers. They share only the core data types with
//! the real solvers and are meant to be obviously correct, not fast.

use ftg_core::{dijkstra, dijkstra_to, EdgeColoring, EdgeId, Endpoint, Error, Graph, Result, Transitions, VertexId, Walk, Weight};

/// Search-node budget shared by the enumerators.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disjointness {
    Vertex,
    Edge,
}

struct Budget {
    left: u64,
}

impl Budget {
    fn new(n: u64) -> Self {
        Budget { left: n }
    }

    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded("oracle search budget exhausted".into()));
        }
        self.left -= 1;
        Ok(())
    }
}

fn guard(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge(format!("{what}: n = {n} exceeds oracle guard {max}")));
    }
    Ok(())
}

/// Orientations in which an endpoint can start a path: (first vertex, forced first edge).
fn starts(g: &Graph, x: Endpoint) -> Vec<(VertexId, Option<EdgeId>)> {
    match x {
        Endpoint::Vertex(v) => vec![(v, None)],
        Endpoint::Edge(e) => {
            let (a, b) = g.endpoints(e);
            if g.is_directed() {
                vec![(a, Some(e))]
            } else {
                vec![(a, Some(e)), (b, Some(e))]
            }
        }
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    t: &'a Transitions,
    end: Endpoint,
    max_len: usize,
    on_path: Vec<bool>,
    vs: Vec<VertexId>,
    es: Vec<EdgeId>,
    best: Option<Walk>,
    budget: Budget,
}

impl PathSearch<'_> {
    fn at_end(&self) -> bool {
        match self.end {
            Endpoint::Vertex(y) => *self.vs.last().unwrap() == y,
            Endpoint::Edge(f) => self.es.last() == Some(&f),
        }
    }

    fn dfs(&mut self) -> Result<()> {
        self.budget.tick()?;
        let len = self.es.len();
        if self.best.as_ref().is_some_and(|b| b.len() <= len) {
            return Ok(());
        }
        if self.at_end() {
            self.best = Some(Walk { vertices: self.vs.clone(), edges: self.es.clone() });
            return Ok(());
        }
        if len >= self.max_len {
            return Ok(());
        }
        let v = *self.vs.last().unwrap();
        for &e in self.g.out_edges(v) {
            let w = self.g.other(e, v);
            if self.on_path[w] {
                continue;
            }
            if let Some(&l) = self.es.last() {
                if !self.t.permits_at(self.g, v, l, e) {
                    continue;
                }
            }
            self.on_path[w] = true;
            self.vs.push(w);
            self.es.push(e);
            self.dfs()?;
            self.es.pop();
            self.vs.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }
}

/// Shortest compatible x-y path of length at most `max_len` (unbounded when `None`).
pub fn brute_compatible_path_witness(
    g: &Graph,
    t: &Transitions,
    x: Endpoint,
    y: Endpoint,
    max_len: Option<usize>,
) -> Result<Option<Walk>> {
    x.check(g)?;
    y.check(g)?;
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut s = PathSearch {
        g,
        t,
        end: y,
        max_len,
        on_path: vec![false; g.n()],
        vs: Vec::new(),
        es: Vec::new(),
        best: None,
        budget: Budget::new(DEFAULT_BUDGET),
    };
    for (v, first) in starts(g, x) {
        s.on_path[v] = true;
        s.vs.push(v);
        match first {
            None => s.dfs()?,
            Some(e) => {
                let w = g.other(e, v);
                if max_len >= 1 {
                    s.on_path[w] = true;
                    s.vs.push(w);
                    s.es.push(e);
                    s.dfs()?;
                    s.es.pop();
                    s.vs.pop();
                    s.on_path[w] = false;
                }
            }
        }
        s.vs.pop();
        s.on_path[v] = false;
    }
    Ok(s.best)
}

pub fn brute_compatible_path(
    g: &Graph,
    t: &Transitions,
    x: Endpoint,
    y: Endpoint,
    max_len: Option<usize>,
) -> Result<Option<usize>> {
    Ok(brute_compatible_path_witness(g, t, x, y, max_len)?.map(|w| w.len()))
}

/// Any compatible cycle (closing transition included), searched from its
/// smallest vertex.
pub fn brute_compatible_cycle(g: &Graph, t: &Transitions) -> Result<Option<Walk>> {
    let mut budget = Budget::new(DEFAULT_BUDGET);
    for s in 0..g.n() {
        let mut vs = vec![s];
        let mut es = Vec::new();
        let mut on = vec![false; g.n()];
        on[s] = true;
        if let Some(w) = cycle_dfs(g, t, s, &mut vs, &mut es, &mut on, &mut budget, false)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Compatible Hamiltonian cycle.
pub fn brute_compatible_hamiltonian_cycle(g: &Graph, t: &Transitions) -> Result<Option<Walk>> {
    if g.n() < 2 {
        return Ok(None);
    }
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let mut vs = vec![0];
    let mut es = Vec::new();
    let mut on = vec![false; g.n()];
    on[0] = true;
    cycle_dfs(g, t, 0, &mut vs, &mut es, &mut on, &mut budget, true)
}

#[allow(clippy::too_many_arguments)]
fn cycle_dfs(
    g: &Graph,
    t: &Transitions,
    s: VertexId,
    vs: &mut Vec<VertexId>,
    es: &mut Vec<EdgeId>,
    on: &mut [bool],
    budget: &mut Budget,
    hamiltonian: bool,
) -> Result<Option<Walk>> {
    budget.tick()?;
    let v = *vs.last().unwrap();
    for &e in g.out_edges(v) {
        if let Some(&l) = es.last() {
            if !t.permits_at(g, v, l, e) {
                continue;
            }
        }
        let w = g.other(e, v);
        if w == s {
            if es.is_empty() || es[0] == e || (hamiltonian && vs.len() != g.n()) {
                continue;
            }
            if t.permits_at(g, s, e, es[0]) {
                let mut cv = vs.clone();
                cv.push(s);
                let mut ce = es.clone();
                ce.push(e);
                return Ok(Some(Walk { vertices: cv, edges: ce }));
            }
            continue;
        }
        if on[w] || (!hamiltonian && w < s) {
            continue;
        }
        on[w] = true;
        vs.push(w);
        es.push(e);
        let r = cycle_dfs(g, t, s, vs, es, on, budget, hamiltonian)?;
        es.pop();
        vs.pop();
        on[w] = false;
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

struct Disjoint<'a> {
    g: &'a Graph,
    t: &'a Transitions,
    pairs: &'a [(VertexId, VertexId)],
    used_v: Vec<bool>,
    used_e: Vec<bool>,
    budget: Budget,
    paths: Vec<Walk>,
}

impl Disjoint<'_> {
    fn solve_pair(&mut self, i: usize) -> Result<bool> {
        if i == self.pairs.len() {
            return Ok(true);
        }
        let (a, b) = self.pairs[i];
        let mut vs = vec![a];
        let mut es = Vec::new();
        let mut on = vec![false; self.g.n()];
        on[a] = true;
        self.extend(i, b, &mut vs, &mut es, &mut on)
    }

    fn extend(
        &mut self,
        i: usize,
        b: VertexId,
        vs: &mut Vec<VertexId>,
        es: &mut Vec<EdgeId>,
        on: &mut Vec<bool>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let v = *vs.last().unwrap();
        if v == b {
            self.paths.push(Walk { vertices: vs.clone(), edges: es.clone() });
            if self.solve_pair(i + 1)? {
                return Ok(true);
            }
            self.paths.pop();
            return Ok(false);
        }
        for &e in self.g.out_edges(v) {
            let w = self.g.other(e, v);
            if on[w] || self.used_e[e] {
                continue;
            }
            if let Some(&l) = es.last() {
                if !self.t.permits_at(self.g, v, l, e) {
                    continue;
                }
            }
            on[w] = true;
            vs.push(w);
            es.push(e);
            self.used_e[e] = true;
            let r = self.extend(i, b, vs, es, on)?;
            self.used_e[e] = false;
            es.pop();
            vs.pop();
            on[w] = false;
            if r {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Pairwise disjoint compatible paths joining every terminal pair; returns
/// the paths when they exist.
pub fn brute_disjoint_paths_witness(
    g: &Graph,
    t: &Transitions,
    pairs: &[(VertexId, VertexId)],
    mode: Disjointness,
) -> Result<Option<Vec<Walk>>> {
    guard(g.n(), 16, "brute_disjoint_paths")?;
    let mut used_v = vec![false; g.n()];
    for &(a, b) in pairs {
        if a >= g.n() || b >= g.n() {
            return Err(Error::invalid("terminal out of range"));
        }
        if mode == Disjointness::Vertex {
            if a == b || used_v[a] || used_v[b] {
                return Ok(None);
            }
            used_v[a] = true;
            used_v[b] = true;
        }
    }
    let mut s = Disjoint {
        g,
        t,
        pairs,
        used_v,
        used_e: vec![false; g.m()],
        budget: Budget::new(DEFAULT_BUDGET),
        paths: Vec::new(),
    };
    let ok = if mode == Disjointness::Vertex { solve_vertex(&mut s)? } else { s.solve_pair(0)? };
    Ok(ok.then_some(s.paths))
}

fn solve_vertex(s: &mut Disjoint<'_>) -> Result<bool> {
    // Terminals of every pair stay blocked except while routing that pair.
    fn rec(s: &mut Disjoint<'_>, i: usize) -> Result<bool> {
        if i == s.pairs.len() {
            return Ok(true);
        }
        let (a, b) = s.pairs[i];
        s.used_v[b] = false;
        let mut vs = vec![a];
        let mut es = Vec::new();
        let mut on = vec![false; s.g.n()];
        on[a] = true;
        s.used_v[a] = true;
        let r = extend_vertex(s, i, b, &mut vs, &mut es, &mut on)?;
        s.used_v[b] = true;
        Ok(r)
    }
    fn extend_vertex(
        s: &mut Disjoint<'_>,
        i: usize,
        b: VertexId,
        vs: &mut Vec<VertexId>,
        es: &mut Vec<EdgeId>,
        on: &mut Vec<bool>,
    ) -> Result<bool> {
        s.budget.tick()?;
        let v = *vs.last().unwrap();
        if v == b {
            s.paths.push(Walk { vertices: vs.clone(), edges: es.clone() });
            if rec(s, i + 1)? {
                return Ok(true);
            }
            s.paths.pop();
            return Ok(false);
        }
        for &e in s.g.out_edges(v) {
            let w = s.g.other(e, v);
            if on[w] || s.used_v[w] {
                continue;
            }
            if let Some(&l) = es.last() {
                if !s.t.permits_at(s.g, v, l, e) {
                    continue;
                }
            }
            on[w] = true;
            s.used_v[w] = true;
            vs.push(w);
            es.push(e);
            let r = extend_vertex(s, i, b, vs, es, on)?;
            es.pop();
            vs.pop();
            s.used_v[w] = false;
            on[w] = false;
            if r {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut blocked = vec![false; s.g.n()];
    for &(a, b) in s.pairs {
        blocked[a] = true;
        blocked[b] = true;
    }
    s.used_v = blocked;
    rec(s, 0)
}

pub fn brute_disjoint_paths(
    g: &Graph,
    t: &Transitions,
    pairs: &[(VertexId, VertexId)],
    mode: Disjointness,
) -> Result<bool> {
    Ok(brute_disjoint_paths_witness(g, t, pairs, mode)?.is_some())
}

/// Properly coloured Hamiltonian cycle by enumeration.
pub fn brute_pchc(g: &Graph, c: &EdgeColoring) -> Result<bool> {
    guard(g.n(), 12, "brute_pchc")?;
    let n = g.n();
    if n < 3 {
        return Ok(false);
    }
    fn rec(g: &Graph, c: &EdgeColoring, path: &mut Vec<VertexId>, es: &mut Vec<EdgeId>, on: &mut [bool]) -> bool {
        let v = *path.last().unwrap();
        if path.len() == g.n() {
            return g.out_edges(v).iter().any(|&e| {
                g.other(e, v) == path[0]
                    && c.color(e) != c.color(*es.last().unwrap())
                    && c.color(e) != c.color(es[0])
            });
        }
        for &e in g.out_edges(v) {
            let w = g.other(e, v);
            if on[w] || es.last().is_some_and(|&l| c.color(l) == c.color(e)) {
                continue;
            }
            on[w] = true;
            path.push(w);
            es.push(e);
            let r = rec(g, c, path, es, on);
            es.pop();
            path.pop();
            on[w] = false;
            if r {
                return true;
            }
        }
        false
    }
    let mut on = vec![false; n];
    on[0] = true;
    Ok(rec(g, c, &mut vec![0], &mut Vec::new(), &mut on))
}

/// All compatible `s`-`t` paths whose weight equals the shortest-path distance.
pub fn shortest_compatible_paths(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    s: VertexId,
    tgt: VertexId,
) -> Result<Vec<Walk>> {
    let from = dijkstra(g, w, s);
    let to = dijkstra_to(g, w, tgt);
    let Some(d) = from[tgt] else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let mut on = vec![false; g.n()];
    on[s] = true;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        t: &Transitions,
        w: &[Weight],
        to: &[Option<Weight>],
        d: Weight,
        tgt: VertexId,
        acc: Weight,
        vs: &mut Vec<VertexId>,
        es: &mut Vec<EdgeId>,
        on: &mut [bool],
        out: &mut Vec<Walk>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        let v = *vs.last().unwrap();
        if v == tgt {
            if acc == d {
                out.push(Walk { vertices: vs.clone(), edges: es.clone() });
            }
            return Ok(());
        }
        for &e in g.out_edges(v) {
            let x = g.other(e, v);
            if on[x] {
                continue;
            }
            let Some(rest) = to[x] else { continue };
            let nacc = acc + w[e];
            if nacc + rest > d {
                continue;
            }
            if let Some(&l) = es.last() {
                if !t.permits_at(g, v, l, e) {
                    continue;
                }
            }
            on[x] = true;
            vs.push(x);
            es.push(e);
            rec(g, t, w, to, d, tgt, nacc, vs, es, on, out, budget)?;
            es.pop();
            vs.pop();
            on[x] = false;
        }
        Ok(())
    }
    rec(g, t, w, &to, d, tgt, Weight::from_integer(0), &mut vec![s], &mut Vec::new(), &mut on, &mut out, &mut budget)?;
    Ok(out)
}

/// Two disjoint shortest compatible paths for `(s1,t1)` and `(s2,t2)`.
pub fn brute_2dspp_witness(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    pairs: [(VertexId, VertexId); 2],
    mode: Disjointness,
) -> Result<Option<(Walk, Walk)>> {
    guard(g.n(), 12, "brute_2dspp")?;
    let p1 = shortest_compatible_paths(g, t, w, pairs[0].0, pairs[0].1)?;
    let p2 = shortest_compatible_paths(g, t, w, pairs[1].0, pairs[1].1)?;
    for a in &p1 {
        for b in &p2 {
            let ok = match mode {
                Disjointness::Vertex => a.vertices.iter().all(|v| !b.vertices.contains(v)),
                Disjointness::Edge => a.edges.iter().all(|e| !b.edges.contains(e)),
            };
            if ok {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

pub fn brute_2dspp(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    pairs: [(VertexId, VertexId); 2],
    mode: Disjointness,
) -> Result<bool> {
    Ok(brute_2dspp_witness(g, t, w, pairs, mode)?.is_some())
}

fn psi_check(g: &Graph, h: &Graph, col: &[VertexId]) -> Result<()> {
    if col.len() != g.n() {
        return Err(Error::invalid("colouring must cover V(G)"));
    }
    if col.iter().any(|&c| c >= h.n()) {
        return Err(Error::invalid("colour outside V(H)"));
    }
    guard(g.n(), 24, "brute_psi")
}

/// Colour-respecting injection of H into G preserving edges, by assigning H
/// vertices in increasing order.
pub fn brute_psi(g: &Graph, h: &Graph, col: &[VertexId]) -> Result<bool> {
    psi_check(g, h, col)?;
    let classes: Vec<Vec<VertexId>> = (0..h.n()).map(|i| (0..g.n()).filter(|&v| col[v] == i).collect()).collect();
    fn rec(g: &Graph, h: &Graph, classes: &[Vec<VertexId>], phi: &mut Vec<VertexId>) -> bool {
        let i = phi.len();
        if i == h.n() {
            return true;
        }
        for &v in &classes[i] {
            let ok = h.neighbors(i).filter(|&j| j < i).all(|j| g.find_edge(v, phi[j]).is_some());
            if ok {
                phi.push(v);
                if rec(g, h, classes, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    Ok(rec(g, h, &classes, &mut Vec::new()))
}

/// Second enumerator: full assignments in decreasing H-vertex order, edges
/// checked only once the assignment is complete.
pub fn brute_psi_reverse(g: &Graph, h: &Graph, col: &[VertexId]) -> Result<bool> {
    psi_check(g, h, col)?;
    let nh = h.n();
    let mut phi = vec![usize::MAX; nh];
    fn rec(g: &Graph, h: &Graph, col: &[VertexId], phi: &mut [VertexId], i: usize) -> bool {
        if i == 0 {
            return h.edges().iter().all(|&(a, b)| g.find_edge(phi[a], phi[b]).is_some());
        }
        let x = i - 1;
        for v in (0..g.n()).rev() {
            if col[v] == x {
                phi[x] = v;
                if rec(g, h, col, phi, i - 1) {
                    return true;
                }
            }
        }
        false
    }
    Ok(rec(g, h, col, &mut phi, nh))
}
