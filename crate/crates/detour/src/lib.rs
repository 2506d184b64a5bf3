//! Compatible s-t paths of length at most dist(s,t) + k, via a table over
//! inter-layer edges of the BFS layering from s. Also the line-graph test
//! for detour zero.

use std::collections::VecDeque;

use compath::{ArcGraph, ArcId, ComPath, End, HashMode, Start};
use ftg_core::{bfs_dist, is_compatible_walk, Error, Graph, Result, Transitions, VertexId, Walk};

/// BFS layering from a source vertex.
#[derive(Clone, Debug)]
pub struct Layers {
    pub dist: Vec<Option<usize>>,
}

impl Layers {
    pub fn new(g: &Graph, s: VertexId) -> Self {
        Layers { dist: bfs_dist(g, s).into_iter().map(|d| d.map(|x| x as usize)).collect() }
    }

    pub fn layer(&self, i: usize) -> Vec<VertexId> {
        (0..self.dist.len()).filter(|&v| self.dist[v] == Some(i)).collect()
    }

    /// An edge is inter-layer when its endpoints lie in different layers.
    pub fn is_inter_layer(&self, g: &Graph, e: usize) -> bool {
        let (u, v) = g.endpoints(e);
        self.dist[u] != self.dist[v]
    }

    /// Vertex mask of G_(x, q]: x together with every vertex whose layer lies
    /// strictly above the layer of x and at most q.
    pub fn window(&self, x: VertexId, q: usize) -> Vec<bool> {
        let m = self.dist[x].expect("x is reachable");
        (0..self.dist.len())
            .map(|v| v == x || self.dist[v].is_some_and(|d| m < d && d <= q))
            .collect()
    }

    /// Within-layer and backward edge counts of an s-rooted walk.
    pub fn profile(&self, w: &Walk) -> (usize, usize) {
        let mut within = 0;
        let mut back = 0;
        for i in 0..w.len() {
            let (a, b) = (self.dist[w.vertices[i]], self.dist[w.vertices[i + 1]]);
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => within += 1,
                std::cmp::Ordering::Greater => back += 1,
                std::cmp::Ordering::Less => {}
            }
        }
        (within, back)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetourResult {
    pub yes: bool,
    pub nu: Option<usize>,
    pub dist: Option<usize>,
    pub witness: Option<Walk>,
    pub diagnostic: Option<String>,
    pub subcalls: usize,
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Seed,
    Join { f: ArcId, g: ArcId, layer: usize },
}

struct Table<'a> {
    cp: ComPath<'a>,
    layers: Layers,
    tgt: VertexId,
    d: usize,
    k: usize,
    entry: Vec<Option<(usize, Origin)>>,
    subcalls: usize,
}

impl Table<'_> {
    fn bound(&self) -> usize {
        2 * self.k + 1
    }

    fn layer_of(&self, v: VertexId) -> Option<usize> {
        self.layers.dist[v].filter(|&x| x <= self.d + self.k)
    }

    fn is_upward(&self, a: ArcId) -> bool {
        let ag = &self.cp.ag;
        match (self.layer_of(ag.tail(a)), self.layer_of(ag.head(a))) {
            (Some(x), Some(y)) => y == x + 1,
            _ => false,
        }
    }

    fn upward_from(&self, v: VertexId) -> Vec<ArcId> {
        self.cp.ag.out_arcs(v).iter().copied().filter(|&a| self.is_upward(a)).collect()
    }

    fn seed(&mut self) -> Result<()> {
        let (d, k) = (self.d as i64, self.k as i64);
        let g = self.cp.graph();
        for x in 0..g.n() {
            let Some(m) = self.layer_of(x) else { continue };
            if (m as i64) < d - k - 1 {
                continue;
            }
            for a in self.upward_from(x) {
                let y = self.cp.ag.head(a);
                if (self.layer_of(y).unwrap() as i64) <= d - k - 1 {
                    continue;
                }
                let window = self.layers.window(x, self.d + self.k);
                let r = self.cp.solve_oriented(Start::Arc(a), End::Vertex(self.tgt), self.bound(), Some(&window), false)?;
                self.subcalls += 1;
                if let Some(len) = r.length {
                    if m + len <= self.d + self.k {
                        self.entry[a as usize] = Some((len, Origin::Seed));
                    }
                }
            }
        }
        Ok(())
    }

    fn fill_layer(&mut self, m: usize) -> Result<()> {
        let (d, k) = (self.d, self.k);
        for x in self.layers.layer(m) {
            for a in self.upward_from(x) {
                let mut best = self.entry[a as usize];
                for top in m + 1..=(m + k + 1).min(d + k) {
                    let window = self.layers.window(x, top);
                    let lens = self.cp.lengths_from_arc(a, self.bound(), Some(&window))?;
                    self.subcalls += 1;
                    for (f, len) in lens.iter().enumerate() {
                        let Some(r) = *len else { continue };
                        let f = f as ArcId;
                        let u = self.cp.ag.head(f);
                        if self.layer_of(u) != Some(top) {
                            continue;
                        }
                        for &g in self.cp.ag.successors(f) {
                            if !self.is_upward(g) {
                                continue;
                            }
                            let Some((p, _)) = self.entry[g as usize] else { continue };
                            let total = r + p;
                            if m + total <= d + k && best.map_or(true, |b| total < b.0) {
                                best = Some((total, Origin::Join { f, g, layer: top }));
                            }
                        }
                    }
                }
                self.entry[a as usize] = best;
            }
        }
        Ok(())
    }

    fn rebuild(&self, a: ArcId) -> Result<Vec<ArcId>> {
        let (len, origin) = self.entry[a as usize].ok_or_else(|| Error::internal("missing table entry"))?;
        let x = self.cp.ag.tail(a);
        let (res, rest) = match origin {
            Origin::Seed => {
                let window = self.layers.window(x, self.d + self.k);
                let r = self.cp.solve_oriented(Start::Arc(a), End::Vertex(self.tgt), self.bound(), Some(&window), true)?;
                (r, Vec::new())
            }
            Origin::Join { f, g, layer } => {
                let window = self.layers.window(x, layer);
                let r = self.cp.solve_oriented(Start::Arc(a), End::Arc(f), self.bound(), Some(&window), true)?;
                (r, self.rebuild(g)?)
            }
        };
        let w = res.witness.ok_or_else(|| Error::internal("subcall lost its witness"))?;
        let mut arcs: Vec<ArcId> = w
            .edges
            .iter()
            .zip(&w.vertices)
            .map(|(&e, &v)| self.cp.ag.arc_id(e, v).unwrap())
            .collect();
        arcs.extend(rest);
        if arcs.len() != len {
            return Err(Error::internal(format!("rebuilt length {} differs from table value {len}", arcs.len())));
        }
        Ok(arcs)
    }
}

fn walk_of(ag: &ArcGraph<'_>, arcs: &[ArcId]) -> Walk {
    let mut vertices = vec![ag.tail(arcs[0])];
    let mut edges = Vec::new();
    for &a in arcs {
        vertices.push(ag.head(a));
        edges.push(ag.edge(a));
    }
    Walk { vertices, edges }
}

/// Decides whether a compatible `s`-`tgt` path of length at most
/// dist(s, tgt) + k exists; reports the shortest such length found.
pub fn comdetour(
    g: &Graph,
    t: &Transitions,
    s: VertexId,
    tgt: VertexId,
    k: usize,
    mode: HashMode,
    want_witness: bool,
) -> Result<DetourResult> {
    if g.is_directed() {
        return Err(Error::invalid("detours are defined for undirected graphs"));
    }
    if s >= g.n() || tgt >= g.n() {
        return Err(Error::invalid("terminal out of range"));
    }
    if s == tgt {
        return Err(Error::precondition("source and target must differ"));
    }
    let layers = Layers::new(g, s);
    let mut out = DetourResult::default();
    let Some(d) = layers.dist[tgt] else {
        out.diagnostic = Some(format!("vertex {tgt} is unreachable from {s}"));
        return Ok(out);
    };
    out.dist = Some(d);
    let cp = ComPath::new(g, t, mode);
    if d <= k {
        let r = cp.solve_oriented(Start::Vertex(s), End::Vertex(tgt), d + k, None, want_witness)?;
        out.subcalls = 1;
        out.yes = r.length.is_some();
        out.nu = r.length;
        out.witness = r.witness;
        return Ok(out);
    }
    let num_arcs = cp.ag.num_arcs();
    let mut table = Table { cp, layers, tgt, d, k, entry: vec![None; num_arcs], subcalls: 0 };
    table.seed()?;
    for m in (0..=d - k - 1).rev() {
        table.fill_layer(m)?;
    }
    let start = table.upward_from(s);
    let best = start.iter().filter_map(|&a| table.entry[a as usize].map(|(l, _)| (l, a))).min();
    out.subcalls = table.subcalls;
    if let Some((nu, a)) = best {
        out.yes = true;
        out.nu = Some(nu);
        if want_witness {
            let arcs = table.rebuild(a)?;
            let w = walk_of(&table.cp.ag, &arcs);
            if !w.is_path() || !is_compatible_walk(g, t, &w)? || w.last() != tgt {
                return Err(Error::internal("rebuilt detour path failed validation"));
            }
            out.witness = Some(w);
        }
    }
    Ok(out)
}

/// Length dist(s, tgt) when a compatible s-tgt path of exactly that length
/// exists. Breadth-first search in the line graph restricted to permitted
/// transitions, with a source attached to the edges at `s`.
pub fn zero_detour_path(g: &Graph, t: &Transitions, s: VertexId, tgt: VertexId) -> Option<usize> {
    if s == tgt {
        return Some(0);
    }
    let d = bfs_dist(g, s)[tgt]? as usize;
    let ag = ArcGraph::new(g, t);
    let mut seen = vec![usize::MAX; ag.num_arcs()];
    let mut q = VecDeque::new();
    for &a in ag.out_arcs(s) {
        seen[a as usize] = 1;
        q.push_back(a);
    }
    while let Some(a) = q.pop_front() {
        let len = seen[a as usize];
        if ag.head(a) == tgt {
            return (len == d).then_some(d);
        }
        for &b in ag.successors(a) {
            if seen[b as usize] == usize::MAX {
                seen[b as usize] = len + 1;
                q.push_back(b);
            }
        }
    }
    None
}
