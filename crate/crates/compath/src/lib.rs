//! Shortest compatible paths of bounded length by colour coding: perfect hash
//! families and a dynamic program over colour sets and arcs.

pub mod dp;
pub mod hash;

use std::collections::VecDeque;

use ftg_core::{Endpoint, Error, Graph, Result, Transitions, VertexId, Walk};

pub use dp::{colorful_dp, ArcGraph, ArcId, ColorfulTable, Start, MAX_COLORS, NO_COLOR};
pub use hash::{build_hash_family, cached_family, HashFamily, HashMode};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Where an oriented search must end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Vertex(VertexId),
    Arc(ArcId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathResult {
    pub length: Option<usize>,
    pub witness: Option<Walk>,
    /// Largest hash family consulted.
    pub family_size: usize,
    pub dp_runs: usize,
}

/// Solver bound to one forbidden-transition graph.
pub struct ComPath<'a> {
    pub ag: ArcGraph<'a>,
    pub mode: HashMode,
}

struct Palette {
    num_colors: usize,
    reserved: Vec<(VertexId, u8)>,
    free: Vec<u8>,
}

/// Reserved colours: first vertex 0, last vertex `C-1`, second vertex 1 and
/// last-but-one vertex `C-2` when the corresponding end is an arc.
fn palette(num_colors: usize, s0: VertexId, s1: Option<VertexId>, z0: VertexId, z1: Option<VertexId>) -> Option<Palette> {
    if num_colors < 2 || s0 == z0 {
        return None;
    }
    let mut reserved = vec![(s0, 0u8), (z0, (num_colors - 1) as u8)];
    if let Some(b) = s1 {
        if b != z0 {
            reserved.push((b, 1));
        }
    }
    if let Some(p) = z1 {
        if p != s0 && Some(p) != s1 {
            reserved.push((p, (num_colors - 2) as u8));
        }
    }
    if reserved.len() > num_colors {
        return None;
    }
    let mut used = vec![false; num_colors];
    for &(_, c) in &reserved {
        if used[c as usize] {
            return None;
        }
        used[c as usize] = true;
    }
    let free = (0..num_colors as u8).filter(|&c| !used[c as usize]).collect();
    Some(Palette { num_colors, reserved, free })
}

impl<'a> ComPath<'a> {
    pub fn new(g: &'a Graph, t: &Transitions, mode: HashMode) -> Self {
        ComPath { ag: ArcGraph::new(g, t), mode }
    }

    pub fn graph(&self) -> &Graph {
        self.ag.g
    }

    fn walk_of(&self, arcs: &[ArcId]) -> Walk {
        let mut vertices = vec![self.ag.tail(arcs[0])];
        let mut edges = Vec::new();
        for &a in arcs {
            vertices.push(self.ag.head(a));
            edges.push(self.ag.edge(a));
        }
        Walk { vertices, edges }
    }

    /// BFS distance inside the allowed region, ignoring transitions.
    fn lower_bound(&self, from: VertexId, to: VertexId, allowed: Option<&[bool]>) -> Option<usize> {
        let g = self.ag.g;
        let ok = |v: VertexId| allowed.map_or(true, |a| a[v]);
        let mut d = vec![usize::MAX; g.n()];
        d[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            if u == to {
                return Some(d[u]);
            }
            for &a in self.ag.out_arcs(u) {
                let v = self.ag.head(a);
                if ok(v) && d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        None
    }

    /// Colourings derived from the family for the given palette. Every
    /// allowed non-reserved vertex takes a free colour.
    fn colorings(&self, pal: &Palette, allowed: Option<&[bool]>) -> (Vec<Vec<u8>>, usize) {
        let g = self.ag.g;
        let mut base = vec![NO_COLOR; g.n()];
        for &(v, c) in &pal.reserved {
            base[v] = c;
        }
        let free_vs: Vec<VertexId> = (0..g.n())
            .filter(|&v| base[v] == NO_COLOR && allowed.map_or(true, |a| a[v]))
            .collect();
        if pal.free.is_empty() || free_vs.is_empty() {
            return (vec![base], 1);
        }
        let fam = cached_family(free_vs.len(), pal.free.len(), self.mode);
        let cols = fam
            .functions
            .iter()
            .map(|f| {
                let mut c = base.clone();
                for (i, &v) in free_vs.iter().enumerate() {
                    c[v] = pal.free[f[i] as usize];
                }
                c
            })
            .collect();
        (cols, fam.len())
    }

    /// Shortest compatible path from `start` to `end` with at most `k`
    /// edges, using only vertices flagged in `allowed`.
    pub fn solve_oriented(
        &self,
        start: Start,
        end: End,
        k: usize,
        allowed: Option<&[bool]>,
        want_witness: bool,
    ) -> Result<PathResult> {
        let ag = &self.ag;
        let (s0, s1) = match start {
            Start::Vertex(x) => (x, None),
            Start::Arc(a) => (ag.tail(a), Some(ag.head(a))),
        };
        let (z0, z1) = match end {
            End::Vertex(y) => (y, None),
            End::Arc(a) => (ag.head(a), Some(ag.tail(a))),
        };
        let ok = |v: VertexId| allowed.map_or(true, |a| a[v]);
        let mut res = PathResult::default();
        if let (Start::Vertex(x), End::Vertex(y)) = (start, end) {
            if x == y {
                if ok(x) {
                    res.length = Some(0);
                    res.witness = want_witness.then(|| Walk::single(x));
                }
                return Ok(res);
            }
        }
        if [Some(s0), s1, Some(z0), z1].iter().flatten().any(|&v| !ok(v)) {
            return Ok(res);
        }
        if k + 1 > MAX_COLORS {
            return Err(Error::TooLarge(format!("length bound {k} exceeds {}", MAX_COLORS - 1)));
        }
        let Some(pal) = palette(k + 1, s0, s1, z0, z1) else { return Ok(res) };
        let Some(lb) = self.lower_bound(s0, z0, allowed) else { return Ok(res) };
        if lb > k {
            return Ok(res);
        }
        let (cols, fam_size) = self.colorings(&pal, allowed);
        res.family_size = fam_size;
        let end_arcs: Vec<ArcId> = match end {
            End::Vertex(y) => ag.in_arcs(y).to_vec(),
            End::Arc(a) => vec![a],
        };
        let mut best: Option<(usize, usize, u32, ArcId)> = None;
        for (i, col) in cols.iter().enumerate() {
            let table = colorful_dp(ag, col, pal.num_colors, start);
            res.dp_runs += 1;
            if let Some((len, s, a)) = table.min_len(&end_arcs) {
                if best.map_or(true, |b| len < b.0) {
                    best = Some((len, i, s, a));
                }
            }
            if best.is_some_and(|b| b.0 <= lb.max(1)) {
                break;
            }
        }
        if let Some((len, i, s, a)) = best {
            res.length = Some(len);
            if want_witness {
                let table = colorful_dp(ag, &cols[i], pal.num_colors, start);
                res.witness = Some(self.walk_of(&table.witness(ag, &cols[i], s, a)));
            }
        }
        Ok(res)
    }

    /// Generalised x-y query; an edge endpoint may be traversed in either direction.
    pub fn solve(&self, x: Endpoint, y: Endpoint, k: usize, want_witness: bool) -> Result<PathResult> {
        let g = self.ag.g;
        x.check(g)?;
        y.check(g)?;
        let starts: Vec<Start> = match x {
            Endpoint::Vertex(v) => vec![Start::Vertex(v)],
            Endpoint::Edge(e) => {
                let (u, v) = g.endpoints(e);
                [u, v].iter().filter_map(|&w| self.ag.arc_id(e, w)).map(Start::Arc).collect()
            }
        };
        let ends: Vec<End> = match y {
            Endpoint::Vertex(v) => vec![End::Vertex(v)],
            Endpoint::Edge(e) => {
                let (u, v) = g.endpoints(e);
                [u, v].iter().filter_map(|&w| self.ag.arc_id(e, w)).map(End::Arc).collect()
            }
        };
        let mut best = PathResult::default();
        for &s in &starts {
            for &e in &ends {
                let r = self.solve_oriented(s, e, k, None, want_witness)?;
                best.family_size = best.family_size.max(r.family_size);
                best.dp_runs += r.dp_runs;
                if r.length.is_some() && best.length.map_or(true, |l| r.length.unwrap() < l) {
                    best.length = r.length;
                    best.witness = r.witness;
                }
            }
        }
        Ok(best)
    }

    /// Shortest compatible paths of at most `k` edges that start with the
    /// arc `start`, to every end arc at once, inside the allowed region.
    pub fn lengths_from_arc(&self, start: ArcId, k: usize, allowed: Option<&[bool]>) -> Result<Vec<Option<usize>>> {
        let ag = &self.ag;
        let (x, y) = (ag.tail(start), ag.head(start));
        let mut out = vec![None; ag.num_arcs()];
        let ok = |v: VertexId| allowed.map_or(true, |a| a[v]);
        if k == 0 || !ok(x) || !ok(y) {
            return Ok(out);
        }
        if k + 1 > MAX_COLORS {
            return Err(Error::TooLarge(format!("length bound {k} exceeds {}", MAX_COLORS - 1)));
        }
        let num_colors = k + 1;
        let pal = Palette {
            num_colors,
            reserved: vec![(x, 0), (y, 1)],
            free: (2..num_colors as u8).collect(),
        };
        let (cols, _) = self.colorings(&pal, allowed);
        for col in &cols {
            let table = colorful_dp(ag, col, num_colors, Start::Arc(start));
            for (a, l) in table.min_len_per_arc(ag.num_arcs()).into_iter().enumerate() {
                if let Some(l) = l {
                    if out[a].map_or(true, |o| l < o) {
                        out[a] = Some(l);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Colourful-path query for a fixed colouring `coloring: V -> {0..=k}` in
/// which the first vertex has colour 0 and the last vertex colour `k`.
/// Returns the minimum |S| - 1 over sets S containing both colours.
pub fn colorful_compatible_path(
    g: &Graph,
    t: &Transitions,
    x: Endpoint,
    y: Endpoint,
    coloring: &[u8],
    k: usize,
) -> Result<Option<usize>> {
    x.check(g)?;
    y.check(g)?;
    if coloring.len() != g.n() || coloring.iter().any(|&c| c as usize > k) {
        return Err(Error::invalid("colouring must map every vertex into 0..=k"));
    }
    let ag = ArcGraph::new(g, t);
    let top = 1u32 << k;
    let mut best: Option<usize> = None;
    let starts: Vec<Start> = match x {
        Endpoint::Vertex(v) => vec![Start::Vertex(v)],
        Endpoint::Edge(e) => {
            let (u, v) = g.endpoints(e);
            [u, v].iter().filter_map(|&w| ag.arc_id(e, w)).map(Start::Arc).collect()
        }
    };
    let ends: Vec<ArcId> = match y {
        Endpoint::Vertex(v) => ag.in_arcs(v).to_vec(),
        Endpoint::Edge(e) => {
            let (u, v) = g.endpoints(e);
            [u, v].iter().filter_map(|&w| ag.arc_id(e, w)).collect()
        }
    };
    for s in starts {
        let first = match s {
            Start::Vertex(v) => v,
            Start::Arc(a) => ag.tail(a),
        };
        if coloring[first] != 0 {
            continue;
        }
        let table = colorful_dp(&ag, coloring, k + 1, s);
        for (set, w) in table.entries() {
            if set & top == 0 {
                continue;
            }
            if ends.iter().any(|&a| w[a as usize / 64] >> (a % 64) & 1 == 1) {
                let l = set.count_ones() as usize - 1;
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
    }
    Ok(best)
}

/// Length of a shortest compatible x-y path with at most `k` edges.
pub fn compath(g: &Graph, t: &Transitions, x: Endpoint, y: Endpoint, k: usize) -> Result<Option<usize>> {
    Ok(ComPath::new(g, t, HashMode::Auto { seed: DEFAULT_SEED }).solve(x, y, k, false)?.length)
}
