use ftg_core::{EdgeId, Graph, Transitions, VertexId};

/// Marks a vertex that may not appear on the path.
pub const NO_COLOR: u8 = u8::MAX;

/// Largest palette the dense colour-set table supports.
pub const MAX_COLORS: usize = 22;

pub type ArcId = u32;

/// Oriented view of a graph: each undirected edge yields two arcs, and every
/// arc knows which arcs may follow it under the transition system.
pub struct ArcGraph<'a> {
    pub g: &'a Graph,
    arcs: Vec<(VertexId, VertexId, EdgeId)>,
    out: Vec<Vec<ArcId>>,
    into: Vec<Vec<ArcId>>,
    succ: Vec<Vec<ArcId>>,
    pred: Vec<Vec<ArcId>>,
}

impl<'a> ArcGraph<'a> {
    pub fn new(g: &'a Graph, t: &Transitions) -> Self {
        let mut arcs = Vec::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            arcs.push((u, v, e));
            if !g.is_directed() {
                arcs.push((v, u, e));
            }
        }
        let mut out = vec![Vec::new(); g.n()];
        let mut into = vec![Vec::new(); g.n()];
        for (a, &(u, v, _)) in arcs.iter().enumerate() {
            out[u].push(a as ArcId);
            into[v].push(a as ArcId);
        }
        let mut succ = vec![Vec::new(); arcs.len()];
        let mut pred = vec![Vec::new(); arcs.len()];
        for (a, &(_, v, e)) in arcs.iter().enumerate() {
            for &b in &out[v] {
                let f = arcs[b as usize].2;
                if f != e && t.contains(e, f) {
                    succ[a].push(b);
                    pred[b as usize].push(a as ArcId);
                }
            }
        }
        ArcGraph { g, arcs, out, into, succ, pred }
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId, EdgeId) {
        self.arcs[a as usize]
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a as usize].0
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a as usize].1
    }

    pub fn edge(&self, a: ArcId) -> EdgeId {
        self.arcs[a as usize].2
    }

    /// The arc traversing `e` out of `from`.
    pub fn arc_id(&self, e: EdgeId, from: VertexId) -> Option<ArcId> {
        let (u, v) = self.g.endpoints(e);
        if self.g.is_directed() {
            (u == from).then_some(e as ArcId)
        } else if u == from {
            Some(2 * e as ArcId)
        } else if v == from {
            Some(2 * e as ArcId + 1)
        } else {
            None
        }
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out[v]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.into[v]
    }

    pub fn successors(&self, a: ArcId) -> &[ArcId] {
        &self.succ[a as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Start {
    Vertex(VertexId),
    Arc(ArcId),
}

/// Table D[S, u->v] for colour sets S containing colour 0, stored as one
/// arc bitset per set (allocated on first use).
pub struct ColorfulTable {
    sets: Vec<Option<Vec<u64>>>,
    base: Vec<(u32, ArcId)>,
}

fn idx(s: u32) -> usize {
    (s >> 1) as usize
}

impl ColorfulTable {
    fn get(&self, s: u32, a: ArcId) -> bool {
        self.sets[idx(s)].as_ref().is_some_and(|w| w[a as usize / 64] >> (a % 64) & 1 == 1)
    }

    /// Colour sets in increasing order together with their arc bitsets.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &[u64])> {
        self.sets.iter().enumerate().filter_map(|(i, w)| w.as_ref().map(|w| (((i as u32) << 1) | 1, w.as_slice())))
    }

    /// Smallest |S| - 1 among sets S with D[S, a] true for some listed arc.
    pub fn min_len<'b>(&self, arcs: impl IntoIterator<Item = &'b ArcId> + Clone) -> Option<(usize, u32, ArcId)> {
        let mut best: Option<(usize, u32, ArcId)> = None;
        for (s, w) in self.entries() {
            let len = s.count_ones() as usize - 1;
            if best.is_some_and(|b| b.0 <= len) {
                continue;
            }
            for &a in arcs.clone() {
                if w[a as usize / 64] >> (a % 64) & 1 == 1 {
                    best = Some((len, s, a));
                    break;
                }
            }
        }
        best
    }

    /// For every arc, the smallest |S| - 1 with D[S, arc] true.
    pub fn min_len_per_arc(&self, num_arcs: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; num_arcs];
        for (s, w) in self.entries() {
            let len = s.count_ones() as usize - 1;
            for (wi, &word) in w.iter().enumerate() {
                let mut x = word;
                while x != 0 {
                    let b = x.trailing_zeros() as usize;
                    x &= x - 1;
                    let a = wi * 64 + b;
                    if out[a].map_or(true, |l| len < l) {
                        out[a] = Some(len);
                    }
                }
            }
        }
        out
    }

    /// Arc sequence of a colourful path realising D[s, a].
    pub fn witness(&self, ag: &ArcGraph<'_>, col: &[u8], mut s: u32, mut a: ArcId) -> Vec<ArcId> {
        let mut rev = vec![a];
        loop {
            if self.base.contains(&(s, a)) {
                break;
            }
            let prev_s = s & !(1u32 << col[ag.head(a)]);
            let p = ag.pred[a as usize]
                .iter()
                .copied()
                .find(|&p| self.get(prev_s, p))
                .expect("table entry has a predecessor");
            rev.push(p);
            s = prev_s;
            a = p;
        }
        rev.reverse();
        rev
    }
}

/// Fills D for the colouring `col` (start vertex coloured 0, excluded
/// vertices [`NO_COLOR`]).
pub fn colorful_dp(ag: &ArcGraph<'_>, col: &[u8], num_colors: usize, start: Start) -> ColorfulTable {
    assert!(num_colors <= MAX_COLORS, "palette too large for the dense table");
    let first = match start {
        Start::Vertex(x) => x,
        Start::Arc(a) => ag.tail(a),
    };
    assert_eq!(col[first], 0, "the first vertex must carry colour 0");
    let words = ag.num_arcs().div_ceil(64).max(1);
    let mut sets: Vec<Option<Vec<u64>>> = vec![None; 1usize << (num_colors.max(1) - 1)];
    let mut base = Vec::new();
    let mut seed = |sets: &mut Vec<Option<Vec<u64>>>, a: ArcId| {
        let (u, v, _) = ag.arc(a);
        let cv = col[v];
        if cv == NO_COLOR || cv == col[u] || col[u] == NO_COLOR {
            return;
        }
        let s = (1u32 << col[u]) | (1u32 << cv);
        let w = sets[idx(s)].get_or_insert_with(|| vec![0; words]);
        w[a as usize / 64] |= 1 << (a % 64);
        base.push((s, a));
    };
    match start {
        Start::Vertex(x) => {
            for &a in ag.out_arcs(x) {
                seed(&mut sets, a);
            }
        }
        Start::Arc(a) => seed(&mut sets, a),
    }
    for i in 0..sets.len() {
        let Some(w) = sets[i].take() else { continue };
        let s = ((i as u32) << 1) | 1;
        for (wi, &word) in w.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let bit = x.trailing_zeros() as usize;
                x &= x - 1;
                let a = (wi * 64 + bit) as ArcId;
                for &b in ag.successors(a) {
                    let cz = col[ag.head(b)];
                    if cz == NO_COLOR || s >> cz & 1 == 1 {
                        continue;
                    }
                    let ns = s | (1u32 << cz);
                    let nw = sets[idx(ns)].get_or_insert_with(|| vec![0; words]);
                    nw[b as usize / 64] |= 1 << (b % 64);
                }
            }
        }
        sets[i] = Some(w);
    }
    ColorfulTable { sets, base }
}
