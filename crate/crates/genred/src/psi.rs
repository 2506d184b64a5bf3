use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ftg_core::{all_pairs_at, Decomposition, EdgeId, Error, Graph, Instance, Result, Transitions, VertexId};

/// Partitioned subgraph isomorphism: does G contain a copy of H with each
/// H-vertex `i` mapped into the colour class `col⁻¹(i)`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiInstance {
    pub g: Graph,
    pub h: Graph,
    pub col: Vec<VertexId>,
}

impl PsiInstance {
    pub fn new(g: Graph, h: Graph, col: Vec<VertexId>) -> Result<Self> {
        if g.is_directed() || h.is_directed() {
            return Err(Error::invalid("both graphs must be undirected"));
        }
        if col.len() != g.n() {
            return Err(Error::invalid(format!("colouring has {} entries for {} vertices", col.len(), g.n())));
        }
        if let Some(v) = (0..g.n()).find(|&v| col[v] >= h.n()) {
            return Err(Error::invalid(format!("vertex {v} has colour {} outside V(H)", col[v])));
        }
        if let Some(i) = (0..h.n()).find(|&i| h.degree(i) == 0) {
            return Err(Error::invalid(format!("vertex {i} of H has no edge")));
        }
        if let Some((u, v)) = g.edges().iter().copied().find(|&(u, v)| col[u] == col[v]) {
            return Err(Error::invalid(format!("edge ({u},{v}) joins two vertices of colour {}", col[u])));
        }
        Ok(PsiInstance { g, h, col })
    }

    /// A seeded instance: H has `m_h` edges covering `n_h` vertices, G has
    /// `n_g` uniformly coloured vertices and each bichromatic pair is an edge
    /// with probability `p`.
    pub fn random(n_g: usize, n_h: usize, m_h: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("edge probability must lie in [0, 1], got {p}")));
        }
        if n_h < 2 || m_h * 2 < n_h || m_h > n_h * (n_h - 1) / 2 {
            return Err(Error::invalid(format!("no simple graph with {m_h} edges covers {n_h} vertices")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<(usize, usize)> = (0..n_h).flat_map(|i| (i + 1..n_h).map(move |j| (i, j))).collect();
        let h = loop {
            let picked = rand::seq::index::sample(&mut rng, all.len(), m_h);
            let mut edges: Vec<(usize, usize)> = picked.iter().map(|k| all[k]).collect();
            edges.sort_unstable();
            let mut covered = vec![false; n_h];
            for &(i, j) in &edges {
                covered[i] = true;
                covered[j] = true;
            }
            if covered.iter().all(|&c| c) {
                break Graph::undirected(n_h, edges)?;
            }
        };
        let col: Vec<usize> = (0..n_g).map(|_| rng.gen_range(0..n_h)).collect();
        let mut edges = Vec::new();
        for u in 0..n_g {
            for v in u + 1..n_g {
                if col[u] != col[v] && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        PsiInstance::new(Graph::undirected(n_g, edges)?, h, col)
    }

    pub fn m_h(&self) -> usize {
        self.h.m()
    }
}

/// Reduced instance with the gadget vertices named. Vertices whose flag in
/// `explicit` is false permit every transition; the others permit exactly
/// the pairs in `specified` that meet them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub s: VertexId,
    pub t: VertexId,
    pub t1: VertexId,
    /// P from s to t₁.
    pub path: Vec<VertexId>,
    /// P¹ … P^{n_H}, consecutive pieces of `path`.
    pub segments: Vec<Vec<VertexId>>,
    /// `order[i][a]` is the G-edge that `x[i][a]` corresponds to.
    pub order: Vec<Vec<EdgeId>>,
    pub x: Vec<Vec<VertexId>>,
    /// Indexed by G-vertex; `None` for vertices without edges.
    pub pre: Vec<Option<VertexId>>,
    pub post: Vec<Option<VertexId>>,
    pub y: Vec<VertexId>,
    /// `z[p]` for the p-th H-edge in id order.
    pub z: Vec<[VertexId; 3]>,
    pub explicit: Vec<bool>,
    pub specified: Vec<(EdgeId, EdgeId)>,
}

struct Builder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
    explicit: Vec<bool>,
    specified: Vec<(EdgeId, EdgeId)>,
}

impl Builder {
    fn from_graph(g: &Graph, explicit: Vec<bool>, specified: Vec<(EdgeId, EdgeId)>) -> Self {
        let edges = g.edges().to_vec();
        let index = edges.iter().enumerate().map(|(i, &(u, v))| ((u.min(v), u.max(v)), i)).collect();
        Builder { n: g.n(), edges, index, explicit, specified }
    }

    fn vertex(&mut self) -> VertexId {
        self.n += 1;
        self.explicit.push(false);
        self.n - 1
    }

    fn edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let key = (u.min(v), u.max(v));
        if let Some(&e) = self.index.get(&key) {
            return e;
        }
        self.edges.push(key);
        self.index.insert(key, self.edges.len() - 1);
        self.edges.len() - 1
    }

    /// Permits passing `a - v - b` and marks `T(v)` as specified.
    fn allow(&mut self, a: VertexId, v: VertexId, b: VertexId) {
        let e = self.edge(a, v);
        let f = self.edge(v, b);
        self.explicit[v] = true;
        self.specified.push((e, f));
    }

    fn graph(&self) -> Result<Graph> {
        Graph::undirected(self.n, self.edges.clone())
    }
}

impl ReductionOutput {
    pub fn is_explicit(&self, v: VertexId) -> bool {
        self.explicit[v]
    }

    /// Expands the default transitions of unspecified vertices.
    pub fn transitions(&self) -> Transitions {
        let mut t = Transitions::from_pairs(self.specified.iter().copied());
        for v in (0..self.graph.n()).filter(|&v| !self.explicit[v]) {
            for (e, f) in all_pairs_at(&self.graph, v) {
                t.insert(e, f);
            }
        }
        t
    }

    pub fn instance(&self) -> Instance {
        let mut inst = Instance::new(self.graph.clone(), self.transitions());
        inst.terminals = Some(vec![(self.s, self.t)]);
        inst
    }

    /// Y ∪ Z.
    pub fn modulator(&self) -> Vec<VertexId> {
        let mut m = self.y.clone();
        m.extend(self.z.iter().flatten());
        m
    }

    /// Removing Y ∪ Z leaves a linear forest and |Y ∪ Z| ≤ 5·m_H.
    pub fn check_structure(&self) -> Result<()> {
        let m = self.modulator();
        if m.len() > 5 * self.z.len() {
            return Err(Error::internal(format!("modulator has {} vertices for {} H-edges", m.len(), self.z.len())));
        }
        let mut removed = vec![false; self.graph.n()];
        for &v in &m {
            removed[v] = true;
        }
        if !is_linear_forest(&self.graph, &removed) {
            return Err(Error::internal("removing Y and Z does not leave a linear forest"));
        }
        Ok(())
    }
}

/// True if `g` minus the flagged vertices is a disjoint union of paths.
pub fn is_linear_forest(g: &Graph, removed: &[bool]) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut deg = vec![0usize; n];
    for &(u, v) in g.edges() {
        if removed[u] || removed[v] {
            continue;
        }
        deg[u] += 1;
        deg[v] += 1;
        if deg[u] > 2 || deg[v] > 2 {
            return false;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Compatible s-t paths in the output correspond to solutions of `psi`.
pub fn psi_reduction(psi: &PsiInstance) -> Result<ReductionOutput> {
    let PsiInstance { g, h, col } = psi;
    PsiInstance::new(g.clone(), h.clone(), col.clone())?;
    let n_h = h.n();

    let mut order = vec![Vec::new(); n_h];
    for v in 0..g.n() {
        let mut ev = g.incident(v).to_vec();
        ev.sort_unstable();
        order[col[v]].extend(ev);
    }

    let mut b = Builder { n: 0, edges: Vec::new(), index: HashMap::new(), explicit: Vec::new(), specified: Vec::new() };
    let mut segments = Vec::with_capacity(n_h);
    for o in &order {
        segments.push((0..o.len() + 4).map(|_| b.vertex()).collect::<Vec<_>>());
    }
    let path: Vec<VertexId> = segments.concat();
    for w in path.windows(2) {
        b.edge(w[0], w[1]);
    }
    for w in path.windows(3) {
        b.allow(w[0], w[1], w[2]);
    }
    let x: Vec<Vec<VertexId>> = segments.iter().map(|p| p[2..p.len() - 2].to_vec()).collect();

    let mut pre = vec![None; g.n()];
    let mut post = vec![None; g.n()];
    let mut y = Vec::with_capacity(n_h);
    for i in 0..n_h {
        let yi = b.vertex();
        y.push(yi);
        let p = &segments[i];
        for v in (0..g.n()).filter(|&v| col[v] == i && g.degree(v) > 0) {
            let first = order[i].iter().position(|&e| g.has_endpoint(e, v)).unwrap();
            let last = first + g.degree(v) - 1;
            let (a, c) = (p[first + 1], p[last + 3]);
            pre[v] = Some(a);
            post[v] = Some(c);
            b.allow(a, yi, c);
            b.allow(p[first], a, yi);
            b.allow(yi, c, p[last + 4]);
        }
    }

    let t1 = *path.last().unwrap();
    let mut z = Vec::with_capacity(h.m());
    for &(hi, hj) in h.edges() {
        let (i, j) = (hi.max(hj), hi.min(hj));
        let zp = [b.vertex(), b.vertex(), b.vertex()];
        for (a, &e) in order[i].iter().enumerate() {
            let Some(bi) = order[j].iter().position(|&f| f == e) else { continue };
            let (xi, xj) = (x[i][a], x[j][bi]);
            b.allow(zp[0], xi, zp[1]);
            b.allow(zp[1], xj, zp[2]);
            b.allow(xi, zp[1], xj);
        }
        z.push(zp);
    }
    let t = b.vertex();
    b.edge(t1, z[0][0]);
    for p in 1..z.len() {
        b.edge(z[p - 1][2], z[p][0]);
    }
    b.edge(z[z.len() - 1][2], t);

    Ok(ReductionOutput {
        graph: b.graph()?,
        s: path[0],
        t,
        t1,
        path,
        segments,
        order,
        x,
        pre,
        post,
        y,
        z,
        explicit: b.explicit,
        specified: b.specified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleOutput {
    pub reduction: ReductionOutput,
    pub st_edge: EdgeId,
}

/// The path reduction plus the edge {s, t}; s and t stay unrestricted.
pub fn psi_reduction_cycle(psi: &PsiInstance) -> Result<CycleOutput> {
    let mut r = psi_reduction(psi)?;
    let mut b = Builder::from_graph(&r.graph, r.explicit, r.specified);
    let st_edge = b.edge(r.s, r.t);
    r.graph = b.graph()?;
    r.explicit = b.explicit;
    r.specified = b.specified;
    Ok(CycleOutput { reduction: r, st_edge })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianOutput {
    pub reduction: ReductionOutput,
    /// u₁ = t, u₂, …, u_{n+1} = s.
    pub q: Vec<VertexId>,
    /// Width-two path decomposition of the graph minus Y, Z, s and t, in
    /// original vertex ids.
    pub bags: Vec<Vec<VertexId>>,
}

impl HamiltonianOutput {
    /// `(G̃, decomposition)` with the bags relabelled into G̃.
    pub fn reduced_decomposition(&self) -> Result<(Graph, Decomposition)> {
        let r = &self.reduction;
        let mut keep = vec![true; r.graph.n()];
        for v in r.modulator().into_iter().chain([r.s, r.t]) {
            keep[v] = false;
        }
        let (sub, map, _) = r.graph.induced(&keep);
        let bags: Vec<Vec<VertexId>> = self
            .bags
            .iter()
            .map(|b| b.iter().map(|&v| map[v].ok_or_else(|| Error::internal(format!("bag holds removed vertex {v}")))).collect())
            .collect::<Result<_>>()?;
        let parents = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
        Ok((sub, Decomposition::from_parents(parents, bags)?))
    }

    /// The bag list is a width-two path decomposition of G̃ and |Y ∪ Z| ≤ 5·m_H.
    pub fn check_structure(&self) -> Result<()> {
        let r = &self.reduction;
        if r.modulator().len() > 5 * r.z.len() {
            return Err(Error::internal("modulator exceeds five vertices per H-edge"));
        }
        let (sub, dec) = self.reduced_decomposition()?;
        dec.check_tree_decomposition(&sub)?;
        if dec.treewidth() > 2 {
            return Err(Error::internal(format!("bag list has width {}", dec.treewidth())));
        }
        Ok(())
    }
}

/// Adds the ladder Q from t back to s so that compatible Hamiltonian cycles
/// correspond to compatible s-t paths of the path reduction.
pub fn hamiltonian_reduction(psi: &PsiInstance) -> Result<HamiltonianOutput> {
    let mut r = psi_reduction(psi)?;
    let n = r.path.len() - 2;
    let v = r.path[1..=n].to_vec();
    let mut b = Builder::from_graph(&r.graph, r.explicit, r.specified);
    let mut q = vec![r.t];
    q.extend((1..n).map(|_| b.vertex()));
    q.push(r.s);
    for w in q.windows(2) {
        b.edge(w[0], w[1]);
    }
    for i in 0..n {
        b.allow(q[i], v[i], q[i + 1]);
    }
    r.graph = b.graph()?;
    r.explicit = b.explicit;
    r.specified = b.specified;

    let mut bags = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut a = vec![q[i], q[i + 1], v[i]];
        a.retain(|&x| x != r.t && x != r.s);
        bags.push(a);
        if i + 1 < n {
            bags.push(vec![q[i + 1], v[i], v[i + 1]]);
        }
    }
    bags.push(vec![v[n - 1], r.t1]);
    Ok(HamiltonianOutput { reduction: r, q, bags })
}
