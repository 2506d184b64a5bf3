//! Contraction of shared shortest-path arcs, the reversed star graph, and
//! the pruned product digraph over pairs of star arcs.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use ftg_core::{is_compatible_walk, reachable, topological_order, EdgeId, Error, Graph, Result, Transitions, VertexId, Walk};

use crate::dag::{dag_compatible_path, dag_two_edge_disjoint, dag_two_vertex_disjoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Edge,
    Vertex,
}

/// A digraph with transitions where every arc is marked as lying in E₁
/// (bit 1), E₂ (bit 2), both, or neither, plus the four terminal arcs
/// `s₁'s₁`, `t₁t₁'`, `s₂'s₂`, `t₂t₂'`.
#[derive(Clone, Debug)]
pub struct Base {
    pub g: Graph,
    pub t: Transitions,
    pub class: Vec<u8>,
    pub start: [EdgeId; 2],
    pub end: [EdgeId; 2],
}

/// G* = (V*, E₁* ∪ reversed E₂*) after contracting every E₀ arc.
#[derive(Clone, Debug)]
pub struct ContractedStar {
    /// Star vertex of each base vertex.
    pub comp: Vec<usize>,
    pub members: Vec<Vec<VertexId>>,
    /// E₀ arcs inside each star vertex; non-empty exactly for V₀.
    pub inner: Vec<Vec<EdgeId>>,
    pub graph: Graph,
    /// Base arc behind each star arc.
    pub f: Vec<EdgeId>,
    /// 1 for E₁* arcs, 2 for reversed E₂* arcs.
    pub side: Vec<u8>,
    /// Star arc of each base arc in E₁* ∪ E₂*.
    pub star_of: Vec<Option<EdgeId>>,
    /// Reflexive reachability in G*.
    pub reach: Vec<Vec<bool>>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let z = p[y];
        p[y] = r;
        y = z;
    }
    r
}

impl ContractedStar {
    pub fn new(g: &Graph, class: &[u8]) -> Result<Self> {
        let n = g.n();
        let mut p: Vec<usize> = (0..n).collect();
        for e in 0..g.m() {
            if class[e] == 3 {
                let (a, b) = (find(&mut p, g.tail(e)), find(&mut p, g.head(e)));
                p[a] = b;
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut comp = vec![0; n];
        let mut members: Vec<Vec<VertexId>> = Vec::new();
        for v in 0..n {
            let r = find(&mut p, v);
            if id[r] == usize::MAX {
                id[r] = members.len();
                members.push(Vec::new());
            }
            comp[v] = id[r];
            members[id[r]].push(v);
        }
        let mut inner = vec![Vec::new(); members.len()];
        let mut arcs = Vec::new();
        let mut f = Vec::new();
        let mut side = Vec::new();
        let mut star_of = vec![None; g.m()];
        for e in 0..g.m() {
            let (u, v) = (comp[g.tail(e)], comp[g.head(e)]);
            match class[e] {
                3 => inner[u].push(e),
                1 | 2 => {
                    if u == v {
                        return Err(Error::internal(format!("arc {e} became a loop after contraction")));
                    }
                    star_of[e] = Some(arcs.len());
                    arcs.push(if class[e] == 1 { (u, v) } else { (v, u) });
                    f.push(e);
                    side.push(class[e]);
                }
                _ => {}
            }
        }
        let graph = Graph::directed(members.len(), arcs)?;
        if topological_order(&graph, |_| true).is_none() {
            return Err(Error::internal("contracted star graph has a dicycle"));
        }
        let reach = (0..graph.n()).map(|x| reachable(&graph, x, |_| true)).collect();
        Ok(ContractedStar { comp, members, inner, graph, f, side, star_of, reach })
    }

    pub fn is_contracted(&self, v: usize) -> bool {
        !self.inner[v].is_empty()
    }

    pub fn contracted_count(&self) -> usize {
        (0..self.members.len()).filter(|&v| self.is_contracted(v)).count()
    }

    pub fn head(&self, a: EdgeId) -> usize {
        self.graph.head(a)
    }

    pub fn tail(&self, a: EdgeId) -> usize {
        self.graph.tail(a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// Type (i): the second path moves on.
    Second,
    /// Type (ii): the first path moves on.
    First,
    /// Type (iii): both move through a common vertex.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductArc {
    pub from: (EdgeId, EdgeId),
    pub to: (EdgeId, EdgeId),
    pub kind: Kind,
}

/// The part of the pruned product digraph reachable from the start pair.
#[derive(Clone, Debug, Default)]
pub struct ProductGraph {
    pub start: (EdgeId, EdgeId),
    pub goal: (EdgeId, EdgeId),
    pub arcs: Vec<ProductArc>,
    pub states: usize,
    /// Arc sequence to the goal, if reached.
    pub path: Option<Vec<ProductArc>>,
}

impl ProductGraph {
    /// Re-checks the structural side conditions of every arc.
    pub fn validate(&self, star: &ContractedStar) -> Result<()> {
        for a in &self.arcs {
            let ((e1, e2), (f1, f2)) = (a.from, a.to);
            if star.side[e1] != 1 || star.side[f1] != 1 || star.side[e2] != 2 || star.side[f2] != 2 {
                return Err(Error::internal(format!("{a:?}: state outside E₁* × E₂*")));
            }
            let (h1, h2) = (star.head(e1), star.head(e2));
            let ok = match a.kind {
                Kind::Second => e1 == f1 && star.tail(f2) == h2 && !star.reach[h1][h2],
                Kind::First => e2 == f2 && star.tail(f1) == h1 && !star.reach[h2][h1],
                Kind::Both => h1 == h2 && star.tail(f1) == h1 && star.tail(f2) == h2,
            };
            if !ok {
                return Err(Error::internal(format!("{a:?} violates its side conditions")));
            }
        }
        Ok(())
    }
}

/// Partial subgraph of the base used for a passage test inside one star
/// vertex; outer endpoints of the attached arcs get fresh vertices.
struct Local {
    g: Graph,
    t: Transitions,
    arcs: Vec<EdgeId>,
    /// Fresh outer endpoint of each attached arc, and its base vertex.
    outer: Vec<(VertexId, VertexId)>,
}

impl Local {
    fn new(base: &Base, star: &ContractedStar, v: usize, attached: &[EdgeId]) -> Result<Self> {
        let bg = &base.g;
        let mut index: HashMap<VertexId, VertexId> = HashMap::new();
        for (i, &x) in star.members[v].iter().enumerate() {
            index.insert(x, i);
        }
        let k = star.members[v].len();
        let mut arcs = star.inner[v].clone();
        let mut pairs: Vec<(VertexId, VertexId)> = arcs.iter().map(|&e| (index[&bg.tail(e)], index[&bg.head(e)])).collect();
        let mut outer = Vec::new();
        for (i, &e) in attached.iter().enumerate() {
            let fresh = k + i;
            if star.comp[bg.tail(e)] == v {
                pairs.push((index[&bg.tail(e)], fresh));
                outer.push((fresh, bg.head(e)));
            } else {
                pairs.push((fresh, index[&bg.head(e)]));
                outer.push((fresh, bg.tail(e)));
            }
            arcs.push(e);
        }
        let g = Graph::directed(k + attached.len(), pairs)?;
        let mut t = Transitions::new();
        for (x, &bx) in star.members[v].iter().enumerate() {
            let ins = g.in_edges(x);
            for &a in &ins {
                for &b in g.out_edges(x) {
                    if base.t.permits_at(bg, bx, arcs[a], arcs[b]) {
                        t.insert(a, b);
                    }
                }
            }
        }
        Ok(Local { g, t, arcs, outer })
    }

    fn lift(&self, es: &[EdgeId]) -> Vec<EdgeId> {
        es.iter().map(|&e| self.arcs[e]).collect()
    }
}

type Passage = Option<Vec<EdgeId>>;

struct Pruner<'a> {
    base: &'a Base,
    star: &'a ContractedStar,
    mode: Mode,
    single: HashMap<(EdgeId, EdgeId), Passage>,
    double: HashMap<[EdgeId; 4], Option<(Vec<EdgeId>, Vec<EdgeId>)>>,
}

impl Pruner<'_> {
    /// Base arcs of a compatible passage entering along `x` and leaving
    /// along `y` through star vertex `v`, starting with `x` and ending with `y`.
    fn passage(&mut self, v: usize, x: EdgeId, y: EdgeId) -> Result<Passage> {
        if let Some(r) = self.single.get(&(x, y)) {
            return Ok(r.clone());
        }
        let r = if self.star.is_contracted(v) {
            let local = Local::new(self.base, self.star, v, &[x, y])?;
            dag_compatible_path(&local.g, &local.t, local.outer[0].0, local.outer[1].0)?.map(|p| local.lift(&p))
        } else {
            let bv = self.star.members[v][0];
            self.base.t.permits_at(&self.base.g, bv, x, y).then(|| vec![x, y])
        };
        self.single.insert((x, y), r.clone());
        Ok(r)
    }

    fn both(&mut self, v: usize, x1: EdgeId, y1: EdgeId, x2: EdgeId, y2: EdgeId) -> Result<Option<(Vec<EdgeId>, Vec<EdgeId>)>> {
        let key = [x1, y1, x2, y2];
        if let Some(r) = self.double.get(&key) {
            return Ok(r.clone());
        }
        let r = if self.star.is_contracted(v) {
            let local = Local::new(self.base, self.star, v, &key)?;
            let o = &local.outer;
            let clash = self.mode == Mode::Vertex && [o[0].1, o[1].1].iter().any(|&a| a == o[2].1 || a == o[3].1);
            if clash {
                None
            } else {
                let pair = match self.mode {
                    Mode::Edge => dag_two_edge_disjoint(&local.g, &local.t, o[0].0, o[1].0, o[2].0, o[3].0)?,
                    Mode::Vertex => dag_two_vertex_disjoint(&local.g, &local.t, o[0].0, o[1].0, o[2].0, o[3].0)?,
                };
                pair.map(|(p, q)| (local.lift(&p), local.lift(&q)))
            }
        } else if self.mode == Mode::Vertex {
            return Err(Error::internal(format!("both paths meet at uncontracted star vertex {v}")));
        } else {
            match (self.passage(v, x1, y1)?, self.passage(v, x2, y2)?) {
                (Some(p), Some(q)) => Some((p, q)),
                _ => None,
            }
        };
        self.double.insert(key, r.clone());
        Ok(r)
    }
}

/// Searches the pruned product digraph and splices the passages along the
/// found path into two base paths `s₁'..t₁'` and `s₂'..t₂'`.
pub fn solve_base(base: &Base, star: &ContractedStar, mode: Mode) -> Result<(ProductGraph, Option<(Vec<EdgeId>, Vec<EdgeId>)>)> {
    let arc = |e: EdgeId| star.star_of[e].ok_or_else(|| Error::internal(format!("terminal arc {e} missing from the star graph")));
    let start = (arc(base.start[0])?, arc(base.end[1])?);
    let goal = (arc(base.end[0])?, arc(base.start[1])?);
    let mut pr = Pruner { base, star, mode, single: HashMap::new(), double: HashMap::new() };
    let sg = &star.graph;
    let mut pg = ProductGraph { start, goal, ..ProductGraph::default() };
    let mut parent: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut seen: std::collections::HashSet<(EdgeId, EdgeId)> = [start].into();
    let mut q = VecDeque::from([start]);
    let mut push = |pg: &mut ProductGraph, q: &mut VecDeque<_>, from, to, kind| {
        pg.arcs.push(ProductArc { from, to, kind });
        if seen.insert(to) {
            parent.insert(to, pg.arcs.len() - 1);
            q.push_back(to);
        }
    };
    while let Some((a, b)) = q.pop_front() {
        if (a, b) == goal {
            break;
        }
        let (va, vb) = (star.head(a), star.head(b));
        if !star.reach[va][vb] {
            for &b2 in sg.out_edges(vb) {
                if star.side[b2] == 2 && pr.passage(vb, star.f[b2], star.f[b])?.is_some() {
                    push(&mut pg, &mut q, (a, b), (a, b2), Kind::Second);
                }
            }
        }
        if !star.reach[vb][va] {
            for &a2 in sg.out_edges(va) {
                if star.side[a2] == 1 && pr.passage(va, star.f[a], star.f[a2])?.is_some() {
                    push(&mut pg, &mut q, (a, b), (a2, b), Kind::First);
                }
            }
        }
        if va == vb {
            if mode == Mode::Vertex && !star.is_contracted(va) {
                return Err(Error::internal(format!("both paths meet at uncontracted star vertex {va}")));
            }
            for &a2 in sg.out_edges(va) {
                if star.side[a2] != 1 {
                    continue;
                }
                for &b2 in sg.out_edges(va) {
                    if star.side[b2] == 2 && pr.both(va, star.f[a], star.f[a2], star.f[b2], star.f[b])?.is_some() {
                        push(&mut pg, &mut q, (a, b), (a2, b2), Kind::Both);
                    }
                }
            }
        }
    }
    pg.states = seen.len();
    if !seen.contains(&goal) {
        return Ok((pg, None));
    }
    let mut steps = Vec::new();
    let mut cur = goal;
    while cur != start {
        let s = pg.arcs[parent[&cur]];
        steps.push(s);
        cur = s.from;
    }
    steps.reverse();
    let mut p1 = vec![base.start[0]];
    let mut p2 = VecDeque::from([base.end[1]]);
    for s in &steps {
        let ((a, b), (a2, b2)) = (s.from, s.to);
        let (q1, q2) = match s.kind {
            Kind::First => (pr.passage(star.head(a), star.f[a], star.f[a2])?, None),
            Kind::Second => (None, pr.passage(star.head(b), star.f[b2], star.f[b])?),
            Kind::Both => {
                let (x, y) = pr.both(star.head(a), star.f[a], star.f[a2], star.f[b2], star.f[b])?.unwrap();
                (Some(x), Some(y))
            }
        };
        if let Some(q1) = q1 {
            p1.extend_from_slice(&q1[1..]);
        }
        if let Some(q2) = q2 {
            for &e in q2[..q2.len() - 1].iter().rev() {
                p2.push_front(e);
            }
        }
    }
    pg.path = Some(steps);
    let p2: Vec<EdgeId> = p2.into();
    check_base_paths(base, mode, &p1, &p2)?;
    Ok((pg, Some((p1, p2))))
}

fn check_base_paths(base: &Base, mode: Mode, p1: &[EdgeId], p2: &[EdgeId]) -> Result<()> {
    let g = &base.g;
    let walk = |p: &[EdgeId], i: usize| -> Result<Walk> {
        let w = Walk::from_edges(g, g.tail(base.start[i]), p)?;
        let ends = p.first() == Some(&base.start[i]) && p.last() == Some(&base.end[i]);
        let inside = p.iter().all(|&e| base.class[e] & (1 << i) != 0);
        if !ends || !inside || !w.is_path() || !is_compatible_walk(g, &base.t, &w)? {
            return Err(Error::internal(format!("spliced path {} is not a compatible shortest path", i + 1)));
        }
        Ok(w)
    };
    let (w1, w2) = (walk(p1, 0)?, walk(p2, 1)?);
    let disjoint = match mode {
        Mode::Edge => p1.iter().all(|e| !p2.contains(e)),
        Mode::Vertex => w1.vertices.iter().all(|v| !w2.vertices.contains(v)),
    };
    if !disjoint {
        return Err(Error::internal("spliced paths are not disjoint"));
    }
    Ok(())
}
