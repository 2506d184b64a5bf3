//! Bottom-up colored-trace dynamic programming over a tree decomposition.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use ftg_core::{Decomposition, EdgeColoring, EdgeId, Error, Graph, Result, VertexId};
use serde::Serialize;

use crate::gf::Gf;
use crate::trace::{reduce_representatives, row_width, Trace, NONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    Rank,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Abort with `BudgetExceeded` once this instant passes.
    pub deadline: Option<Instant>,
    /// Abort with `BudgetExceeded` once a family grows beyond this size.
    pub max_family: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PchcReport {
    pub yes: bool,
    pub max_family: usize,
    pub field_a: u32,
    pub steps: usize,
    /// Sum of family sizes over all steps, before pruning.
    pub total_states: usize,
}

/// A partial-solution summary; `closed` marks that the Hamiltonian cycle
/// has been completed, after which no further edge may be used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    t: Trace,
    closed: bool,
}

type Family = HashSet<State>;

/// The separation (G_t, Ḡ_t) of a node.
#[derive(Clone, Debug)]
pub struct Separation {
    pub node: usize,
    pub v_t: Vec<bool>,
    pub vbar_t: Vec<bool>,
    pub g_t: Vec<EdgeId>,
    pub gbar_t: Vec<EdgeId>,
}

impl Separation {
    pub fn new(g: &Graph, dec: &Decomposition, t: usize) -> Self {
        let mut v_t = vec![false; g.n()];
        for s in dec.subtree(t) {
            for &v in dec.bag(s) {
                v_t[v] = true;
            }
        }
        let in_bag: Vec<bool> = (0..g.n()).map(|v| dec.bag(t).contains(&v)).collect();
        let vbar_t: Vec<bool> = (0..g.n()).map(|v| !v_t[v] || in_bag[v]).collect();
        let (mut g_t, mut gbar_t) = (Vec::new(), Vec::new());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if v_t[u] && v_t[v] && !(in_bag[u] && in_bag[v]) {
                g_t.push(e);
            } else if vbar_t[u] && vbar_t[v] {
                gbar_t.push(e);
            }
        }
        Separation { node: t, v_t, vbar_t, g_t, gbar_t }
    }

    /// Every edge lies in exactly one side and each side's edges stay inside their vertex set.
    pub fn is_separation(&self, g: &Graph) -> bool {
        g.m() == self.g_t.len() + self.gbar_t.len()
            && self.g_t.iter().all(|&e| {
                let (u, v) = g.endpoints(e);
                self.v_t[u] && self.v_t[v]
            })
            && self.gbar_t.iter().all(|&e| {
                let (u, v) = g.endpoints(e);
                self.vbar_t[u] && self.vbar_t[v]
            })
    }
}

struct Dp<'a> {
    g: &'a Graph,
    colors: &'a EdgeColoring,
    gf: Option<Gf>,
    opts: &'a Options,
    report: PchcReport,
}

impl Dp<'_> {
    fn tick(&mut self, fam: &Family) -> Result<()> {
        self.report.steps += 1;
        self.report.total_states += fam.len();
        self.report.max_family = self.report.max_family.max(fam.len());
        if self.opts.max_family.is_some_and(|m| fam.len() > m) {
            return Err(Error::BudgetExceeded(format!("trace family reached {} states", fam.len())));
        }
        if self.opts.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExceeded("time budget exhausted".into()));
        }
        Ok(())
    }

    /// Keeps a representative subfamily per (f, closed) bucket.
    fn prune(&self, fam: Family) -> Result<Family> {
        let Some(gf) = &self.gf else { return Ok(fam) };
        let mut buckets: BTreeMap<(Vec<u8>, bool), Vec<Trace>> = BTreeMap::new();
        for s in fam {
            buckets.entry((s.t.f.clone(), s.closed)).or_default().push(s.t);
        }
        let mut out = Family::new();
        for ((f, closed), mut ts) in buckets {
            ts.sort();
            let kept = reduce_representatives(gf, &ts)?;
            let z = f.iter().filter(|&&x| x == 1).count();
            if kept.len() > row_width(z) {
                return Err(Error::internal(format!("{} representatives exceed the {} columns", kept.len(), row_width(z))));
            }
            out.extend(kept.into_iter().map(|t| State { t, closed }));
        }
        Ok(out)
    }

    fn introduce(&self, fam: Family, pos: usize) -> Family {
        fam.into_iter()
            .map(|mut s| {
                for m in s.t.mate.iter_mut() {
                    if *m != NONE && *m >= pos {
                        *m += 1;
                    }
                }
                s.t.f.insert(pos, 0);
                s.t.mate.insert(pos, NONE);
                s.t.zeta.insert(pos, 0);
                s
            })
            .collect()
    }

    fn forget(&self, fam: Family, pos: usize) -> Family {
        fam.into_iter()
            .filter(|s| s.t.f[pos] == 2)
            .map(|mut s| {
                s.t.f.remove(pos);
                s.t.mate.remove(pos);
                s.t.zeta.remove(pos);
                for m in s.t.mate.iter_mut() {
                    if *m != NONE && *m > pos {
                        *m -= 1;
                    }
                }
                s
            })
            .collect()
    }

    /// Optionally adds edge with colour `c` between boundary positions `u` and `v`.
    fn use_edge(&self, fam: Family, u: usize, v: usize, c: u32) -> Family {
        let mut out = Family::new();
        for s in fam {
            if let Some(n) = extend(&s, u, v, c) {
                out.insert(n);
            }
            out.insert(s);
        }
        out
    }

    fn join(&self, a: &Family, b: &Family) -> Family {
        let mut out = Family::new();
        for x in a {
            for y in b {
                if let Some(s) = combine(x, y) {
                    out.insert(s);
                }
            }
        }
        out
    }
}

fn extend(s: &State, u: usize, v: usize, c: u32) -> Option<State> {
    let t = &s.t;
    if s.closed || t.f[u] == 2 || t.f[v] == 2 {
        return None;
    }
    if (t.f[u] == 1 && t.zeta[u] == c) || (t.f[v] == 1 && t.zeta[v] == c) {
        return None;
    }
    let mut n = s.clone();
    match (t.f[u], t.f[v]) {
        (0, 0) => {
            n.t.mate[u] = v;
            n.t.mate[v] = u;
            n.t.zeta[u] = c;
            n.t.zeta[v] = c;
        }
        (1, 0) | (0, 1) => {
            let (old, new) = if t.f[u] == 1 { (u, v) } else { (v, u) };
            let x = t.mate[old];
            n.t.mate[old] = NONE;
            n.t.zeta[old] = 0;
            n.t.mate[x] = new;
            n.t.mate[new] = x;
            n.t.zeta[new] = c;
        }
        _ => {
            if t.mate[u] == v {
                if t.f.iter().filter(|&&x| x == 1).count() != 2 {
                    return None;
                }
                n.closed = true;
            } else {
                let (x, y) = (t.mate[u], t.mate[v]);
                n.t.mate[x] = y;
                n.t.mate[y] = x;
            }
            n.t.mate[u] = NONE;
            n.t.mate[v] = NONE;
            n.t.zeta[u] = 0;
            n.t.zeta[v] = 0;
        }
    }
    n.t.f[u] += 1;
    n.t.f[v] += 1;
    Some(n)
}

fn combine(a: &State, b: &State) -> Option<State> {
    let (p, q) = (&a.t, &b.t);
    let len = p.f.len();
    if a.closed && b.closed {
        return None;
    }
    if (a.closed && q.f.iter().any(|&x| x > 0)) || (b.closed && p.f.iter().any(|&x| x > 0)) {
        return None;
    }
    let mut f = vec![0u8; len];
    for i in 0..len {
        f[i] = p.f[i] + q.f[i];
        if f[i] > 2 || (p.f[i] == 1 && q.f[i] == 1 && p.zeta[i] == q.zeta[i]) {
            return None;
        }
    }
    let mut out = Trace::empty(len);
    out.f = f.clone();
    let mut visited = vec![false; len];
    // Walk each path of the union from one degree-one end to the other.
    for start in 0..len {
        if f[start] != 1 || visited[start] {
            continue;
        }
        let mut v = start;
        let mut from_p = p.f[start] == 1;
        visited[v] = true;
        loop {
            let w = if from_p { p.mate[v] } else { q.mate[v] };
            visited[w] = true;
            if f[w] == 1 {
                out.mate[start] = w;
                out.mate[w] = start;
                out.zeta[start] = if p.f[start] == 1 { p.zeta[start] } else { q.zeta[start] };
                out.zeta[w] = if p.f[w] == 1 { p.zeta[w] } else { q.zeta[w] };
                break;
            }
            v = w;
            from_p = !from_p;
        }
    }
    let cycle_vertices: Vec<usize> = (0..len).filter(|&i| p.f[i] == 1 && q.f[i] == 1 && !visited[i]).collect();
    let mut closed = a.closed || b.closed;
    if !cycle_vertices.is_empty() {
        if f.iter().any(|&x| x == 1) || closed {
            return None;
        }
        // All remaining vertices must lie on one cycle.
        let mut v = cycle_vertices[0];
        let mut count = 0;
        loop {
            v = p.mate[v];
            v = q.mate[v];
            count += 2;
            if v == cycle_vertices[0] {
                break;
            }
        }
        if count != cycle_vertices.len() {
            return None;
        }
        closed = true;
    }
    Some(State { t: out, closed })
}

/// Runs the DP with the chosen engine.
pub fn solve(g: &Graph, colors: &EdgeColoring, dec: &Decomposition, engine: Engine, opts: &Options) -> Result<PchcReport> {
    if g.is_directed() {
        return Err(Error::invalid("properly colored cycles need an undirected graph"));
    }
    if colors.colors.len() != g.m() {
        return Err(Error::invalid(format!("{} colours for {} edges", colors.colors.len(), g.m())));
    }
    if let Some(e) = colors.colors.iter().position(|&c| c == 0) {
        return Err(Error::invalid(format!("edge {e} has colour 0; colours start at 1")));
    }
    dec.check_tree_decomposition(g)?;
    let top = colors.colors.iter().copied().max().unwrap_or(0).max(colors.num_colors);
    let gf = Gf::for_colors(top)?;
    let mut dp = Dp {
        g,
        colors,
        gf: (engine == Engine::Rank).then(|| gf.clone()),
        opts,
        report: PchcReport { field_a: gf.degree(), ..PchcReport::default() },
    };
    if g.n() < 3 {
        return Ok(dp.report);
    }
    let mut done: HashMap<usize, (Vec<VertexId>, Family)> = HashMap::new();
    for t in dec.post_order() {
        let mut bag: Vec<VertexId> = dec.bag(t).to_vec();
        bag.sort_unstable();
        let mut acc: Option<Family> = None;
        let children = dec.children(t).to_vec();
        let parts = if children.is_empty() { vec![None] } else { children.into_iter().map(Some).collect() };
        for c in parts {
            let (mut cur, mut fam) = match c {
                Some(c) => done.remove(&c).unwrap(),
                None => (Vec::new(), [State { t: Trace::empty(0), closed: false }].into_iter().collect()),
            };
            let leaving: Vec<VertexId> = cur.iter().copied().filter(|v| !bag.contains(v)).collect();
            for v in leaving {
                fam = dp.forget_vertex(fam, &mut cur, v)?;
            }
            for &v in &bag {
                if let Err(pos) = cur.binary_search(&v) {
                    cur.insert(pos, v);
                    fam = dp.introduce(fam, pos);
                }
            }
            fam = match acc {
                None => fam,
                Some(prev) => {
                    let j = dp.join(&prev, &fam);
                    dp.tick(&j)?;
                    dp.prune(j)?
                }
            };
            acc = Some(fam);
        }
        done.insert(t, (bag, acc.unwrap()));
    }
    let (mut cur, mut fam) = done.remove(&dec.root()).unwrap();
    for v in cur.clone() {
        fam = dp.forget_vertex(fam, &mut cur, v)?;
    }
    dp.report.yes = fam.iter().any(|s| s.closed);
    Ok(dp.report)
}

impl Dp<'_> {
    /// Introduces every edge from `v` to the current bag, then forgets `v`.
    fn forget_vertex(&mut self, mut fam: Family, cur: &mut Vec<VertexId>, v: VertexId) -> Result<Family> {
        let pv = cur.binary_search(&v).unwrap();
        for &e in self.g.incident(v) {
            let w = self.g.other(e, v);
            if let Ok(pw) = cur.binary_search(&w) {
                fam = self.use_edge(fam, pv, pw, self.colors.color(e));
                self.tick(&fam)?;
                fam = self.prune(fam)?;
            }
        }
        fam = self.forget(fam, pv);
        cur.remove(pv);
        self.tick(&fam)?;
        Ok(self.prune(fam)?)
    }
}
