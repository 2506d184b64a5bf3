use serde::Serialize;

use ftg_core::{is_compatible_walk, validate_transition_system, EdgeId, Error, Graph, Result, Transitions, VertexId, Walk, Weight};

use crate::product::{solve_base, Base, ContractedStar, Mode, ProductGraph};
use crate::sets::{check_weights, shortest_edge_sets, ShortestEdgeSets};

#[derive(Clone, Debug, Default, Serialize)]
pub struct DsppStats {
    pub star_vertices: usize,
    pub star_arcs: usize,
    pub contracted: usize,
    pub product_states: usize,
    pub product_arcs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DsppReport {
    pub yes: bool,
    pub paths: Option<[Walk; 2]>,
    pub stats: DsppStats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Everything built before the product search.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub sets: ShortestEdgeSets,
    pub base: Base,
    pub star: ContractedStar,
    /// Input arc behind each base arc, if any.
    pub orig: Vec<Option<EdgeId>>,
}

/// The input with terminal arcs `s₁'s₁` (id m), `t₁t₁'`, `s₂'s₂`, `t₂t₂'`
/// (ids m+1..m+4), keeping only arcs accepted by `keep`.
struct Augmented {
    g: Graph,
    t: Transitions,
    start: [EdgeId; 2],
    end: [EdgeId; 2],
    n: usize,
}

fn augment(g: &Graph, t: &Transitions, pairs: [(VertexId, VertexId); 2]) -> Result<Augmented> {
    let (n, m) = (g.n(), g.m());
    let mut arcs = g.edges().to_vec();
    arcs.extend([(n, pairs[0].0), (pairs[0].1, n + 1), (n + 2, pairs[1].0), (pairs[1].1, n + 3)]);
    let ag = Graph::directed(n + 4, arcs)?;
    let (start, end) = ([m, m + 2], [m + 1, m + 3]);
    let mut at = t.clone();
    for i in 0..2 {
        for &f in ag.out_edges(pairs[i].0) {
            at.insert(start[i], f);
        }
        for e in ag.in_edges(pairs[i].1) {
            at.insert(e, end[i]);
        }
    }
    Ok(Augmented { g: ag, t: at, start, end, n })
}

fn check_input(g: &Graph, t: &Transitions, w: &[Weight], pairs: [(VertexId, VertexId); 2]) -> Result<()> {
    check_weights(g, w)?;
    if pairs.iter().any(|&(a, b)| a >= g.n() || b >= g.n()) {
        return Err(Error::invalid("terminal out of range"));
    }
    if let Some(v) = validate_transition_system(g, t).first() {
        return Err(Error::invalid(format!("invalid transition: {v:?}")));
    }
    Ok(())
}

fn edge_base(g: &Graph, t: &Transitions, sets: &ShortestEdgeSets, pairs: [(VertexId, VertexId); 2]) -> Result<(Base, Vec<Option<EdgeId>>)> {
    let a = augment(g, t, pairs)?;
    let mut class: Vec<u8> = (0..g.m()).map(|e| u8::from(sets.first.edges[e]) | u8::from(sets.second.edges[e]) << 1).collect();
    class.extend([1, 1, 2, 2]);
    let orig = (0..a.g.m()).map(|e| (e < g.m()).then_some(e)).collect();
    Ok((Base { g: a.g, t: a.t, class, start: a.start, end: a.end }, orig))
}

/// Splits every vertex `v` into `v⁻ → v⁺` with one parallel arc per arc
/// entering `v`, so that transitions at `v` become choices of parallel arc.
fn vertex_base(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    sets: &ShortestEdgeSets,
    pairs: [(VertexId, VertexId); 2],
) -> Result<(Base, Vec<Option<EdgeId>>)> {
    let a = augment(g, t, pairs)?;
    let m = g.m();
    let keep = |e: EdgeId| e >= m || sets.first.edges[e] || sets.second.edges[e];
    let zero = Weight::from_integer(0);
    let n = a.n;
    let id = |v: VertexId, plus: bool| if v >= n { 2 * n + (v - n) } else { 2 * v + usize::from(plus) };
    let mut arcs = Vec::new();
    let mut weight = Vec::new();
    let mut orig = Vec::new();
    let mut image = vec![usize::MAX; a.g.m()];
    for e in (0..a.g.m()).filter(|&e| keep(e)) {
        image[e] = arcs.len();
        arcs.push((id(a.g.tail(e), true), id(a.g.head(e), false)));
        weight.push(if e < m { w[e] } else { zero });
        orig.push((e < m).then_some(e));
    }
    let mut tt = Transitions::new();
    for v in 0..n {
        let ins: Vec<EdgeId> = a.g.in_edges(v).into_iter().filter(|&e| keep(e)).collect();
        for &e in &ins {
            let par = arcs.len();
            arcs.push((id(v, false), id(v, true)));
            weight.push(zero);
            orig.push(None);
            tt.insert(image[e], par);
            for &o in a.g.out_edges(v) {
                if keep(o) && a.t.permits_at(&a.g, v, e, o) {
                    tt.insert(par, image[o]);
                }
            }
        }
    }
    let gp = Graph::directed(2 * n + 4, arcs)?;
    let start = [image[a.start[0]], image[a.start[1]]];
    let end = [image[a.end[0]], image[a.end[1]]];
    let e1 = shortest_edge_sets(&gp, &weight, gp.tail(start[0]), gp.head(end[0]))?;
    let e2 = shortest_edge_sets(&gp, &weight, gp.tail(start[1]), gp.head(end[1]))?;
    let class = (0..gp.m()).map(|e| u8::from(e1.edges[e]) | u8::from(e2.edges[e]) << 1).collect();
    Ok((Base { g: gp, t: tt, class, start, end }, orig))
}

/// Builds the base graph and its contracted star, or `None` when some
/// terminal pair is not connected.
pub fn prepare(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    pairs: [(VertexId, VertexId); 2],
    mode: Mode,
) -> Result<Option<Prepared>> {
    check_input(g, t, w, pairs)?;
    let sets = ShortestEdgeSets::new(g, w, pairs)?;
    if sets.first.dist[pairs[0].1].is_none() || sets.second.dist[pairs[1].1].is_none() {
        return Ok(None);
    }
    let (base, orig) = match mode {
        Mode::Edge => edge_base(g, t, &sets, pairs)?,
        Mode::Vertex => vertex_base(g, t, w, &sets, pairs)?,
    };
    let star = ContractedStar::new(&base.g, &base.class)?;
    Ok(Some(Prepared { sets, base, star, orig }))
}

/// Solves and also returns the explored product digraph.
pub fn solve_with_product(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    pairs: [(VertexId, VertexId); 2],
    mode: Mode,
) -> Result<(DsppReport, Option<(Prepared, ProductGraph)>)> {
    let Some(prep) = prepare(g, t, w, pairs, mode)? else {
        let sets = ShortestEdgeSets::new(g, w, pairs)?;
        let warnings = [sets.first.warnings, sets.second.warnings].concat();
        return Ok((DsppReport { yes: false, paths: None, stats: DsppStats::default(), warnings }, None));
    };
    let mut stats = DsppStats {
        star_vertices: prep.star.graph.n(),
        star_arcs: prep.star.graph.m(),
        contracted: prep.star.contracted_count(),
        ..DsppStats::default()
    };
    if mode == Mode::Vertex && [pairs[0].0, pairs[0].1].iter().any(|&v| v == pairs[1].0 || v == pairs[1].1) {
        return Ok((DsppReport { yes: false, paths: None, stats, warnings: Vec::new() }, None));
    }
    let (pg, found) = solve_base(&prep.base, &prep.star, mode)?;
    stats.product_states = pg.states;
    stats.product_arcs = pg.arcs.len();
    let paths = match found {
        None => None,
        Some((p1, p2)) => {
            let map = |p: &[EdgeId]| -> Vec<EdgeId> { p.iter().filter_map(|&e| prep.orig[e]).collect() };
            let w1 = Walk::from_edges(g, pairs[0].0, &map(&p1))?;
            let w2 = Walk::from_edges(g, pairs[1].0, &map(&p2))?;
            check_witness(g, t, w, pairs, mode, &w1, &w2)?;
            Some([w1, w2])
        }
    };
    let report = DsppReport { yes: paths.is_some(), paths, stats, warnings: Vec::new() };
    Ok((report, Some((prep, pg))))
}

/// Disjoint compatible paths joining both pairs, each of shortest length
/// in the graph without transitions.
pub fn check_witness(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    pairs: [(VertexId, VertexId); 2],
    mode: Mode,
    w1: &Walk,
    w2: &Walk,
) -> Result<()> {
    for (i, walk) in [w1, w2].into_iter().enumerate() {
        let (s, e) = pairs[i];
        let d = ftg_core::dijkstra(g, w, s)[e];
        let len: Weight = walk.edges.iter().map(|&x| w[x]).sum();
        if walk.first() != s || walk.last() != e || !walk.is_path() || !is_compatible_walk(g, t, walk)? || Some(len) != d {
            return Err(Error::internal(format!("witness path {} fails validation", i + 1)));
        }
    }
    let disjoint = match mode {
        Mode::Edge => w1.edges.iter().all(|e| !w2.edges.contains(e)),
        Mode::Vertex => w1.vertices.iter().all(|v| !w2.vertices.contains(v)),
    };
    if !disjoint {
        return Err(Error::internal("witness paths are not disjoint"));
    }
    Ok(())
}

pub fn solve_2dspp(g: &Graph, t: &Transitions, w: &[Weight], pairs: [(VertexId, VertexId); 2], mode: Mode) -> Result<DsppReport> {
    Ok(solve_with_product(g, t, w, pairs, mode)?.0)
}

pub fn edge_disjoint_2dspp(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    s1: VertexId,
    t1: VertexId,
    s2: VertexId,
    t2: VertexId,
) -> Result<DsppReport> {
    solve_2dspp(g, t, w, [(s1, t1), (s2, t2)], Mode::Edge)
}

pub fn vertex_disjoint_2dspp(
    g: &Graph,
    t: &Transitions,
    w: &[Weight],
    s1: VertexId,
    t1: VertexId,
    s2: VertexId,
    t2: VertexId,
) -> Result<DsppReport> {
    solve_2dspp(g, t, w, [(s1, t1), (s2, t2)], Mode::Vertex)
}
