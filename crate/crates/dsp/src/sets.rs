use ftg_core::{co_reachable, dijkstra, topological_order, EdgeId, Error, Graph, Result, VertexId, Weight};

/// Arcs lying on some shortest `s`-`t` path, ignoring transitions.
#[derive(Clone, Debug)]
pub struct ShortestEdges {
    pub dist: Vec<Option<Weight>>,
    /// ℰ: arcs `uv` with `d(v) - d(u) = w(uv)`.
    pub tight: Vec<bool>,
    /// E: arcs of ℰ from whose head `t` is reachable inside ℰ.
    pub edges: Vec<bool>,
    pub warnings: Vec<String>,
}

impl ShortestEdges {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges[e]
    }

    pub fn ids(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e]).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.edges.iter().any(|&x| x)
    }
}

/// E₁ and E₂ for both terminal pairs, with the derived E₀, E₁*, E₂*.
#[derive(Clone, Debug)]
pub struct ShortestEdgeSets {
    pub first: ShortestEdges,
    pub second: ShortestEdges,
}

impl ShortestEdgeSets {
    pub fn new(g: &Graph, w: &[Weight], pairs: [(VertexId, VertexId); 2]) -> Result<Self> {
        Ok(ShortestEdgeSets {
            first: shortest_edge_sets(g, w, pairs[0].0, pairs[0].1)?,
            second: shortest_edge_sets(g, w, pairs[1].0, pairs[1].1)?,
        })
    }

    pub fn e0(&self) -> Vec<EdgeId> {
        self.filter(|a, b| a && b)
    }

    pub fn e1_star(&self) -> Vec<EdgeId> {
        self.filter(|a, b| a && !b)
    }

    pub fn e2_star(&self) -> Vec<EdgeId> {
        self.filter(|a, b| !a && b)
    }

    fn filter(&self, keep: impl Fn(bool, bool) -> bool) -> Vec<EdgeId> {
        (0..self.first.edges.len()).filter(|&e| keep(self.first.edges[e], self.second.edges[e])).collect()
    }
}

/// Checks the input conditions shared by the shortest-path solvers: a
/// digraph, one non-negative weight per arc, and no dicycle of length zero.
pub fn check_weights(g: &Graph, w: &[Weight]) -> Result<()> {
    if !g.is_directed() {
        return Err(Error::invalid("expected a directed graph"));
    }
    if w.len() != g.m() {
        return Err(Error::invalid(format!("{} weights for {} arcs", w.len(), g.m())));
    }
    if let Some(e) = (0..g.m()).find(|&e| w[e] < Weight::from_integer(0)) {
        return Err(Error::precondition(format!("arc {e} has negative length")));
    }
    let zero = Weight::from_integer(0);
    if topological_order(g, |e| w[e] == zero).is_none() {
        return Err(Error::precondition("a dicycle of length zero exists"));
    }
    Ok(())
}

pub fn shortest_edge_sets(g: &Graph, w: &[Weight], s: VertexId, t: VertexId) -> Result<ShortestEdges> {
    check_weights(g, w)?;
    if s >= g.n() || t >= g.n() {
        return Err(Error::invalid("terminal out of range"));
    }
    let dist = dijkstra(g, w, s);
    let tight: Vec<bool> = (0..g.m())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            matches!((dist[u], dist[v]), (Some(du), Some(dv)) if dv - du == w[e])
        })
        .collect();
    let mut warnings = Vec::new();
    let edges = if dist[t].is_none() {
        warnings.push(format!("vertex {t} is unreachable from {s}"));
        vec![false; g.m()]
    } else {
        let back = co_reachable(g, t, |e| tight[e]);
        (0..g.m()).map(|e| tight[e] && back[g.head(e)]).collect()
    };
    Ok(ShortestEdges { dist, tight, edges, warnings })
}
