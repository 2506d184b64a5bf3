use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected simple graph or directed multigraph with dense edge ids.
///
/// For an undirected edge `(u, v)` the stored order is only a label; for an
/// arc it is `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds an undirected simple graph. Loops and parallel edges are rejected.
    pub fn undirected(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Self::build(n, false, edges)
    }

    /// Builds a directed graph. Parallel arcs are allowed, loops are not.
    pub fn directed(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Self::build(n, true, arcs)
    }

    pub fn new(n: usize, directed: bool, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Self::build(n, directed, edges)
    }

    fn build(n: usize, directed: bool, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edges[{id}]: endpoint out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("edges[{id}]: loop at vertex {u}")));
            }
            if !directed && !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("edges[{id}]: parallel edge {u}-{v}")));
            }
            out[u].push(id);
            inc[u].push(id);
            inc[v].push(id);
            if !directed {
                out[v].push(id);
            }
        }
        Ok(Graph { n, directed, edges, out, inc })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.edges[e].0
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.edges[e].1
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn has_endpoint(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// Edges that can be used to leave `v`: all incident edges when
    /// undirected, out-arcs when directed.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    /// All edges incident with `v` regardless of direction.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v]
    }

    pub fn in_edges(&self, v: VertexId) -> Vec<EdgeId> {
        if self.directed {
            self.inc[v].iter().copied().filter(|&e| self.edges[e].1 == v).collect()
        } else {
            self.inc[v].clone()
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    /// Id of an edge joining `u` and `v` (an arc `u -> v` when directed).
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.out[u].iter().copied().find(|&e| self.other(e, u) == v && (!self.directed || self.edges[e].1 == v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v].iter().map(move |&e| self.other(e, v))
    }

    /// The vertices shared by two edges.
    pub fn common_vertices(&self, e: EdgeId, f: EdgeId) -> Vec<VertexId> {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        let mut r = Vec::new();
        for x in [a, b] {
            if (x == c || x == d) && !r.contains(&x) {
                r.push(x);
            }
        }
        r
    }

    /// Induced subgraph on the vertices flagged in `keep`. Returns the graph
    /// together with the old-to-new vertex map and the new-to-old edge map.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Option<VertexId>>, Vec<EdgeId>) {
        let mut map = vec![None; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(k);
                k += 1;
            }
        }
        let mut edges = Vec::new();
        let mut back = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                edges.push((a, b));
                back.push(id);
            }
        }
        let g = Graph::build(k, self.directed, edges).expect("subgraph of a valid graph");
        (g, map, back)
    }
}
