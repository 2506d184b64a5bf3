use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::transitions::Transitions;

/// Alternating vertex/edge sequence; `vertices.len() == edges.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Walk {
    pub fn single(v: VertexId) -> Self {
        Walk { vertices: vec![v], edges: Vec::new() }
    }

    /// Walk along a vertex sequence; fails if some consecutive pair is not joined.
    pub fn from_vertices(g: &Graph, vs: &[VertexId]) -> Result<Self> {
        let mut edges = Vec::with_capacity(vs.len().saturating_sub(1));
        for w in vs.windows(2) {
            let e = g
                .find_edge(w[0], w[1])
                .ok_or_else(|| Error::invalid(format!("no edge {} -> {}", w[0], w[1])))?;
            edges.push(e);
        }
        Ok(Walk { vertices: vs.to_vec(), edges })
    }

    /// Walk along an edge sequence starting at `start`.
    pub fn from_edges(g: &Graph, start: VertexId, es: &[EdgeId]) -> Result<Self> {
        let mut vertices = vec![start];
        let mut cur = start;
        for &e in es {
            if e >= g.m() || !g.has_endpoint(e, cur) || (g.is_directed() && g.tail(e) != cur) {
                return Err(Error::invalid(format!("edge {e} does not leave vertex {cur}")));
            }
            cur = g.other(e, cur);
            vertices.push(cur);
        }
        Ok(Walk { vertices, edges: es.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("walk has a vertex")
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(Error::invalid("walk: vertex count must be edge count + 1"));
        }
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(Error::invalid(format!("walk: vertex {v} out of range")));
            }
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if e >= g.m() {
                return Err(Error::invalid(format!("walk: edge {e} out of range")));
            }
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            let (t, h) = g.endpoints(e);
            let ok = if g.is_directed() { (t, h) == (a, b) } else { (t, h) == (a, b) || (t, h) == (b, a) };
            if !ok {
                return Err(Error::invalid(format!("walk: edge {e} does not join {a} and {b}")));
            }
        }
        Ok(())
    }

    pub fn is_path(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// A closed walk with at least one edge repeating only first = last.
    pub fn is_cycle(&self) -> bool {
        if self.edges.is_empty() || self.first() != self.last() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.vertices[..self.vertices.len() - 1].iter().all(|v| seen.insert(*v))
            && {
                let mut es = std::collections::HashSet::new();
                self.edges.iter().all(|e| es.insert(*e))
            }
    }
}

pub fn is_compatible_walk(g: &Graph, t: &Transitions, w: &Walk) -> Result<bool> {
    w.validate(g)?;
    Ok((1..w.edges.len()).all(|i| t.permits_at(g, w.vertices[i], w.edges[i - 1], w.edges[i])))
}

/// Compatibility of a closed walk including the transition at its base vertex.
pub fn is_compatible_closed_walk(g: &Graph, t: &Transitions, w: &Walk) -> Result<bool> {
    if !is_compatible_walk(g, t, w)? || w.first() != w.last() || w.edges.is_empty() {
        return Ok(false);
    }
    let k = w.edges.len();
    Ok(k >= 2 && t.permits_at(g, w.first(), w.edges[k - 1], w.edges[0]))
}
