//! Forbidden-transition graphs: graphs, permitted transition sets, edge
//! colourings, walks, distances and the JSON file formats.

pub mod decomposition;
pub mod dist;
pub mod error;
pub mod graph;
pub mod io;
pub mod transitions;
pub mod walk;

pub use decomposition::Decomposition;
pub use dist::{bfs_dist, co_reachable, dijkstra, dijkstra_to, reachable, topological_order, Weight};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
pub use io::{
    describe_violations, digest_bytes, instance_digest, parse_decomposition, parse_instance, serialize_decomposition, serialize_instance,
    weights_or_unit, Instance,
};
pub use transitions::{all_pairs_at, proper_coloring_transitions, validate_transition_system, EdgeColoring, Transitions, Violation};
pub use walk::{is_compatible_closed_walk, is_compatible_walk, Walk};

/// Start or end of a generalised path: a vertex, or an edge that must be the
/// first (respectively last) edge of the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl Endpoint {
    pub fn check(&self, g: &Graph) -> Result<()> {
        match *self {
            Endpoint::Vertex(v) if v >= g.n() => Err(Error::invalid(format!("vertex {v} out of range"))),
            Endpoint::Edge(e) if e >= g.m() => Err(Error::invalid(format!("edge {e} out of range"))),
            _ => Ok(()),
        }
    }
}
