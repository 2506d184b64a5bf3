//! Two disjoint shortest compatible paths in digraphs whose dicycles all
//! have positive length, by a product construction over shortest-path arcs.

pub mod dag;
pub mod product;
pub mod sets;
pub mod solve;

pub use dag::{dag_compatible_path, dag_two_edge_disjoint, dag_two_vertex_disjoint, PathPair};
pub use product::{solve_base, Base, ContractedStar, Kind, Mode, ProductArc, ProductGraph};
pub use sets::{check_weights, shortest_edge_sets, ShortestEdgeSets, ShortestEdges};
pub use solve::{
    check_witness, edge_disjoint_2dspp, prepare, solve_2dspp, solve_with_product, vertex_disjoint_2dspp, DsppReport,
    DsppStats, Prepared,
};
