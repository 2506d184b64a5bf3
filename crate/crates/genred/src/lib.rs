//! Seeded random instances and the reductions from partitioned subgraph
//! isomorphism to compatible paths, cycles and Hamiltonian cycles.

pub mod psi;
pub mod random;

pub use psi::{hamiltonian_reduction, is_linear_forest, psi_reduction, psi_reduction_cycle, CycleOutput, HamiltonianOutput, PsiInstance, ReductionOutput};
pub use random::{gen_random_digraph, gen_random_edge_colored, gen_random_ftg};
