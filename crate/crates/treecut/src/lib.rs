//! Compatible vertex-disjoint paths over treecut decompositions.

pub mod dp;
pub mod instance;
pub mod record;
pub mod structure;

pub use dp::{comvdp, reduce_thin_child, solve_internal, solve_leaf, valid_records, ComvdpReport, Context, RecordSet};
pub use instance::{Key, VdpInstance};
pub use record::{corresponding_instance, enumerate_records, simplify, unmatched, Label, Record};
pub use structure::{
    center_size, evaluate_width, exhaustive_treecut_decomposition, is_nice, make_nice, node_info, NodeInfo, WidthReport,
};

use ftg_core::{Graph, Result, Transitions, VertexId};

/// SComVDP on a plain graph: `a` is the set A, all other vertices must have
/// degree at most two.
pub fn scomvdp(g: &Graph, t: &Transitions, pairs: &[(VertexId, VertexId)], a: &[VertexId]) -> Result<bool> {
    let inst = VdpInstance::new(g, t, pairs)?;
    let mut mask = vec![false; g.n()];
    for &v in a {
        if v >= g.n() {
            return Err(ftg_core::Error::invalid(format!("vertex {v} out of range")));
        }
        mask[v] = true;
    }
    inst.solve_scomvdp(&mask)
}

/// ComPath as the one-pair case of ComVDP.
pub fn compath_treecut(g: &Graph, t: &Transitions, s: VertexId, tgt: VertexId, dec: &ftg_core::Decomposition) -> Result<bool> {
    if s == tgt {
        return Ok(s < g.n());
    }
    Ok(comvdp(g, t, &[(s, tgt)], dec)?.yes)
}
