//! Properly colored Hamiltonian cycles on edge-colored graphs of bounded
//! treewidth, by a colored-trace DP with optional rank-based pruning.

pub mod dp;
pub mod gf;
pub mod trace;

use ftg_core::{Decomposition, EdgeColoring, Error, Graph, Result, VertexId};

pub use dp::{Engine, Options, PchcReport, Separation};
pub use gf::Gf;
pub use trace::{
    cut_row, dot, e_column, e_row, fit_colored, fit_traces, monomial_values, pi_row, reduce_representatives, row_width,
    single_cycle, Trace,
};

pub fn pchc(g: &Graph, colors: &EdgeColoring, dec: &Decomposition, engine: Engine, opts: &Options) -> Result<PchcReport> {
    dp::solve(g, colors, dec, engine, opts)
}

pub fn naive_pchc(g: &Graph, colors: &EdgeColoring, dec: &Decomposition) -> Result<bool> {
    Ok(pchc(g, colors, dec, Engine::Naive, &Options::default())?.yes)
}

pub fn rank_based_pchc(g: &Graph, colors: &EdgeColoring, dec: &Decomposition) -> Result<bool> {
    Ok(pchc(g, colors, dec, Engine::Rank, &Options::default())?.yes)
}

/// Tree decomposition from an elimination order: each vertex's bag holds it
/// and its later neighbours in the fill-in graph.
pub fn decomposition_from_order(g: &Graph, order: &[VertexId]) -> Result<Decomposition> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::invalid("elimination order must list every vertex once"));
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(Error::invalid("elimination order must list every vertex once"));
        }
        rank[v] = i;
    }
    if n == 0 {
        return Decomposition::from_parents(vec![None], vec![vec![]]);
    }
    let mut adj: Vec<std::collections::BTreeSet<VertexId>> = vec![Default::default(); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for &v in order {
        let later: Vec<VertexId> = adj[v].iter().copied().filter(|&w| rank[w] > rank[v]).collect();
        for (i, &x) in later.iter().enumerate() {
            for &y in &later[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        parent[rank[v]] = later.iter().map(|&w| rank[w]).min();
    }
    // Join the remaining roots into one tree.
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for &r in &roots[..roots.len() - 1] {
        parent[r] = Some(roots[roots.len() - 1]);
    }
    Decomposition::from_parents(parent, bags)
}
