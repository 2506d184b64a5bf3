use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_rational::Ratio;
use num_traits::Zero;

use crate::graph::{EdgeId, Graph, VertexId};

/// Exact nonnegative arc weight.
pub type Weight = Ratio<i128>;

/// Unweighted distances from `s`; `None` is unreachable.
pub fn bfs_dist(g: &Graph, s: VertexId) -> Vec<Option<u64>> {
    let mut d = vec![None; g.n()];
    let mut q = VecDeque::new();
    d[s] = Some(0);
    q.push_back(s);
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &e in g.out_edges(u) {
            let v = g.other(e, u);
            if d[v].is_none() {
                d[v] = Some(du + 1);
                q.push_back(v);
            }
        }
    }
    d
}

/// Weighted distances from `s` following arcs (or edges when undirected).
pub fn dijkstra(g: &Graph, w: &[Weight], s: VertexId) -> Vec<Option<Weight>> {
    dijkstra_dir(g, w, s, false)
}

/// Distances to `t` (Dijkstra on the reversed graph).
pub fn dijkstra_to(g: &Graph, w: &[Weight], t: VertexId) -> Vec<Option<Weight>> {
    dijkstra_dir(g, w, t, true)
}

fn dijkstra_dir(g: &Graph, w: &[Weight], s: VertexId, reverse: bool) -> Vec<Option<Weight>> {
    let n = g.n();
    let mut d: Vec<Option<Weight>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    d[s] = Some(Weight::zero());
    heap.push(Reverse((Weight::zero(), s)));
    while let Some(Reverse((du, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let edges: Vec<EdgeId> = if reverse && g.is_directed() { g.in_edges(u) } else { g.out_edges(u).to_vec() };
        for e in edges {
            let v = g.other(e, u);
            let nd = du + w[e];
            if d[v].as_ref().map_or(true, |x| nd < *x) {
                d[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    d
}

/// Vertices reachable from `s` using only edges accepted by `allow`.
pub fn reachable(g: &Graph, s: VertexId, allow: impl Fn(EdgeId) -> bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &e in g.out_edges(u) {
            if allow(e) {
                let v = g.other(e, u);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    seen
}

/// Vertices from which `t` is reachable using only accepted arcs.
pub fn co_reachable(g: &Graph, t: VertexId, allow: impl Fn(EdgeId) -> bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![t];
    seen[t] = true;
    while let Some(u) = stack.pop() {
        for e in g.in_edges(u) {
            if allow(e) {
                let v = g.other(e, u);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    seen
}

/// Topological order of a digraph restricted to accepted arcs, or `None`
/// when those arcs contain a directed cycle.
pub fn topological_order(g: &Graph, allow: impl Fn(EdgeId) -> bool) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for e in 0..g.m() {
        if allow(e) {
            indeg[g.head(e)] += 1;
        }
    }
    let mut q: VecDeque<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = q.pop_front() {
        order.push(u);
        for &e in g.out_edges(u) {
            if allow(e) {
                let v = g.head(e);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    q.push_back(v);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}
