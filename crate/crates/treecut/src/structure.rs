//! Treecut decompositions: cuts, torsos, width, niceness, and an exhaustive
//! minimum-width search for small graphs.

use ftg_core::{Decomposition, EdgeId, Error, Graph, Result, VertexId};

/// Per-node data of a treecut decomposition.
#[derive(Clone, Debug)]
pub struct NodeInfo {
    /// Membership mask of Y_t.
    pub y: Vec<bool>,
    /// E_t in increasing edge order (empty at the root).
    pub cut: Vec<EdgeId>,
}

impl NodeInfo {
    pub fn is_thin(&self) -> bool {
        self.cut.len() <= 2
    }
}

pub fn node_info(g: &Graph, dec: &Decomposition) -> Vec<NodeInfo> {
    let y: Vec<Vec<bool>> = (0..dec.len())
        .map(|t| {
            let mut mask = vec![false; g.n()];
            for x in dec.subtree(t) {
                for &v in dec.bag(x) {
                    mask[v] = true;
                }
            }
            mask
        })
        .collect();
    (0..dec.len())
        .map(|t| {
            let cut = if t == dec.root() {
                Vec::new()
            } else {
                (0..g.m()).filter(|&e| {
                    let (u, v) = g.endpoints(e);
                    y[t][u] != y[t][v]
                })
                .collect()
            };
            NodeInfo { y: y[t].clone(), cut }
        })
        .collect()
}

/// Vertex count of the 3-center of a multigraph on `is_bag.len()` vertices:
/// non-bag vertices of degree at most two are suppressed until none is left.
/// A loop adds two to the degree.
pub fn center_size(is_bag: &[bool], edges: &[(usize, usize)]) -> usize {
    let n = is_bag.len();
    let mut ends: Vec<Option<(usize, usize)>> = edges.iter().map(|&e| Some(e)).collect();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        inc[a].push(i);
        if a != b {
            inc[b].push(i);
        }
    }
    let degree = |inc: &Vec<Vec<usize>>, ends: &Vec<Option<(usize, usize)>>, v: usize| {
        inc[v]
            .iter()
            .filter_map(|&i| ends[i])
            .map(|(a, b)| if a == b { 2 } else { 1 })
            .sum::<usize>()
    };
    let mut alive = vec![true; n];
    loop {
        let pick = (0..n).find(|&v| alive[v] && !is_bag[v] && degree(&inc, &ends, v) <= 2);
        let Some(v) = pick else { break };
        let live: Vec<usize> = inc[v].iter().copied().filter(|&i| ends[i].is_some()).collect();
        let others: Vec<usize> = live
            .iter()
            .filter_map(|&i| ends[i].map(|(a, b)| if a == v { b } else { a }))
            .filter(|&w| w != v)
            .collect();
        for &i in &live {
            ends[i] = None;
        }
        if let [a, b] = others[..] {
            let i = ends.len();
            ends.push(Some((a, b)));
            inc[a].push(i);
            if a != b {
                inc[b].push(i);
            }
        }
        alive[v] = false;
    }
    alive.iter().filter(|&&a| a).count()
}

/// Torso 3-center size at `t`, given each vertex's component label.
fn torso_center(g: &Graph, group: &[usize], is_bag: &[bool]) -> usize {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (group[u], group[v]))
        .filter(|(a, b)| a != b)
        .collect();
    center_size(is_bag, &edges)
}

fn node_center(g: &Graph, dec: &Decomposition, info: &[NodeInfo], t: usize) -> usize {
    let bag = dec.bag(t);
    let kids = dec.children(t);
    let mut group = vec![usize::MAX; g.n()];
    for (i, &v) in bag.iter().enumerate() {
        group[v] = i;
    }
    for (j, &c) in kids.iter().enumerate() {
        for v in 0..g.n() {
            if info[c].y[v] {
                group[v] = bag.len() + j;
            }
        }
    }
    let parent_group = bag.len() + kids.len();
    for v in 0..g.n() {
        if !info[t].y[v] {
            group[v] = parent_group;
        }
    }
    let mut is_bag = vec![true; bag.len()];
    is_bag.resize(parent_group + usize::from(t != dec.root()), false);
    torso_center(g, &group, &is_bag)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub width: usize,
    pub nice: bool,
    pub max_adhesion: usize,
    pub max_center: usize,
}

pub fn evaluate_width(g: &Graph, dec: &Decomposition) -> Result<WidthReport> {
    if g.is_directed() {
        return Err(Error::invalid("treecut decompositions need an undirected graph"));
    }
    dec.check_partition(g)?;
    let info = node_info(g, dec);
    let max_adhesion = info.iter().map(|i| i.cut.len()).max().unwrap_or(0);
    let max_center = (0..dec.len()).map(|t| node_center(g, dec, &info, t)).max().unwrap_or(0);
    Ok(WidthReport {
        width: max_adhesion.max(max_center),
        nice: violation(g, dec, &info).is_none(),
        max_adhesion,
        max_center,
    })
}

/// A thin node `t` together with a sibling whose subtree holds a neighbour of Y_t.
fn violation(g: &Graph, dec: &Decomposition, info: &[NodeInfo]) -> Option<(usize, usize)> {
    for t in 0..dec.len() {
        let Some(p) = dec.parent(t) else { continue };
        if !info[t].is_thin() {
            continue;
        }
        for &b in dec.children(p) {
            if b == t {
                continue;
            }
            let touches = info[t].cut.iter().any(|&e| {
                let (u, v) = g.endpoints(e);
                info[b].y[u] || info[b].y[v]
            });
            if touches {
                return Some((t, b));
            }
        }
    }
    None
}

pub fn is_nice(g: &Graph, dec: &Decomposition) -> bool {
    violation(g, dec, &node_info(g, dec)).is_none()
}

fn reattach(dec: &Decomposition, t: usize, new_parent: usize) -> Result<Decomposition> {
    let mut parent = dec.parents().to_vec();
    parent[t] = Some(new_parent);
    Decomposition::from_parents(parent, dec.bags().to_vec())
}

/// Repeatedly moves a thin node that sees a sibling subtree below a node of
/// that subtree, keeping the width. Fails if no width-preserving move exists.
pub fn make_nice(g: &Graph, dec: &Decomposition) -> Result<Decomposition> {
    let start = evaluate_width(g, dec)?.width;
    let mut cur = dec.clone();
    let limit = dec.len() * dec.len() + 1;
    for _ in 0..limit {
        let info = node_info(g, &cur);
        let Some((t, b)) = violation(g, &cur, &info) else {
            return Ok(cur);
        };
        let mut candidates = vec![b];
        for x in cur.subtree(b) {
            if x != b
                && info[t].cut.iter().any(|&e| {
                    let (u, v) = g.endpoints(e);
                    cur.bag(x).contains(&u) || cur.bag(x).contains(&v)
                })
            {
                candidates.push(x);
            }
        }
        let mut moved = None;
        for x in candidates {
            let next = reattach(&cur, t, x)?;
            if evaluate_width(g, &next)?.width <= start {
                moved = Some(next);
                break;
            }
        }
        cur = moved.ok_or_else(|| Error::internal(format!("no width-preserving move for thin node {t}")))?;
    }
    Err(Error::internal("niceness repair did not terminate"))
}

/// Minimum-width treecut decomposition for graphs with at most ten
/// vertices, or `None` when every decomposition is wider than `k_max`.
pub fn exhaustive_treecut_decomposition(g: &Graph, k_max: usize) -> Result<Option<(Decomposition, usize)>> {
    let n = g.n();
    if n > 10 {
        return Err(Error::TooLarge(format!("exhaustive treecut search is limited to 10 vertices, got {n}")));
    }
    if g.is_directed() {
        return Err(Error::invalid("treecut decompositions need an undirected graph"));
    }
    if n == 0 {
        return Ok(Some((Decomposition::from_parents(vec![None], vec![vec![]])?, 0)));
    }
    let full: u32 = (1u32 << n) - 1;
    let cut_size = |y: u32| {
        g.edges().iter().filter(|&&(u, v)| (y >> u & 1) != (y >> v & 1)).count()
    };
    // best[y] = (width, bag, children) for a non-root subtree spanning y.
    let mut best: Vec<Option<(usize, u32, Vec<u32>)>> = vec![None; 1 << n];
    let mut order: Vec<u32> = (1..=full).collect();
    order.sort_by_key(|y| y.count_ones());
    let choose = |y: u32, root: bool, best: &Vec<Option<(usize, u32, Vec<u32>)>>| -> Option<(usize, u32, Vec<u32>)> {
        let adhesion = if root { 0 } else { cut_size(y) };
        if adhesion > k_max {
            return None;
        }
        let mut found: Option<(usize, u32, Vec<u32>)> = None;
        let mut x = y;
        loop {
            if (x.count_ones() as usize) <= k_max {
                let rest = y & !x;
                let mut blocks = Vec::new();
                partitions(rest, best, &mut blocks, &mut |blocks: &[u32]| {
                    if x == 0 && blocks.len() == 1 {
                        return;
                    }
                    let sub = blocks.iter().map(|&b| best[b as usize].as_ref().unwrap().0).max().unwrap_or(0);
                    let bound = found.as_ref().map_or(k_max + 1, |f| f.0);
                    if sub.max(adhesion) >= bound {
                        return;
                    }
                    let c = subset_center(g, y, x, blocks, root);
                    let w = sub.max(adhesion).max(c);
                    if w < bound {
                        found = Some((w, x, blocks.to_vec()));
                    }
                });
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & y;
        }
        found
    };
    for &y in &order {
        if y != full {
            best[y as usize] = choose(y, false, &best);
        }
    }
    let Some(top) = choose(full, true, &best) else { return Ok(None) };
    let mut parents = vec![None];
    let mut bags = vec![bits(top.1)];
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, top.2.clone())];
    while let Some((node, kids)) = stack.pop() {
        for b in kids {
            let (_, x, sub) = best[b as usize].clone().unwrap();
            let id = bags.len();
            parents.push(Some(node));
            bags.push(bits(x));
            stack.push((id, sub));
        }
    }
    Ok(Some((Decomposition::from_parents(parents, bags)?, top.0)))
}

fn bits(x: u32) -> Vec<VertexId> {
    (0..32).filter(|&i| x >> i & 1 == 1).collect()
}

/// Set partitions of `rest` into blocks that admit a subtree.
fn partitions(
    rest: u32,
    best: &[Option<(usize, u32, Vec<u32>)>],
    blocks: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if rest == 0 {
        visit(blocks);
        return;
    }
    let low = rest & rest.wrapping_neg();
    let others = rest & !low;
    let mut s = others;
    loop {
        let block = s | low;
        if best[block as usize].is_some() {
            blocks.push(block);
            partitions(rest & !block, best, blocks, visit);
            blocks.pop();
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & others;
    }
}

fn subset_center(g: &Graph, y: u32, x: u32, blocks: &[u32], root: bool) -> usize {
    let xs = bits(x);
    let mut group = vec![usize::MAX; g.n()];
    for (i, &v) in xs.iter().enumerate() {
        group[v] = i;
    }
    for (j, &b) in blocks.iter().enumerate() {
        for v in bits(b) {
            group[v] = xs.len() + j;
        }
    }
    let parent_group = xs.len() + blocks.len();
    for v in 0..g.n() {
        if y >> v & 1 == 0 {
            group[v] = parent_group;
        }
    }
    let mut is_bag = vec![true; xs.len()];
    is_bag.resize(parent_group + usize::from(!root), false);
    torso_center(g, &group, &is_bag)
}
