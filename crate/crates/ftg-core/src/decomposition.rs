use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Rooted tree whose nodes carry vertex bags. Used both for treecut
/// decompositions (bags partition V) and tree decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    bags: Vec<Vec<VertexId>>,
}

impl Decomposition {
    pub fn from_tree(root: usize, tree_edges: &[(usize, usize)], bags: Vec<Vec<VertexId>>) -> Result<Self> {
        let k = bags.len();
        if root >= k {
            return Err(Error::invalid("root is not a node"));
        }
        if tree_edges.len() + 1 != k {
            return Err(Error::invalid(format!("a tree on {k} nodes needs {} edges", k - 1)));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in tree_edges {
            if a >= k || b >= k || a == b {
                return Err(Error::invalid(format!("bad tree edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for &c in &adj[t] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(t);
                    children[t].push(c);
                    stack.push(c);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("tree edges do not connect all nodes"));
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Decomposition { root, parent, children, bags })
    }

    /// Builds from a parent array (`None` exactly at the root).
    pub fn from_parents(parent: Vec<Option<usize>>, bags: Vec<Vec<VertexId>>) -> Result<Self> {
        let root = parent
            .iter()
            .position(|p| p.is_none())
            .ok_or_else(|| Error::invalid("no root"))?;
        let edges: Vec<(usize, usize)> =
            parent.iter().enumerate().filter_map(|(t, p)| p.map(|p| (p, t))).collect();
        Self::from_tree(root, &edges, bags)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn bag(&self, t: usize) -> &[VertexId] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    /// Nodes ordered so that every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                order.push(t);
            } else {
                stack.push((t, true));
                for &c in self.children[t].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Nodes in the subtree rooted at `t`, `t` included.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let mut out = vec![t];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    pub fn depth(&self, t: usize) -> usize {
        let mut d = 0;
        let mut x = t;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    /// Checks that the bags partition `V(g)`.
    pub fn check_partition(&self, g: &Graph) -> Result<()> {
        let mut owner = vec![None; g.n()];
        for (t, b) in self.bags.iter().enumerate() {
            for &v in b {
                if v >= g.n() {
                    return Err(Error::invalid(format!("bag {t}: vertex {v} out of range")));
                }
                if owner[v].replace(t).is_some() {
                    return Err(Error::invalid(format!("vertex {v} is in two bags")));
                }
            }
        }
        if let Some(v) = owner.iter().position(|o| o.is_none()) {
            return Err(Error::invalid(format!("vertex {v} is in no bag")));
        }
        Ok(())
    }

    /// Checks the tree-decomposition axioms: every vertex and edge is covered
    /// and the nodes containing a vertex form a connected subtree.
    pub fn check_tree_decomposition(&self, g: &Graph) -> Result<()> {
        let mut holders = vec![Vec::new(); g.n()];
        for (t, b) in self.bags.iter().enumerate() {
            for &v in b {
                if v >= g.n() {
                    return Err(Error::invalid(format!("bag {t}: vertex {v} out of range")));
                }
                holders[v].push(t);
            }
        }
        for (v, h) in holders.iter().enumerate() {
            if h.is_empty() {
                return Err(Error::invalid(format!("vertex {v} is in no bag")));
            }
            let tops = h
                .iter()
                .filter(|&&t| self.parent[t].map_or(true, |p| !self.bags[p].contains(&v)))
                .count();
            if tops != 1 {
                return Err(Error::invalid(format!("bags containing {v} are not connected")));
            }
        }
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(Error::invalid(format!("edge {id} ({u},{v}) is not covered")));
            }
        }
        Ok(())
    }

    pub fn treewidth(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }
}
