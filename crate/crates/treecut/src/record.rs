//! Records describing how a solution crosses E_t, with the corresponding
//! and simplified instances built from them.

use std::collections::BTreeMap;

use ftg_core::{EdgeId, Error, Graph, Result, VertexId};
use serde::Serialize;

use crate::instance::{Key, VdpInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Internal,
    Foreign,
    Leaving,
    Unused,
}

/// (σ, ℐ, ℱ, λ): σ lists every cut edge with its label in edge order,
/// matchings are sorted pairs, λ maps unmatched terminals to L edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Record {
    pub sigma: Vec<(EdgeId, Label)>,
    pub internal: Vec<(EdgeId, EdgeId)>,
    pub foreign: Vec<(EdgeId, EdgeId)>,
    pub lambda: Vec<(VertexId, EdgeId)>,
}

impl Record {
    pub fn label(&self, e: EdgeId) -> Option<Label> {
        self.sigma.iter().find(|x| x.0 == e).map(|x| x.1)
    }

    pub fn with(&self, l: Label) -> Vec<EdgeId> {
        self.sigma.iter().filter(|x| x.1 == l).map(|x| x.0).collect()
    }

    pub fn normalized(mut self) -> Self {
        self.sigma.sort_unstable();
        for p in self.internal.iter_mut().chain(self.foreign.iter_mut()) {
            *p = (p.0.min(p.1), p.0.max(p.1));
        }
        self.internal.sort_unstable();
        self.foreign.sort_unstable();
        self.lambda.sort_unstable();
        self
    }
}

/// Y-side and Z-side endpoint of a cut edge.
fn sides(g: &Graph, y: &[bool], e: EdgeId) -> (VertexId, VertexId) {
    let (u, v) = g.endpoints(e);
    if y[u] {
        (u, v)
    } else {
        (v, u)
    }
}

/// Unmatched terminals of the node with vertex set `y`.
pub fn unmatched(y: &[bool], pairs: &[(VertexId, VertexId)]) -> Vec<VertexId> {
    let mut u: Vec<VertexId> = pairs
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .filter(|&(a, b)| y[a] && !y[b])
        .map(|(a, _)| a)
        .collect();
    u.sort_unstable();
    u
}

fn sigma_ok(g: &Graph, y: &[bool], cut: &[EdgeId], labels: &[Label]) -> bool {
    let mut at: BTreeMap<VertexId, Vec<Label>> = BTreeMap::new();
    for (&e, &l) in cut.iter().zip(labels) {
        if l == Label::Unused {
            continue;
        }
        let (u, v) = g.endpoints(e);
        at.entry(u).or_default().push(l);
        at.entry(v).or_default().push(l);
    }
    at.iter().all(|(&v, ls)| match ls[..] {
        [_] => true,
        [a, b] => {
            (a == b && matches!(a, Label::Internal | Label::Foreign))
                || (!y[v] && matches!((a, b), (Label::Foreign, Label::Leaving) | (Label::Leaving, Label::Foreign)))
        }
        _ => false,
    })
}

/// Perfect matchings on `items`, keeping only pairs accepted by `ok`.
fn matchings(items: &[EdgeId], ok: &dyn Fn(EdgeId, EdgeId) -> bool) -> Vec<Vec<(EdgeId, EdgeId)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    if items.len() % 2 == 1 {
        return Vec::new();
    }
    let first = items[0];
    let mut out = Vec::new();
    for j in 1..items.len() {
        if !ok(first, items[j]) {
            continue;
        }
        let rest: Vec<EdgeId> = items[1..].iter().copied().filter(|&x| x != items[j]).collect();
        for mut m in matchings(&rest, ok) {
            m.insert(0, (first, items[j]));
            out.push(m);
        }
    }
    out
}

fn permutations(items: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// R(t): all records for the node with vertex set `y`, cut `cut` and
/// unmatched terminals `unmatched`.
pub fn enumerate_records(g: &Graph, y: &[bool], cut: &[EdgeId], unmatched: &[VertexId]) -> Vec<Record> {
    let m = cut.len();
    let mut out = Vec::new();
    if unmatched.len() > m {
        return out;
    }
    const ALL: [Label; 4] = [Label::Internal, Label::Foreign, Label::Leaving, Label::Unused];
    let mut labels = vec![Label::Unused; m];
    for code in 0..4usize.pow(m as u32) {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = ALL[c % 4];
            c /= 4;
        }
        if labels.iter().filter(|&&l| l == Label::Leaving).count() != unmatched.len() || !sigma_ok(g, y, cut, &labels) {
            continue;
        }
        let pick = |want: Label| -> Vec<EdgeId> {
            cut.iter().zip(&labels).filter(|x| *x.1 == want).map(|x| *x.0).collect()
        };
        let (ii, ff, ll) = (pick(Label::Internal), pick(Label::Foreign), pick(Label::Leaving));
        let im = matchings(&ii, &|e, f| sides(g, y, e).0 != sides(g, y, f).0);
        let fm = matchings(&ff, &|e, f| sides(g, y, e).1 != sides(g, y, f).1);
        let lp = permutations(&ll);
        for i in &im {
            for f in &fm {
                for p in &lp {
                    out.push(
                        Record {
                            sigma: cut.iter().copied().zip(labels.iter().copied()).collect(),
                            internal: i.clone(),
                            foreign: f.clone(),
                            lambda: unmatched.iter().copied().zip(p.iter().copied()).collect(),
                        }
                        .normalized(),
                    );
                }
            }
        }
    }
    out.sort();
    out
}

/// Corresponding instance of `r` at the node whose vertex set is `y`,
/// taken from the base instance `base`.
pub fn corresponding_instance(base: &VdpInstance, y: &[bool], r: &Record) -> Result<VdpInstance> {
    let removed: Vec<bool> = (0..base.slots()).map(|v| !y.get(v).copied().unwrap_or(false)).collect();
    let mut groups: Vec<Vec<Key>> = r.internal.iter().map(|&(e, f)| vec![e, f]).collect();
    let singles: Vec<EdgeId> = r.with(Label::Foreign).into_iter().chain(r.with(Label::Leaving)).collect();
    groups.extend(singles.iter().map(|&e| vec![e]));
    let (mut out, created) = base.terminate(&removed, &groups)?;
    let node_of = |e: EdgeId| created[r.internal.len() + singles.iter().position(|&x| x == e).unwrap()];
    for &(e, f) in &r.foreign {
        out.pairs.push((node_of(e), node_of(f)));
    }
    for &(a, e) in &r.lambda {
        out.pairs.push((a, node_of(e)));
    }
    Ok(out)
}

/// Simplification of `inst` at a node with vertex set `y` according to `r`.
/// `None` when the record does not fit the current instance: an edge it
/// uses is missing, its terminals differ, or a ℱ pair meets the rest of the
/// graph in one vertex.
pub fn simplify(inst: &VdpInstance, y: &[bool], r: &Record) -> Result<Option<VdpInstance>> {
    let iny = |v: VertexId| y.get(v).copied().unwrap_or(false);
    for (e, a, b) in inst.edges() {
        if iny(a) != iny(b) && r.label(e).is_none() {
            return Err(Error::internal(format!("cut edge {e} is unknown to the record")));
        }
    }
    let mut outside = BTreeMap::new();
    for (e, l) in &r.sigma {
        if *l == Label::Unused {
            continue;
        }
        let Some((a, b)) = inst.edge(*e) else { return Ok(None) };
        if iny(a) == iny(b) {
            return Ok(None);
        }
        outside.insert(*e, if iny(a) { b } else { a });
    }
    if r.foreign.iter().any(|(e, f)| outside[e] == outside[f]) {
        return Ok(None);
    }
    let mut current: Vec<(VertexId, VertexId)> = inst
        .pairs
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .filter(|&(a, b)| iny(a) && !iny(b))
        .collect();
    current.sort_unstable();
    if current.iter().map(|x| x.0).ne(r.lambda.iter().map(|x| x.0)) {
        return Ok(None);
    }
    let removed: Vec<bool> = (0..inst.slots()).map(iny).collect();
    let mut groups: Vec<Vec<Key>> = r.foreign.iter().map(|&(e, f)| vec![e, f]).collect();
    let singles: Vec<EdgeId> = r.with(Label::Internal).into_iter().chain(r.with(Label::Leaving)).collect();
    groups.extend(singles.iter().map(|&e| vec![e]));
    let (mut out, created) = inst.terminate(&removed, &groups)?;
    let node_of = |e: EdgeId| created[r.foreign.len() + singles.iter().position(|&x| x == e).unwrap()];
    for &(e, f) in &r.internal {
        out.pairs.push((node_of(e), node_of(f)));
    }
    for (&(_, e), &(_, b)) in r.lambda.iter().zip(&current) {
        out.pairs.push((node_of(e), b));
    }
    Ok(Some(out))
}
