//! Leaf-to-root computation of valid records over a nice treecut decomposition.

use std::collections::HashSet;

use ftg_core::{Decomposition, EdgeId, Error, Graph, Result, Transitions, VertexId};
use serde::Serialize;

use crate::instance::{Key, VdpInstance};
use crate::record::{corresponding_instance, enumerate_records, simplify, unmatched, Label, Record};
use crate::structure::{evaluate_width, make_nice, node_info, NodeInfo};

pub type RecordSet = HashSet<Record>;

/// Current cut of `y` in `inst`: (key, inner endpoint, outer endpoint).
fn current_cut(inst: &VdpInstance, y: &[bool]) -> Vec<(Key, VertexId, VertexId)> {
    let iny = |v: VertexId| y.get(v).copied().unwrap_or(false);
    let mut out: Vec<(Key, VertexId, VertexId)> = inst
        .edges()
        .filter(|&(_, a, b)| iny(a) != iny(b))
        .map(|(e, a, b)| if iny(a) { (e, a, b) } else { (e, b, a) })
        .collect();
    out.sort_unstable();
    out
}

struct Lookup<'a> {
    cut: &'a [EdgeId],
    table: &'a RecordSet,
}

impl Lookup<'_> {
    /// Whether the record that labels `used` as given and every other
    /// original cut edge as unused is valid.
    fn has(&self, used: &[(Key, Label)], internal: &[(Key, Key)], foreign: &[(Key, Key)], lambda: &[(VertexId, Key)]) -> bool {
        let sigma = self
            .cut
            .iter()
            .map(|&e| (e, used.iter().find(|x| x.0 == e).map_or(Label::Unused, |x| x.1)))
            .collect();
        let r = Record { sigma, internal: internal.to_vec(), foreign: foreign.to_vec(), lambda: lambda.to_vec() }.normalized();
        self.table.contains(&r)
    }
}

/// Applies the thin-child rule for the child with vertex set `y_s`, cut
/// `cut_s` (in the input graph) and valid records `d_s`. `None` is the
/// no-instance verdict.
pub fn reduce_thin_child(inst: &VdpInstance, y_s: &[bool], cut_s: &[EdgeId], d_s: &RecordSet) -> Result<Option<VdpInstance>> {
    use Label::*;
    if d_s.is_empty() {
        return Ok(None);
    }
    let iny = |v: VertexId| y_s.get(v).copied().unwrap_or(false);
    let removed: Vec<bool> = (0..inst.slots()).map(iny).collect();
    let cut = current_cut(inst, y_s);
    let mut out_pairs: Vec<(VertexId, VertexId)> = inst
        .pairs
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .filter(|&(a, b)| iny(a) && !iny(b))
        .collect();
    out_pairs.sort_unstable();
    let look = Lookup { cut: cut_s, table: d_s };
    let with_pairs = |groups: &[Vec<Key>], extra: &[(usize, VertexId)]| -> Result<Option<VdpInstance>> {
        let (mut out, created) = inst.terminate(&removed, groups)?;
        for &(g, b) in extra {
            out.pairs.push((created[g], b));
        }
        Ok(Some(out))
    };
    match (&cut[..], &out_pairs[..]) {
        ([], []) => {
            if look.has(&[], &[], &[], &[]) {
                return with_pairs(&[], &[]);
            }
        }
        (&[(e, _, _)], &[(a, b)]) => {
            if look.has(&[(e, Leaving)], &[], &[], &[(a, e)]) {
                return with_pairs(&[vec![e]], &[(0, b)]);
            }
        }
        (&[(e, _, _)], []) => {
            if look.has(&[(e, Unused)], &[], &[], &[]) {
                return with_pairs(&[], &[]);
            }
        }
        (&[(e, _, ze), (f, _, zf)], []) => {
            if ze != zf && look.has(&[(e, Foreign), (f, Foreign)], &[], &[(e, f)], &[]) {
                return with_pairs(&[vec![e, f]], &[]);
            }
            if look.has(&[(e, Unused), (f, Unused)], &[], &[], &[]) {
                return with_pairs(&[], &[]);
            }
            if look.has(&[(e, Internal), (f, Internal)], &[(e, f)], &[], &[]) {
                let (mut out, c) = inst.terminate(&removed, &[vec![e], vec![f]])?;
                out.pairs.push((c[0], c[1]));
                return Ok(Some(out));
            }
        }
        (&[(e, _, ze), (f, _, zf)], &[(a, b)]) => {
            let via_e = look.has(&[(e, Leaving), (f, Unused)], &[], &[], &[(a, e)]);
            let via_f = look.has(&[(f, Leaving), (e, Unused)], &[], &[], &[(a, f)]);
            if via_e && via_f {
                if ze != zf {
                    return with_pairs(&[vec![e, f]], &[(0, b)]);
                }
                // Both edges end at one outer vertex: keep e and let it inherit the turns of f.
                let (mut out, c) = inst.terminate(&removed, &[vec![e]])?;
                let turns: Vec<Key> = out
                    .incident(ze)
                    .iter()
                    .copied()
                    .filter(|&g| g != e && inst.permits(f, g))
                    .collect();
                for g in turns {
                    out.allow(e, g);
                }
                out.pairs.push((c[0], b));
                return Ok(Some(out));
            }
            if via_e {
                return with_pairs(&[vec![e]], &[(0, b)]);
            }
            if via_f {
                return with_pairs(&[vec![f]], &[(0, b)]);
            }
        }
        (&[(e, _, ze), (f, _, zf)], &[(a1, b1), (a2, b2)]) => {
            let both = [(e, Leaving), (f, Leaving)];
            let straight = look.has(&both, &[], &[], &[(a1, e), (a2, f)]);
            let crossed = look.has(&both, &[], &[], &[(a1, f), (a2, e)]);
            if ze != zf && straight && crossed {
                let (mut out, c) = inst.terminate(&removed, &[vec![e, f]])?;
                let twin = out.add_vertex();
                let e2 = out.add_edge(ze, twin);
                let f2 = out.add_edge(zf, twin);
                for (orig, copy, z) in [(e, e2, ze), (f, f2, zf)] {
                    let turns: Vec<Key> =
                        out.incident(z).iter().copied().filter(|&g| g != copy && out.permits(orig, g)).collect();
                    for g in turns {
                        out.allow(copy, g);
                    }
                }
                out.allow(e2, f2);
                out.pairs.push((c[0], b1));
                out.pairs.push((twin, b2));
                return Ok(Some(out));
            }
            if straight {
                return with_pairs(&[vec![e], vec![f]], &[(0, b1), (1, b2)]);
            }
            if crossed {
                return with_pairs(&[vec![e], vec![f]], &[(0, b2), (1, b1)]);
            }
        }
        _ => {}
    }
    Ok(None)
}

/// Everything the record computation needs about the input.
pub struct Context<'a> {
    pub g: &'a Graph,
    pub base: VdpInstance,
    pub dec: Decomposition,
    pub info: Vec<NodeInfo>,
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl<'a> Context<'a> {
    pub fn new(g: &'a Graph, t: &Transitions, pairs: &[(VertexId, VertexId)], dec: Decomposition) -> Result<Self> {
        let base = VdpInstance::new(g, t, pairs)?;
        dec.check_partition(g)?;
        let info = node_info(g, &dec);
        Ok(Context { g, base, dec, info, pairs: pairs.to_vec() })
    }

    pub fn records(&self, t: usize) -> Vec<Record> {
        let i = &self.info[t];
        enumerate_records(self.g, &i.y, &i.cut, &unmatched(&i.y, &self.pairs))
    }

    fn bag_mask(&self, t: usize) -> Vec<bool> {
        let mut a = vec![false; self.g.n()];
        for &v in self.dec.bag(t) {
            a[v] = true;
        }
        a
    }

    /// Whether record `r` at `t` is valid, given the tables of all children.
    pub fn is_valid(&self, t: usize, r: &Record, tables: &[Option<RecordSet>]) -> Result<bool> {
        let mut inst = corresponding_instance(&self.base, &self.info[t].y, r)?;
        let kids = self.dec.children(t);
        let mut bold = Vec::new();
        for &s in kids {
            if self.info[s].is_thin() {
                let d = tables[s].as_ref().ok_or_else(|| Error::internal("child table missing"))?;
                match reduce_thin_child(&inst, &self.info[s].y, &self.info[s].cut, d)? {
                    Some(next) => inst = next,
                    None => return Ok(false),
                }
            } else {
                bold.push(s);
            }
        }
        let a = self.bag_mask(t);
        let options: Vec<Vec<&Record>> = bold
            .iter()
            .map(|&s| {
                let mut v: Vec<&Record> = tables[s].as_ref().unwrap().iter().collect();
                v.sort();
                v
            })
            .collect();
        self.assign(&inst, &bold, &options, 0, &a)
    }

    fn assign(&self, inst: &VdpInstance, bold: &[usize], options: &[Vec<&Record>], i: usize, a: &[bool]) -> Result<bool> {
        if i == bold.len() {
            return inst.solve_scomvdp(a);
        }
        for r in &options[i] {
            if let Some(next) = simplify(inst, &self.info[bold[i]].y, r)? {
                if self.assign(&next, bold, options, i + 1, a)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn solve_node(&self, t: usize, tables: &[Option<RecordSet>]) -> Result<RecordSet> {
        let mut d = RecordSet::new();
        for r in self.records(t) {
            if self.is_valid(t, &r, tables)? {
                d.insert(r);
            }
        }
        Ok(d)
    }
}

/// D(t) for a leaf.
pub fn solve_leaf(ctx: &Context<'_>, t: usize) -> Result<RecordSet> {
    if !ctx.dec.children(t).is_empty() {
        return Err(Error::precondition(format!("node {t} is not a leaf")));
    }
    ctx.solve_node(t, &[])
}

/// D(t) for an internal node from the children's tables.
pub fn solve_internal(ctx: &Context<'_>, t: usize, tables: &[Option<RecordSet>]) -> Result<RecordSet> {
    ctx.solve_node(t, tables)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ComvdpReport {
    pub yes: bool,
    pub width: usize,
    pub nice: bool,
    pub nodes: usize,
    /// Largest |R(t)| met.
    pub max_records: usize,
    /// Largest number of bold children of a node.
    pub max_bold_children: usize,
    /// Largest |U_t|.
    pub max_unmatched: usize,
    pub valid_records: Vec<usize>,
}

/// Nice version of `dec` together with D(t) for every node, or `None` in
/// place of the tables when some |U_t| exceeds the width.
pub fn valid_records(
    g: &Graph,
    t: &Transitions,
    pairs: &[(VertexId, VertexId)],
    dec: &Decomposition,
    report: &mut ComvdpReport,
) -> Result<(Decomposition, Option<Vec<RecordSet>>)> {
    let input = evaluate_width(g, dec)?;
    let nice = make_nice(g, dec)?;
    let after = evaluate_width(g, &nice)?;
    if !after.nice || after.width > input.width {
        return Err(Error::internal("niceness repair broke its guarantees"));
    }
    let ctx = Context::new(g, t, pairs, nice.clone())?;
    let k = after.width;
    let nodes = ctx.dec.len();
    report.width = k;
    report.nice = after.nice;
    report.nodes = nodes;
    report.valid_records = vec![0; nodes];
    for s in 0..nodes {
        let u = unmatched(&ctx.info[s].y, pairs).len();
        report.max_unmatched = report.max_unmatched.max(u);
        let bold = ctx.dec.children(s).iter().filter(|&&c| !ctx.info[c].is_thin()).count();
        report.max_bold_children = report.max_bold_children.max(bold);
        if u > k {
            return Ok((nice, None));
        }
    }
    let mut tables: Vec<Option<RecordSet>> = vec![None; nodes];
    for s in ctx.dec.post_order() {
        report.max_records = report.max_records.max(ctx.records(s).len());
        let d = ctx.solve_node(s, &tables)?;
        report.valid_records[s] = d.len();
        tables[s] = Some(d);
    }
    Ok((nice, Some(tables.into_iter().map(Option::unwrap).collect())))
}

/// Decides ComVDP from a treecut decomposition of `g`.
pub fn comvdp(g: &Graph, t: &Transitions, pairs: &[(VertexId, VertexId)], dec: &Decomposition) -> Result<ComvdpReport> {
    let mut report = ComvdpReport::default();
    let (nice, tables) = valid_records(g, t, pairs, dec, &mut report)?;
    if let Some(tables) = tables {
        let root = &tables[nice.root()];
        report.yes = root.len() == 1 && root.contains(&Record::default());
    }
    Ok(report)
}
