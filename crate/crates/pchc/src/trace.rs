//! Colored traces, the fit predicates, and the cut × monomial row vectors
//! used to prune trace families.

use ftg_core::{Error, Result};

use crate::gf::Gf;

pub const NONE: usize = usize::MAX;

/// `(f, M, ζ)` over a boundary of `f.len()` positions. `mate[i]` is the
/// other path endpoint of position `i` and `zeta[i]` the colour of the
/// partial-solution edge at `i`; both are only meaningful where `f[i] == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trace {
    pub f: Vec<u8>,
    pub mate: Vec<usize>,
    pub zeta: Vec<u32>,
}

impl Trace {
    pub fn empty(len: usize) -> Self {
        Trace { f: vec![0; len], mate: vec![NONE; len], zeta: vec![0; len] }
    }

    /// Builds a trace from degrees, endpoint pairs and endpoint colours.
    pub fn from_parts(f: Vec<u8>, matching: &[(usize, usize)], zeta: &[(usize, u32)]) -> Result<Self> {
        let len = f.len();
        let mut t = Trace { f, mate: vec![NONE; len], zeta: vec![0; len] };
        for &(x, y) in matching {
            if x >= len || y >= len || x == y || t.mate[x] != NONE || t.mate[y] != NONE {
                return Err(Error::invalid(format!("bad matching pair ({x},{y})")));
            }
            t.mate[x] = y;
            t.mate[y] = x;
        }
        for &(x, c) in zeta {
            if x >= len {
                return Err(Error::invalid(format!("colour for position {x} outside the boundary")));
            }
            t.zeta[x] = c;
        }
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        for i in 0..self.f.len() {
            let matched = self.mate[i] != NONE;
            if self.f[i] > 2 || matched != (self.f[i] == 1) {
                return Err(Error::invalid(format!("matching does not cover exactly the degree-one positions at {i}")));
            }
            if matched && self.mate[self.mate[i]] != i {
                return Err(Error::invalid(format!("matching is not symmetric at {i}")));
            }
        }
        Ok(())
    }

    /// Z = f⁻¹(1) in increasing order.
    pub fn z(&self) -> Vec<usize> {
        (0..self.f.len()).filter(|&i| self.f[i] == 1).collect()
    }

    /// Matching as pairs of indices into `z()`.
    pub fn local_matching(&self) -> Vec<(usize, usize)> {
        let z = self.z();
        let index = |p: usize| z.iter().position(|&q| q == p).unwrap();
        z.iter()
            .filter(|&&p| p < self.mate[p])
            .map(|&p| (index(p), index(self.mate[p])))
            .collect()
    }
}

/// True if the union of two perfect matchings on the same set is one cycle.
pub fn single_cycle(a: &[usize], b: &[usize], z: &[usize]) -> bool {
    let Some(&start) = z.first() else { return true };
    let mut seen = 0;
    let mut v = start;
    let mut use_a = true;
    loop {
        v = if use_a { a[v] } else { b[v] };
        use_a = !use_a;
        if use_a {
            seen += 2;
            if v == start {
                break;
            }
        }
    }
    seen == z.len()
}

pub fn fit_traces(p: &Trace, q: &Trace) -> Result<bool> {
    if p.f.len() != q.f.len() {
        return Err(Error::precondition("traces over different boundaries"));
    }
    if p.f.iter().zip(&q.f).any(|(a, b)| a + b != 2) {
        return Ok(false);
    }
    Ok(single_cycle(&p.mate, &q.mate, &p.z()))
}

pub fn fit_colored(p: &Trace, q: &Trace) -> Result<bool> {
    Ok(fit_traces(p, q)? && p.z().iter().all(|&i| p.zeta[i] != q.zeta[i]))
}

/// Agreement bits of a matching on `z` elements with every cut. Cut `c` puts
/// element 0 on one side and element `i > 0` on the side given by bit `i-1`.
pub fn cut_row(z: usize, matching: &[(usize, usize)]) -> Vec<u8> {
    if z == 0 {
        return vec![1];
    }
    let side = |c: usize, i: usize| if i == 0 { 0 } else { c >> (i - 1) & 1 };
    (0..1usize << (z - 1))
        .map(|c| u8::from(matching.iter().all(|&(x, y)| side(c, x) == side(c, y))))
        .collect()
}

/// Coefficients of ∏(ζ(v) + x_v): the monomial ∏_{v∈I} x_v gets ∏_{v∉I} ζ(v).
pub fn pi_row(gf: &Gf, zeta: &[u32]) -> Vec<u32> {
    let z = zeta.len();
    let mut row = vec![1u32; 1 << z];
    for (i, r) in row.iter_mut().enumerate() {
        for (v, &c) in zeta.iter().enumerate() {
            if i >> v & 1 == 0 {
                *r = gf.mul(*r, c);
            }
        }
    }
    row
}

/// Value vector pairing with `pi_row`: monomial I evaluates to ∏_{v∈I} ζ(v).
pub fn monomial_values(gf: &Gf, zeta: &[u32]) -> Vec<u32> {
    let z = zeta.len();
    (0..1usize << z)
        .map(|i| (0..z).filter(|v| i >> v & 1 == 1).fold(1, |acc, v| gf.mul(acc, zeta[v])))
        .collect()
}

pub fn dot(gf: &Gf, x: &[u32], y: &[u32]) -> u32 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| acc ^ gf.mul(a, b))
}

/// Row of E: cut agreement bits tensored with the π coefficients.
pub fn e_row(gf: &Gf, t: &Trace) -> Vec<u32> {
    let z = t.z();
    let zeta: Vec<u32> = z.iter().map(|&i| t.zeta[i]).collect();
    let cuts = cut_row(z.len(), &t.local_matching());
    let pi = pi_row(gf, &zeta);
    let mut row = Vec::with_capacity(cuts.len() * pi.len());
    for &c in &cuts {
        for &p in &pi {
            row.push(if c == 1 { p } else { 0 });
        }
    }
    row
}

/// Column vector pairing with `e_row`: v1 ⊗ v2 for the other side's trace.
pub fn e_column(gf: &Gf, q: &Trace) -> Vec<u32> {
    let z = q.z();
    let zeta: Vec<u32> = z.iter().map(|&i| q.zeta[i]).collect();
    let cuts = cut_row(z.len(), &q.local_matching());
    let vals = monomial_values(gf, &zeta);
    let mut col = Vec::with_capacity(cuts.len() * vals.len());
    for &c in &cuts {
        for &v in &vals {
            col.push(if c == 1 { v } else { 0 });
        }
    }
    col
}

/// Incremental row-echelon basis over GF(2^a).
struct Basis<'a> {
    gf: &'a Gf,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Basis<'_> {
    /// Reduces `row` against the basis; keeps it and returns true if it is independent.
    fn insert(&mut self, mut row: Vec<u32>) -> bool {
        for (pivot, b) in &self.rows {
            let c = row[*pivot];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(b) {
                    *x ^= self.gf.mul(c, y);
                }
            }
        }
        let Some(pivot) = row.iter().position(|&x| x != 0) else { return false };
        let inv = self.gf.inv(row[pivot]).unwrap();
        for x in row.iter_mut() {
            *x = self.gf.mul(*x, inv);
        }
        for (_, b) in self.rows.iter_mut() {
            let c = b[pivot];
            if c != 0 {
                for (x, &y) in b.iter_mut().zip(&row) {
                    *x ^= self.gf.mul(c, y);
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }
}

/// Subfamily whose E-rows span the same space, keeping the earliest
/// independent rows in input order.
pub fn reduce_representatives(gf: &Gf, family: &[Trace]) -> Result<Vec<Trace>> {
    let Some(first) = family.first() else { return Ok(Vec::new()) };
    if family.iter().any(|t| t.f != first.f) {
        return Err(Error::precondition("traces in one family must share f"));
    }
    let mut basis = Basis { gf, rows: Vec::new() };
    let mut out = Vec::new();
    for t in family {
        if basis.insert(e_row(gf, t)) {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// Column count of E for |Z| = z.
pub fn row_width(z: usize) -> usize {
    if z == 0 {
        1
    } else {
        1 << (2 * z - 1)
    }
}
