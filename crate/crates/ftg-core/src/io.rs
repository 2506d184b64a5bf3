use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decomposition::Decomposition;
use crate::dist::Weight;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::transitions::{validate_transition_system, EdgeColoring, Transitions, Violation};

/// A forbidden-transition graph together with the optional data a solver may need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub transitions: Transitions,
    pub weights: Option<Vec<Weight>>,
    pub colors: Option<EdgeColoring>,
    pub terminals: Option<Vec<(VertexId, VertexId)>>,
}

impl Instance {
    pub fn new(graph: Graph, transitions: Transitions) -> Self {
        Instance { graph, transitions, weights: None, colors: None, terminals: None }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    directed: bool,
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<RawWeight>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<u32>>,
    transitions: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terminals: Option<Vec<[usize; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Int(i64),
    Float(f64),
    Rational([String; 2]),
}

fn weight_from_raw(w: &RawWeight, i: usize) -> Result<Weight> {
    let loc = || format!("weights[{i}]");
    let x = match w {
        RawWeight::Int(v) => Weight::from_integer(*v as i128),
        RawWeight::Float(f) => {
            if !f.is_finite() {
                return Err(Error::parse(loc(), "weight must be finite"));
            }
            let r = num_rational::Ratio::<i64>::approximate_float(*f)
                .ok_or_else(|| Error::parse(loc(), "weight not representable"))?;
            Weight::new(*r.numer() as i128, *r.denom() as i128)
        }
        RawWeight::Rational([p, q]) => {
            let p: i128 = p.trim().parse().map_err(|_| Error::parse(loc(), "bad numerator"))?;
            let q: i128 = q.trim().parse().map_err(|_| Error::parse(loc(), "bad denominator"))?;
            if q == 0 {
                return Err(Error::parse(loc(), "zero denominator"));
            }
            Weight::new(p, q)
        }
    };
    if x.is_negative() {
        return Err(Error::parse(loc(), "weights must be nonnegative"));
    }
    Ok(x)
}

fn weight_to_raw(w: &Weight) -> RawWeight {
    if w.is_integer() {
        if let Some(v) = w.to_integer().to_i64() {
            return RawWeight::Int(v);
        }
    }
    RawWeight::Rational([w.numer().to_string(), w.denom().to_string()])
}

fn from_json<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::parse(format!("line {} column {} (field {})", inner.line(), inner.column(), path), inner.to_string())
    })
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let raw: RawInstance = from_json(bytes)?;
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let graph = Graph::new(raw.n, raw.directed, edges).map_err(|e| Error::parse("edges", e.to_string()))?;
    let m = graph.m();
    let mut transitions = Transitions::new();
    for (i, p) in raw.transitions.iter().enumerate() {
        if p[0] >= m || p[1] >= m {
            return Err(Error::parse(format!("transitions[{i}]"), format!("edge id out of range (m={m})")));
        }
        let single = Transitions::from_pairs([(p[0], p[1])]);
        if let Some(v) = validate_transition_system(&graph, &single).first() {
            return Err(Error::parse(format!("transitions[{i}]"), format!("{v:?}")));
        }
        transitions.insert(p[0], p[1]);
    }
    let weights = match &raw.weights {
        None => None,
        Some(ws) => {
            if ws.len() != m {
                return Err(Error::parse("weights", format!("expected {m} weights, found {}", ws.len())));
            }
            Some(ws.iter().enumerate().map(|(i, w)| weight_from_raw(w, i)).collect::<Result<Vec<_>>>()?)
        }
    };
    let colors = match &raw.colors {
        None => None,
        Some(cs) => {
            if cs.len() != m {
                return Err(Error::parse("colors", format!("expected {m} colors, found {}", cs.len())));
            }
            if let Some(i) = cs.iter().position(|&c| c == 0) {
                return Err(Error::parse(format!("colors[{i}]"), "colors start at 1"));
            }
            Some(EdgeColoring::new(cs.clone()))
        }
    };
    let terminals = match &raw.terminals {
        None => None,
        Some(ts) => {
            for (i, p) in ts.iter().enumerate() {
                if p[0] >= raw.n || p[1] >= raw.n {
                    return Err(Error::parse(format!("terminals[{i}]"), "vertex out of range"));
                }
            }
            Some(ts.iter().map(|p| (p[0], p[1])).collect())
        }
    };
    Ok(Instance { graph, transitions, weights, colors, terminals })
}

/// Canonical serialisation: fixed field order, transitions sorted.
pub fn serialize_instance(inst: &Instance) -> Vec<u8> {
    let raw = RawInstance {
        directed: inst.graph.is_directed(),
        n: inst.graph.n(),
        edges: inst.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        weights: inst.weights.as_ref().map(|ws| ws.iter().map(weight_to_raw).collect()),
        colors: inst.colors.as_ref().map(|c| c.colors.clone()),
        transitions: inst.transitions.pairs().map(|(e, f)| [e, f]).collect(),
        terminals: inst.terminals.as_ref().map(|ts| ts.iter().map(|&(a, b)| [a, b]).collect()),
    };
    serde_json::to_vec(&raw).expect("instance serialises")
}

/// Hex SHA-256 of the canonical serialisation.
pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn instance_digest(inst: &Instance) -> String {
    digest_bytes(&serialize_instance(inst))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDecomposition {
    root: usize,
    tree_edges: Vec<[usize; 2]>,
    bags: Vec<Vec<usize>>,
}

pub fn parse_decomposition(bytes: &[u8]) -> Result<Decomposition> {
    let raw: RawDecomposition = from_json(bytes)?;
    let edges: Vec<(usize, usize)> = raw.tree_edges.iter().map(|e| (e[0], e[1])).collect();
    Decomposition::from_tree(raw.root, &edges, raw.bags).map_err(|e| Error::parse("tree_edges", e.to_string()))
}

pub fn serialize_decomposition(d: &Decomposition) -> Vec<u8> {
    let mut tree_edges = Vec::new();
    for t in 0..d.len() {
        if let Some(p) = d.parent(t) {
            tree_edges.push([p, t]);
        }
    }
    let raw = RawDecomposition { root: d.root(), tree_edges, bags: d.bags().to_vec() };
    serde_json::to_vec(&raw).expect("decomposition serialises")
}

/// Violations rendered for reports.
pub fn describe_violations(v: &[Violation]) -> Vec<String> {
    v.iter().map(|x| format!("{x:?}")).collect()
}

pub fn weights_or_unit(inst: &Instance) -> Vec<Weight> {
    inst.weights.clone().unwrap_or_else(|| vec![Weight::from_integer(1); inst.graph.m()])
}

