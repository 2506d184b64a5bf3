//! `transita`: one binary over the solvers, oracles and generators. Every
//! run prints a single JSON report (or an instance, for `gen` without
//! `--out`) on standard output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use compath::{ComPath, HashMode};
use ftg_core::{
    bfs_dist, describe_violations, instance_digest, parse_decomposition, parse_instance, proper_coloring_transitions,
    serialize_instance, validate_transition_system, weights_or_unit, Decomposition, Endpoint, Error, Instance, Result,
    VertexId,
};
use genred::PsiInstance;
use oracle::Disjointness;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "transita", version, about = "Solvers for graphs with forbidden transitions")]
struct Cli {
    /// Exit with status 1 when a decision command answers no.
    #[arg(long, global = true)]
    strict_exit: bool,
    /// Worker threads; every solver is sequential, so results never depend on it.
    #[arg(long, global = true, env = "TRANSITA_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Shortest compatible path with at most K edges, by colour coding.
    Compath {
        #[arg(long)]
        instance: PathBuf,
        /// `v:ID`, `e:ID` or a bare vertex id.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = HashArg::Auto)]
        hash: HashArg,
    },
    /// Compatible path of length at most dist + slack.
    Detour {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        from: VertexId,
        #[arg(long)]
        to: VertexId,
        #[arg(long)]
        slack: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = HashArg::Auto)]
        hash: HashArg,
    },
    /// Vertex-disjoint compatible paths over a treecut decomposition.
    Comvdp {
        #[arg(long)]
        instance: PathBuf,
        /// Treecut decomposition; searched exhaustively when omitted.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// `s1,t1;s2,t2;…`; defaults to the instance terminals.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
    },
    /// Properly coloured Hamiltonian cycle over a tree decomposition.
    Pchc {
        #[arg(long)]
        instance: PathBuf,
        /// Tree decomposition; the vertex-order elimination is used when omitted.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::Rank)]
        engine: EngineArg,
        #[arg(long)]
        timeout_ms: Option<u64>,
        #[arg(long)]
        max_family: Option<usize>,
    },
    /// Two disjoint shortest compatible paths in a digraph.
    Dsp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// `s1,t1,s2,t2`; defaults to the instance terminals.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Seeded instance generators.
    Gen {
        /// Write the instance here and print a report instead of the instance.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Brute-force reference answers.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Checks an instance (and optionally a decomposition).
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Check the decomposition as a treecut decomposition (bags partition V).
        #[arg(long)]
        treecut: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    RandomFtg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Edge-coloured graph with the properly-coloured transition system.
    RandomColored {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        seed: u64,
    },
    RandomDigraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 3)]
        max_weight: i64,
        #[arg(long)]
        seed: u64,
    },
    PsiReduce {
        #[command(flatten)]
        psi: PsiArgs,
        /// Close the path into a cycle through the edge {s, t}.
        #[arg(long)]
        cycle: bool,
    },
    PsiReduceHam {
        #[command(flatten)]
        psi: PsiArgs,
    },
}

#[derive(clap::Args, Debug)]
struct PsiArgs {
    #[arg(long)]
    n_g: usize,
    #[arg(long)]
    n_h: usize,
    #[arg(long)]
    m_h: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Path {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    Detour {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        from: VertexId,
        #[arg(long)]
        to: VertexId,
        #[arg(long)]
        slack: usize,
    },
    Cycle {
        #[arg(long)]
        instance: PathBuf,
    },
    Hamiltonian {
        #[arg(long)]
        instance: PathBuf,
    },
    Vdp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pairs: Option<String>,
        /// Edge-disjoint instead of vertex-disjoint.
        #[arg(long)]
        edge: bool,
    },
    Pchc {
        #[arg(long)]
        instance: PathBuf,
    },
    Dsp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        pairs: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HashArg {
    Auto,
    Exhaustive,
    Deterministic,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Naive,
    Rank,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Edge,
    Vertex,
}

impl ModeArg {
    fn dsp(self) -> dsp::Mode {
        match self {
            ModeArg::Edge => dsp::Mode::Edge,
            ModeArg::Vertex => dsp::Mode::Vertex,
        }
    }

    fn oracle(self) -> Disjointness {
        match self {
            ModeArg::Edge => Disjointness::Edge,
            ModeArg::Vertex => Disjointness::Vertex,
        }
    }
}

fn hash_mode(h: HashArg, seed: u64) -> HashMode {
    match h {
        HashArg::Auto => HashMode::Auto { seed },
        HashArg::Exhaustive => HashMode::Exhaustive,
        HashArg::Deterministic => HashMode::Deterministic { seed },
        HashArg::Random => HashMode::Random { seed },
    }
}

/// What a run produced: exit status and the two output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn parse_endpoint(s: &str) -> Result<Endpoint> {
    let bad = || Error::invalid(format!("endpoint `{s}` is not `v:ID`, `e:ID` or an id"));
    let (kind, id) = s.split_once(':').unwrap_or(("v", s));
    let id: usize = id.trim().parse().map_err(|_| bad())?;
    match kind {
        "v" => Ok(Endpoint::Vertex(id)),
        "e" => Ok(Endpoint::Edge(id)),
        _ => Err(bad()),
    }
}

pub fn parse_pairs(s: &str) -> Result<Vec<(VertexId, VertexId)>> {
    let ids: Vec<usize> = s
        .split([',', ';'])
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| Error::invalid(format!("`{x}` is not a vertex id"))))
        .collect::<Result<_>>()?;
    if ids.len() % 2 != 0 {
        return Err(Error::invalid("pairs need an even number of vertex ids"));
    }
    Ok(ids.chunks(2).map(|c| (c[0], c[1])).collect())
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        other => other,
    })
}

fn load_decomposition(path: &Path) -> Result<Decomposition> {
    parse_decomposition(&read(path)?)
}

fn pairs_or_terminals(inst: &Instance, pairs: &Option<String>) -> Result<Vec<(VertexId, VertexId)>> {
    match pairs {
        Some(p) => parse_pairs(p),
        None => inst.terminals.clone().ok_or_else(|| Error::invalid("no --pairs given and the instance has no terminals")),
    }
}

fn two_pairs(p: Vec<(VertexId, VertexId)>) -> Result<[(VertexId, VertexId); 2]> {
    <[_; 2]>::try_from(p).map_err(|p| Error::invalid(format!("need exactly two terminal pairs, got {}", p.len())))
}

struct Report {
    command: &'static str,
    solver: &'static str,
    digest: Option<String>,
    seed: Option<u64>,
    answer: Value,
    fields: Map<String, Value>,
    stats: Map<String, Value>,
    /// Whether this is a decision answered "no".
    negative: bool,
}

impl Report {
    fn new(command: &'static str, solver: &'static str, inst: Option<&Instance>) -> Self {
        Report {
            command,
            solver,
            digest: inst.map(instance_digest),
            seed: None,
            answer: Value::Null,
            fields: Map::new(),
            stats: Map::new(),
            negative: false,
        }
    }

    fn decision(mut self, yes: bool) -> Self {
        self.answer = json!(yes);
        self.negative = !yes;
        self.fields.insert("yes".into(), json!(yes));
        self
    }

    fn field(mut self, k: &str, v: Value) -> Self {
        self.fields.insert(k.into(), v);
        self
    }

    fn stat(mut self, k: &str, v: Value) -> Self {
        self.stats.insert(k.into(), v);
        self
    }

    fn render(mut self, elapsed_ms: f64) -> Value {
        self.stats.insert("elapsed_ms".into(), json!(elapsed_ms));
        let mut m = self.fields;
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(self.command));
        m.insert("solver".into(), json!(self.solver));
        m.insert("digest".into(), json!(self.digest));
        m.insert("seed".into(), json!(self.seed));
        m.insert("answer".into(), self.answer);
        m.insert("stats".into(), Value::Object(self.stats));
        Value::Object(m)
    }
}

/// Either a report or raw bytes (an instance written to standard output).
enum Output {
    Report(Report),
    Raw(Vec<u8>),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::Parse { .. } | Error::Precondition(_) | Error::TooLarge(_) => 2,
        Error::BudgetExceeded(_) | Error::Internal(_) => 3,
    }
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text.into_bytes(), stderr: String::new() }
            } else {
                Outcome { code, stdout: Vec::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match run(cli.cmd) {
        Ok(Output::Raw(bytes)) => Outcome { code: 0, stdout: bytes, stderr: String::new() },
        Ok(Output::Report(r)) => {
            let code = if cli.strict_exit && r.negative { 1 } else { 0 };
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let mut stdout = serde_json::to_vec(&r.render(elapsed)).expect("report serialises");
            stdout.push(b'\n');
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: Vec::new(), stderr: format!("error: {e}\n") },
    }
}

fn walk_json(w: &ftg_core::Walk) -> Value {
    serde_json::to_value(w).expect("walk serialises")
}

fn run(cmd: Cmd) -> Result<Output> {
    let r = match cmd {
        Cmd::Compath { instance, from, to, max_len, seed, witness, hash } => {
            let inst = load(&instance)?;
            let (x, y) = (parse_endpoint(&from)?, parse_endpoint(&to)?);
            let seed = seed.unwrap_or(compath::DEFAULT_SEED);
            let res = ComPath::new(&inst.graph, &inst.transitions, hash_mode(hash, seed)).solve(x, y, max_len, witness)?;
            let mut r = Report::new("compath", "color-coding", Some(&inst))
                .field("length", json!(res.length))
                .field("family_size", json!(res.family_size))
                .stat("dp_runs", json!(res.dp_runs));
            if witness {
                r = r.field("witness", res.witness.as_ref().map_or(Value::Null, walk_json));
            }
            r.seed = Some(seed);
            r.answer = json!(res.length);
            r.negative = res.length.is_none();
            r
        }
        Cmd::Detour { instance, from, to, slack, seed, witness, hash } => {
            let inst = load(&instance)?;
            let seed = seed.unwrap_or(compath::DEFAULT_SEED);
            let res = detour::comdetour(&inst.graph, &inst.transitions, from, to, slack, hash_mode(hash, seed), witness)?;
            let mut r = Report::new("detour", "comdetour", Some(&inst))
                .decision(res.yes)
                .field("nu", json!(res.nu))
                .field("dist", json!(res.dist))
                .field("diagnostic", json!(res.diagnostic))
                .stat("subcalls", json!(res.subcalls));
            if witness {
                r = r.field("witness", res.witness.as_ref().map_or(Value::Null, walk_json));
            }
            r.seed = Some(seed);
            r
        }
        Cmd::Comvdp { instance, decomposition, pairs, max_width } => {
            let inst = load(&instance)?;
            let pairs = pairs_or_terminals(&inst, &pairs)?;
            let dec = match decomposition {
                Some(p) => load_decomposition(&p)?,
                None => treecut::exhaustive_treecut_decomposition(&inst.graph, max_width)?
                    .ok_or_else(|| Error::precondition(format!("no treecut decomposition of width at most {max_width}")))?
                    .0,
            };
            let res = treecut::comvdp(&inst.graph, &inst.transitions, &pairs, &dec)?;
            Report::new("comvdp", "treecut-dp", Some(&inst))
                .decision(res.yes)
                .field("width", json!(res.width))
                .field("nice", json!(res.nice))
                .stat("nodes", json!(res.nodes))
                .stat("max_records", json!(res.max_records))
                .stat("max_bold_children", json!(res.max_bold_children))
                .stat("max_unmatched", json!(res.max_unmatched))
        }
        Cmd::Pchc { instance, decomposition, engine, timeout_ms, max_family } => {
            let inst = load(&instance)?;
            let colors = inst.colors.clone().ok_or_else(|| Error::invalid("pchc needs an edge-coloured instance"))?;
            let dec = match decomposition {
                Some(p) => load_decomposition(&p)?,
                None => pchc::decomposition_from_order(&inst.graph, &(0..inst.graph.n()).collect::<Vec<_>>())?,
            };
            let opts = pchc::Options {
                deadline: timeout_ms.map(|ms| Instant::now() + std::time::Duration::from_millis(ms)),
                max_family,
            };
            let (engine, solver) = match engine {
                EngineArg::Naive => (pchc::Engine::Naive, "pchc-naive"),
                EngineArg::Rank => (pchc::Engine::Rank, "pchc-rank"),
            };
            let res = pchc::pchc(&inst.graph, &colors, &dec, engine, &opts)?;
            Report::new("pchc", solver, Some(&inst))
                .decision(res.yes)
                .field("max_family", json!(res.max_family))
                .field("field_a", json!(res.field_a))
                .stat("steps", json!(res.steps))
                .stat("total_states", json!(res.total_states))
                .stat("treewidth", json!(dec.treewidth()))
        }
        Cmd::Dsp { instance, mode, pairs } => {
            let inst = load(&instance)?;
            let pairs = two_pairs(pairs_or_terminals(&inst, &pairs)?)?;
            let w = weights_or_unit(&inst);
            let res = dsp::solve_2dspp(&inst.graph, &inst.transitions, &w, pairs, mode.dsp())?;
            let stats = serde_json::to_value(&res.stats).expect("stats serialise");
            let mut r = Report::new("dsp", "dsp-product", Some(&inst))
                .decision(res.yes)
                .field("paths", res.paths.as_ref().map_or(Value::Null, |p| json!([walk_json(&p[0]), walk_json(&p[1])])))
                .field("warnings", json!(res.warnings));
            if let Value::Object(m) = stats {
                r.stats.extend(m);
            }
            r
        }
        Cmd::Gen { out, what } => return generate(out, what),
        Cmd::Oracle { what } => run_oracle(what)?,
        Cmd::Validate { instance, decomposition, treecut } => {
            let inst = load(&instance)?;
            let violations = describe_violations(&validate_transition_system(&inst.graph, &inst.transitions));
            let dec_error = match decomposition {
                None => None,
                Some(p) => {
                    let d = load_decomposition(&p)?;
                    let check = if treecut { d.check_partition(&inst.graph) } else { d.check_tree_decomposition(&inst.graph) };
                    Some(check.err().map(|e| e.to_string()))
                }
            };
            let ok = violations.is_empty() && !matches!(dec_error, Some(Some(_)));
            let mut r = Report::new("validate", "validate", Some(&inst)).decision(ok).field("violations", json!(violations));
            if let Some(err) = dec_error {
                r = r.field("decomposition_error", json!(err));
            }
            r
        }
    };
    Ok(Output::Report(r))
}

fn run_oracle(what: OracleCmd) -> Result<Report> {
    Ok(match what {
        OracleCmd::Path { instance, from, to, max_len } => {
            let inst = load(&instance)?;
            let (x, y) = (parse_endpoint(&from)?, parse_endpoint(&to)?);
            let w = oracle::brute_compatible_path_witness(&inst.graph, &inst.transitions, x, y, max_len)?;
            let mut r = Report::new("oracle", "brute-path", Some(&inst))
                .field("length", json!(w.as_ref().map(|w| w.len())))
                .field("witness", w.as_ref().map_or(Value::Null, walk_json));
            r.answer = json!(w.as_ref().map(|w| w.len()));
            r.negative = w.is_none();
            r
        }
        OracleCmd::Detour { instance, from, to, slack } => {
            let inst = load(&instance)?;
            if inst.graph.is_directed() {
                return Err(Error::invalid("detours are defined for undirected graphs"));
            }
            if from >= inst.graph.n() || to >= inst.graph.n() {
                return Err(Error::invalid("terminal out of range"));
            }
            let dist = bfs_dist(&inst.graph, from)[to];
            let nu = match dist {
                Some(d) => oracle::brute_compatible_path(
                    &inst.graph,
                    &inst.transitions,
                    Endpoint::Vertex(from),
                    Endpoint::Vertex(to),
                    Some(d as usize + slack),
                )?,
                None => None,
            };
            Report::new("oracle", "brute-detour", Some(&inst)).decision(nu.is_some()).field("nu", json!(nu)).field("dist", json!(dist))
        }
        OracleCmd::Cycle { instance } => {
            let inst = load(&instance)?;
            let w = oracle::brute_compatible_cycle(&inst.graph, &inst.transitions)?;
            Report::new("oracle", "brute-cycle", Some(&inst))
                .decision(w.is_some())
                .field("witness", w.as_ref().map_or(Value::Null, walk_json))
        }
        OracleCmd::Hamiltonian { instance } => {
            let inst = load(&instance)?;
            let w = oracle::brute_compatible_hamiltonian_cycle(&inst.graph, &inst.transitions)?;
            Report::new("oracle", "brute-hamiltonian", Some(&inst))
                .decision(w.is_some())
                .field("witness", w.as_ref().map_or(Value::Null, walk_json))
        }
        OracleCmd::Vdp { instance, pairs, edge } => {
            let inst = load(&instance)?;
            let pairs = pairs_or_terminals(&inst, &pairs)?;
            let mode = if edge { Disjointness::Edge } else { Disjointness::Vertex };
            let yes = oracle::brute_disjoint_paths(&inst.graph, &inst.transitions, &pairs, mode)?;
            Report::new("oracle", "brute-disjoint-paths", Some(&inst)).decision(yes)
        }
        OracleCmd::Pchc { instance } => {
            let inst = load(&instance)?;
            let colors = inst.colors.clone().ok_or_else(|| Error::invalid("pchc needs an edge-coloured instance"))?;
            let yes = oracle::brute_pchc(&inst.graph, &colors)?;
            Report::new("oracle", "brute-pchc", Some(&inst)).decision(yes)
        }
        OracleCmd::Dsp { instance, mode, pairs } => {
            let inst = load(&instance)?;
            let pairs = two_pairs(pairs_or_terminals(&inst, &pairs)?)?;
            let w = weights_or_unit(&inst);
            let yes = oracle::brute_2dspp(&inst.graph, &inst.transitions, &w, pairs, mode.oracle())?;
            Report::new("oracle", "brute-2dspp", Some(&inst)).decision(yes)
        }
    })
}

fn psi(a: &PsiArgs) -> Result<PsiInstance> {
    PsiInstance::random(a.n_g, a.n_h, a.m_h, a.p, a.seed)
}

fn generate(out: Option<PathBuf>, what: GenCmd) -> Result<Output> {
    let (inst, seed, kind) = match what {
        GenCmd::RandomFtg { n, p, q, seed } => {
            let (g, t) = genred::gen_random_ftg(n, p, q, seed)?;
            (Instance::new(g, t), seed, "random-ftg")
        }
        GenCmd::RandomColored { n, p, colors, seed } => {
            let (g, c) = genred::gen_random_edge_colored(n, p, colors, seed)?;
            let mut inst = Instance::new(g.clone(), proper_coloring_transitions(&g, &c));
            inst.colors = Some(c);
            (inst, seed, "random-colored")
        }
        GenCmd::RandomDigraph { n, p, q, max_weight, seed } => {
            (genred::gen_random_digraph(n, p, q, max_weight, seed)?, seed, "random-digraph")
        }
        GenCmd::PsiReduce { psi: a, cycle } => {
            let p = psi(&a)?;
            if cycle {
                let c = genred::psi_reduction_cycle(&p)?;
                c.reduction.check_structure()?;
                (c.reduction.instance(), a.seed, "psi-reduce-cycle")
            } else {
                let r = genred::psi_reduction(&p)?;
                r.check_structure()?;
                (r.instance(), a.seed, "psi-reduce")
            }
        }
        GenCmd::PsiReduceHam { psi: a } => {
            let h = genred::hamiltonian_reduction(&psi(&a)?)?;
            h.check_structure()?;
            let mut inst = h.reduction.instance();
            inst.terminals = None;
            (inst, a.seed, "psi-reduce-ham")
        }
    };
    let mut bytes = serialize_instance(&inst);
    bytes.push(b'\n');
    let Some(path) = out else { return Ok(Output::Raw(bytes)) };
    std::fs::write(&path, &bytes).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    let mut r = Report::new("gen", kind, Some(&inst))
        .field("path", json!(path.display().to_string()))
        .stat("n", json!(inst.graph.n()))
        .stat("m", json!(inst.graph.m()));
    r.seed = Some(seed);
    r.answer = json!(true);
    Ok(Output::Report(r))
}
