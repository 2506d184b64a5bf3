use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ftg_core::{EdgeColoring, Error, Graph, Instance, Result, Transitions, Weight};

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64, directed: bool) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if (directed && u != v || !directed && u < v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, directed, edges)
}

fn thin(rng: &mut ChaCha8Rng, g: &Graph, q: f64) -> Transitions {
    Transitions::from_pairs(Transitions::all_permitted(g).pairs().filter(|_| rng.gen_bool(q)).collect::<Vec<_>>())
}

/// G(n, p) with every potential transition kept independently with probability `q`.
pub fn gen_random_ftg(n: usize, p_edge: f64, q_transition: f64, seed: u64) -> Result<(Graph, Transitions)> {
    check_prob("edge probability", p_edge)?;
    check_prob("transition probability", q_transition)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gnp(&mut rng, n, p_edge, false)?;
    let t = thin(&mut rng, &g, q_transition);
    Ok((g, t))
}

/// Directed G(n, p) with integer arc lengths in `1..=max_weight`.
pub fn gen_random_digraph(n: usize, p_edge: f64, q_transition: f64, max_weight: i64, seed: u64) -> Result<Instance> {
    check_prob("edge probability", p_edge)?;
    check_prob("transition probability", q_transition)?;
    if max_weight < 1 {
        return Err(Error::invalid("maximum weight must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gnp(&mut rng, n, p_edge, true)?;
    let t = thin(&mut rng, &g, q_transition);
    let w = (0..g.m()).map(|_| Weight::from_integer(rng.gen_range(1..=max_weight) as i128)).collect();
    let mut inst = Instance::new(g, t);
    inst.weights = Some(w);
    Ok(inst)
}

/// G(n, p) with uniform colours in `1..=l`.
pub fn gen_random_edge_colored(n: usize, p: f64, l: u32, seed: u64) -> Result<(Graph, EdgeColoring)> {
    check_prob("edge probability", p)?;
    if l == 0 {
        return Err(Error::invalid("need at least one colour"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gnp(&mut rng, n, p, false)?;
    let colors = (0..g.m()).map(|_| rng.gen_range(1..=l)).collect();
    Ok((g, EdgeColoring::with_palette(colors, l)))
}
