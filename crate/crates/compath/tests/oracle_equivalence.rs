use compath::{ComPath, HashMode};
use ftg_core::{Endpoint, Graph, Transitions};
use oracle::brute_compatible_path;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, n: usize, p: f64, q: f64) -> (Graph, Transitions) {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::undirected(n, edges).unwrap();
    let all = Transitions::all_permitted(&g);
    let t = Transitions::from_pairs(all.pairs().filter(|_| rng.gen_bool(q)));
    (g, t)
}

#[test]
fn vertex_endpoints_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(2..=8);
        let (g, t) = random_instance(&mut rng, n, 0.45, 0.6);
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        let cp = ComPath::new(&g, &t, HashMode::Auto { seed: 3 });
        for k in 0..=7 {
            let want = brute_compatible_path(&g, &t, Endpoint::Vertex(x), Endpoint::Vertex(y), Some(k)).unwrap();
            let got = cp.solve(Endpoint::Vertex(x), Endpoint::Vertex(y), k, true).unwrap();
            assert_eq!(got.length, want, "n={n} x={x} y={y} k={k} edges={:?}", g.edges());
            if let Some(w) = got.witness {
                assert!(w.is_path());
                assert!(ftg_core::is_compatible_walk(&g, &t, &w).unwrap());
                assert_eq!(w.len(), want.unwrap());
                assert_eq!((w.first(), w.last()), (x, y));
            }
        }
    }
}

#[test]
fn edge_endpoints_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(2..=8);
        let (g, t) = random_instance(&mut rng, n, 0.5, 0.6);
        if g.m() == 0 {
            continue;
        }
        checked += 1;
        let e = rng.gen_range(0..g.m());
        let y = if rng.gen_bool(0.5) { Endpoint::Vertex(rng.gen_range(0..n)) } else { Endpoint::Edge(rng.gen_range(0..g.m())) };
        let x = if rng.gen_bool(0.5) { Endpoint::Edge(e) } else { Endpoint::Vertex(rng.gen_range(0..n)) };
        let cp = ComPath::new(&g, &t, HashMode::Auto { seed: 4 });
        for k in 0..=7 {
            let want = brute_compatible_path(&g, &t, x, y, Some(k)).unwrap();
            let got = cp.solve(x, y, k, true).unwrap();
            assert_eq!(got.length, want, "x={x:?} y={y:?} k={k} edges={:?}", g.edges());
        }
    }
}
