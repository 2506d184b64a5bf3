use compath::HashMode;
use detour::{comdetour, zero_detour_path, Layers};
use ftg_core::{bfs_dist, is_compatible_walk, Endpoint, Graph, Transitions};
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

fn check(g: &Graph, t: &Transitions, s: usize, y: usize, k: usize) {
    let Some(d) = bfs_dist(g, s)[y] else { return };
    let d = d as usize;
    let want = brute_compatible_path(g, t, Endpoint::Vertex(s), Endpoint::Vertex(y), Some(d + k)).unwrap();
    let got = comdetour(g, t, s, y, k, HashMode::Auto { seed: 9 }, true).unwrap();
    assert_eq!(got.nu, want, "s={s} y={y} k={k} edges={:?} t={:?}", g.edges(), t.pairs().collect::<Vec<_>>());
    assert_eq!(got.yes, want.is_some());
    if let Some(w) = got.witness {
        assert!(w.is_path());
        assert!(is_compatible_walk(g, t, &w).unwrap());
        assert_eq!((w.first(), w.last(), w.len()), (s, y, want.unwrap()));
        let (a, b) = Layers::new(g, s).profile(&w);
        assert_eq!(w.len(), d + a + 2 * b);
        assert!(a + b <= k);
    }
}

#[test]
fn small_random_instances_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(2..=10);
        let (g, t) = random_instance(&mut rng, n, 0.35, 0.7);
        let s = rng.gen_range(0..n);
        let y = (s + rng.gen_range(1..n)) % n;
        for k in 0..=3 {
            check(&g, &t, s, y, k);
        }
    }
}

#[test]
fn sparse_long_instances_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..60 {
        let n = rng.gen_range(12..=22);
        let (g, t) = random_instance(&mut rng, n, 2.6 / n as f64, 0.75);
        let s = 0;
        let Some((y, _)) = bfs_dist(&g, s).iter().enumerate().filter_map(|(v, d)| d.map(|d| (v, d))).max_by_key(|x| x.1) else {
            continue;
        };
        if y == s {
            continue;
        }
        for k in 0..=2 {
            check(&g, &t, s, y, k);
        }
    }
}

#[test]
fn zero_detour_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..400 {
        let n = rng.gen_range(2..=10);
        let (g, t) = random_instance(&mut rng, n, 0.35, 0.6);
        let s = rng.gen_range(0..n);
        let y = (s + rng.gen_range(1..n)) % n;
        let Some(d) = bfs_dist(&g, s)[y] else { continue };
        let want = brute_compatible_path(&g, &t, Endpoint::Vertex(s), Endpoint::Vertex(y), Some(d as usize)).unwrap();
        assert_eq!(zero_detour_path(&g, &t, s, y), want);
    }
}

#[test]
fn rejects_equal_terminals() {
    let g = Graph::undirected(2, vec![(0, 1)]).unwrap();
    let t = Transitions::all_permitted(&g);
    assert!(comdetour(&g, &t, 1, 1, 0, HashMode::Auto { seed: 1 }, false).is_err());
}
