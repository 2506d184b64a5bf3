use dsp::*;
use ftg_core::{is_compatible_walk, Endpoint, Graph, Transitions, Walk, Weight};
use oracle::{brute_compatible_path, brute_disjoint_paths, Disjointness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((order[i], order[j]));
                if rng.gen_bool(0.1) {
                    arcs.push((order[i], order[j]));
                }
            }
        }
    }
    Graph::directed(n, arcs).unwrap()
}

fn random_transitions(rng: &mut ChaCha8Rng, g: &Graph, q: f64) -> Transitions {
    Transitions::from_pairs(Transitions::all_permitted(g).pairs().filter(|_| rng.gen_bool(q)).collect::<Vec<_>>())
}

fn unit(g: &Graph) -> Vec<Weight> {
    vec![Weight::from_integer(1); g.m()]
}

#[test]
fn shortest_edge_set_examples() {
    let path = Graph::directed(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(shortest_edge_sets(&path, &unit(&path), 0, 3).unwrap().ids(), vec![0, 1, 2]);

    // Diamond with two routes of length 2 and a detour of length 3.
    let g = Graph::directed(5, vec![(0, 1), (1, 3), (0, 2), (2, 3), (0, 4), (4, 2)]).unwrap();
    let mut w = unit(&g);
    w[4] = Weight::from_integer(2);
    let e = shortest_edge_sets(&g, &w, 0, 3).unwrap();
    assert_eq!(e.ids(), vec![0, 1, 2, 3]);
    assert!(e.tight[5] || !e.edges[5]);

    let cut = Graph::directed(3, vec![(0, 1), (2, 1)]).unwrap();
    let e = shortest_edge_sets(&cut, &unit(&cut), 0, 2).unwrap();
    assert!(e.is_empty());
    assert_eq!(e.warnings.len(), 1);
}

#[test]
fn shortest_edge_set_preconditions() {
    let c = Graph::directed(2, vec![(0, 1), (1, 0)]).unwrap();
    let zero = vec![Weight::from_integer(0); 2];
    assert!(matches!(shortest_edge_sets(&c, &zero, 0, 1), Err(ftg_core::Error::Precondition(_))));
    let neg = vec![Weight::from_integer(-1), Weight::from_integer(2)];
    assert!(shortest_edge_sets(&c, &neg, 0, 1).is_err());
    let mixed = vec![Weight::from_integer(0), Weight::from_integer(1)];
    assert_eq!(shortest_edge_sets(&c, &mixed, 0, 1).unwrap().ids(), vec![0]);
}

/// Every shortest path, enumerated directly, lies inside E and covers it.
#[test]
fn shortest_edge_sets_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(2..=8);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(0.3) {
                    arcs.push((u, v));
                }
            }
        }
        let g = Graph::directed(n, arcs).unwrap();
        let w: Vec<Weight> = (0..g.m()).map(|_| Weight::from_integer(rng.gen_range(1..=3))).collect();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let got = shortest_edge_sets(&g, &w, s, t).unwrap();
        let all = Transitions::all_permitted(&g);
        let paths = oracle::shortest_compatible_paths(&g, &all, &w, s, t).unwrap();
        let mut want = vec![false; g.m()];
        for p in &paths {
            for &e in &p.edges {
                want[e] = true;
            }
        }
        assert_eq!(got.edges, want);
    }
}

#[test]
fn compatible_path_examples() {
    let single = Graph::directed(2, vec![(0, 1)]).unwrap();
    assert_eq!(dag_compatible_path(&single, &Transitions::new(), 0, 1).unwrap(), Some(vec![0]));
    let two = Graph::directed(3, vec![(0, 1), (1, 2)]).unwrap();
    assert_eq!(dag_compatible_path(&two, &Transitions::new(), 0, 2).unwrap(), None);
    assert_eq!(dag_compatible_path(&two, &Transitions::from_pairs([(0, 1)]), 0, 2).unwrap(), Some(vec![0, 1]));
    assert_eq!(dag_compatible_path(&two, &Transitions::new(), 1, 1).unwrap(), Some(vec![]));
    let cyc = Graph::directed(2, vec![(0, 1), (1, 0)]).unwrap();
    assert!(dag_compatible_path(&cyc, &Transitions::new(), 0, 1).is_err());
}

#[test]
fn compatible_paths_match_dfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut yes = 0;
    for _ in 0..1500 {
        let n = rng.gen_range(2..=10);
        let x = rng.gen_range(0.2..0.7);
        let g = random_dag(&mut rng, n, x);
        let x = rng.gen_range(0.2..1.0);
        let t = random_transitions(&mut rng, &g, x);
        let (s, e) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let want = brute_compatible_path(&g, &t, Endpoint::Vertex(s), Endpoint::Vertex(e), None).unwrap().is_some();
        let got = dag_compatible_path(&g, &t, s, e).unwrap();
        assert_eq!(got.is_some(), want);
        if let Some(p) = got {
            let w = Walk::from_edges(&g, s, &p).unwrap();
            assert!(w.is_path() && w.last() == e && is_compatible_walk(&g, &t, &w).unwrap());
            yes += 1;
        }
    }
    assert!(yes > 300, "{yes}");
}

#[test]
fn two_path_examples() {
    // Two parallel tracks 0→1→2 and 3→4→5.
    let tracks = Graph::directed(6, vec![(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    let all = Transitions::all_permitted(&tracks);
    assert!(dag_two_edge_disjoint(&tracks, &all, 0, 2, 3, 5).unwrap().is_some());
    assert!(dag_two_vertex_disjoint(&tracks, &all, 0, 2, 3, 5).unwrap().is_some());

    // Both routes must use the bridge 2→3.
    let bridge = Graph::directed(6, vec![(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
    let all = Transitions::all_permitted(&bridge);
    assert!(dag_two_edge_disjoint(&bridge, &all, 0, 4, 1, 5).unwrap().is_none());
    assert!(dag_two_vertex_disjoint(&bridge, &all, 0, 4, 1, 5).unwrap().is_none());

    // A shared midpoint vertex with separate arcs.
    let mid = Graph::directed(5, vec![(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
    let all = Transitions::all_permitted(&mid);
    assert!(dag_two_edge_disjoint(&mid, &all, 0, 3, 1, 4).unwrap().is_some());
    assert!(dag_two_vertex_disjoint(&mid, &all, 0, 3, 1, 4).unwrap().is_none());
    // Only the crossing transitions remain.
    let crossed = Transitions::from_pairs([(0, 3), (1, 2)]);
    let (p, q) = dag_two_edge_disjoint(&mid, &crossed, 0, 4, 1, 3).unwrap().unwrap();
    assert_eq!((p, q), (vec![0, 3], vec![1, 2]));
    assert!(dag_two_edge_disjoint(&mid, &crossed, 0, 3, 1, 4).unwrap().is_none());
    let tracks_blocked = Transitions::from_pairs([(0, 1)]);
    assert!(dag_two_edge_disjoint(&tracks, &tracks_blocked, 0, 2, 3, 5).unwrap().is_none());
}

#[test]
fn two_paths_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut yes = [0, 0];
    for i in 0..2000 {
        let n = rng.gen_range(4..=9);
        let x = rng.gen_range(0.3..0.8);
        let g = random_dag(&mut rng, n, x);
        let x = rng.gen_range(0.4..1.0);
        let t = random_transitions(&mut rng, &g, x);
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(&mut rng);
        let (s1, t1) = (v[0], v[1]);
        let (s2, t2) = if rng.gen_bool(0.3) { (v[rng.gen_range(0..4)], v[rng.gen_range(1..4)]) } else { (v[2], v[3]) };
        if s2 == t2 {
            continue;
        }
        for (k, mode) in [Disjointness::Edge, Disjointness::Vertex].into_iter().enumerate() {
            let want = brute_disjoint_paths(&g, &t, &[(s1, t1), (s2, t2)], mode).unwrap();
            let got = match mode {
                Disjointness::Edge => dag_two_edge_disjoint(&g, &t, s1, t1, s2, t2).unwrap(),
                Disjointness::Vertex => dag_two_vertex_disjoint(&g, &t, s1, t1, s2, t2).unwrap(),
            };
            assert_eq!(got.is_some(), want, "case {i} {mode:?}: {:?} T={:?} ({s1},{t1}) ({s2},{t2})", g.edges(), t);
            yes[k] += usize::from(want);
        }
    }
    assert!(yes[0] > 200 && yes[1] > 100, "{yes:?}");
}
