use compath::compath;
use ftg_core::{is_compatible_closed_walk, is_compatible_walk, validate_transition_system, Endpoint, Graph};
use genred::*;
use oracle::{brute_compatible_cycle, brute_compatible_hamiltonian_cycle, brute_compatible_path_witness, brute_psi};
use proptest::prelude::*;

fn k2() -> Graph {
    Graph::undirected(2, vec![(0, 1)]).unwrap()
}

fn path_exists(r: &ReductionOutput) -> Option<ftg_core::Walk> {
    let t = r.transitions();
    brute_compatible_path_witness(&r.graph, &t, Endpoint::Vertex(r.s), Endpoint::Vertex(r.t), None).unwrap()
}

#[test]
fn rejects_invalid_instances() {
    let h = k2();
    assert!(PsiInstance::new(k2(), h.clone(), vec![0, 0]).is_err());
    assert!(PsiInstance::new(k2(), h.clone(), vec![0]).is_err());
    assert!(PsiInstance::new(k2(), h.clone(), vec![0, 2]).is_err());
    let lonely = Graph::undirected(3, vec![(0, 1)]).unwrap();
    assert!(PsiInstance::new(k2(), lonely, vec![0, 1]).is_err());
    assert!(PsiInstance::new(Graph::directed(2, vec![(0, 1)]).unwrap(), h, vec![0, 1]).is_err());
}

#[test]
fn single_edge_yes_instance() {
    let psi = PsiInstance::new(k2(), k2(), vec![0, 1]).unwrap();
    assert!(brute_psi(&psi.g, &psi.h, &psi.col).unwrap());
    let r = psi_reduction(&psi).unwrap();
    r.check_structure().unwrap();
    assert!(validate_transition_system(&r.graph, &r.transitions()).is_empty());
    assert_eq!(r.segments.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![5, 5]);
    assert_eq!(r.x, vec![vec![r.path[2]], vec![r.path[7]]]);
    assert_eq!((r.pre[0], r.post[0]), (Some(r.path[1]), Some(r.path[3])));
    assert_eq!(r.modulator().len(), 5);
    assert!(!r.is_explicit(r.s) && !r.is_explicit(r.t) && !r.is_explicit(r.t1));
    assert!(r.is_explicit(r.y[0]) && r.is_explicit(r.z[0][1]) && !r.is_explicit(r.z[0][0]));

    let t = r.transitions();
    let k = r.graph.n() - 1;
    let found = compath(&r.graph, &t, Endpoint::Vertex(r.s), Endpoint::Vertex(r.t), k).unwrap();
    let brute = path_exists(&r).expect("reduction of a yes-instance has a path");
    assert!(is_compatible_walk(&r.graph, &t, &brute).unwrap());
    assert_eq!(found, Some(brute.len()));
    // s, five vertices per P^i outside the gadgets, y, z, t.
    assert_eq!(brute.len(), 15);
}

#[test]
fn isolated_vertices_give_no() {
    let g = Graph::undirected(2, vec![]).unwrap();
    let psi = PsiInstance::new(g, k2(), vec![0, 1]).unwrap();
    assert!(!brute_psi(&psi.g, &psi.h, &psi.col).unwrap());
    let r = psi_reduction(&psi).unwrap();
    r.check_structure().unwrap();
    assert_eq!(r.pre, vec![None, None]);
    let t = r.transitions();
    let k = r.graph.n() - 1;
    assert_eq!(compath(&r.graph, &t, Endpoint::Vertex(r.s), Endpoint::Vertex(r.t), k).unwrap(), None);
    assert!(path_exists(&r).is_none());
    let c = psi_reduction_cycle(&psi).unwrap();
    assert!(brute_compatible_cycle(&c.reduction.graph, &c.reduction.transitions()).unwrap().is_none());
}

#[test]
fn triangle_pattern() {
    // H = triangle, G = a rainbow triangle plus a decoy edge.
    let h = Graph::undirected(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let g = Graph::undirected(4, vec![(0, 1), (1, 2), (0, 2), (3, 1)]).unwrap();
    let psi = PsiInstance::new(g, h.clone(), vec![0, 1, 2, 0]).unwrap();
    let r = psi_reduction(&psi).unwrap();
    r.check_structure().unwrap();
    assert!(path_exists(&r).is_some());
    let g = Graph::undirected(4, vec![(0, 1), (1, 2), (3, 2)]).unwrap();
    let psi = PsiInstance::new(g, h, vec![0, 1, 2, 0]).unwrap();
    assert!(!brute_psi(&psi.g, &psi.h, &psi.col).unwrap());
    assert!(path_exists(&psi_reduction(&psi).unwrap()).is_none());
}

#[test]
fn path_reduction_matches_brute_force() {
    let mut yes = 0;
    for seed in 0..200u64 {
        let m_h = 1 + seed as usize % 3;
        let n_h = if m_h == 1 { 2 } else { 3 + (seed as usize / 3) % 2 };
        let n_g = 2 + (seed as usize / 7) % 5;
        let psi = PsiInstance::random(n_g, n_h, m_h, 0.6, seed).unwrap();
        let want = brute_psi(&psi.g, &psi.h, &psi.col).unwrap();
        let r = psi_reduction(&psi).unwrap();
        r.check_structure().unwrap();
        let got = path_exists(&r);
        if let Some(w) = &got {
            assert!(is_compatible_walk(&r.graph, &r.transitions(), w).unwrap());
        }
        assert_eq!(got.is_some(), want, "seed {seed}: G={:?} col={:?} H={:?}", psi.g.edges(), psi.col, psi.h.edges());
        yes += usize::from(want);
    }
    assert!(yes >= 20, "{yes}");
}

#[test]
fn cycle_reduction_matches_brute_force() {
    for seed in 0..60u64 {
        let psi = PsiInstance::random(2 + seed as usize % 4, 2, 1, 0.7, seed).unwrap();
        let want = brute_psi(&psi.g, &psi.h, &psi.col).unwrap();
        let c = psi_reduction_cycle(&psi).unwrap();
        let t = c.reduction.transitions();
        let found = brute_compatible_cycle(&c.reduction.graph, &t).unwrap();
        assert_eq!(found.is_some(), want, "seed {seed}");
        if let Some(w) = found {
            assert!(is_compatible_closed_walk(&c.reduction.graph, &t, &w).unwrap());
            assert!(w.edges.contains(&c.st_edge));
        }
    }
}

#[test]
fn hamiltonian_reduction_matches_brute_force() {
    let mut yes = 0;
    for seed in 0..40u64 {
        let psi = PsiInstance::random(2 + seed as usize % 3, 2, 1, 0.6, seed).unwrap();
        let want = brute_psi(&psi.g, &psi.h, &psi.col).unwrap();
        let ham = hamiltonian_reduction(&psi).unwrap();
        ham.check_structure().unwrap();
        let r = &ham.reduction;
        assert_eq!(ham.q.len(), r.path.len() - 1);
        let t = r.transitions();
        let found = brute_compatible_hamiltonian_cycle(&r.graph, &t).unwrap();
        assert_eq!(found.is_some(), want, "seed {seed}: G={:?} col={:?}", psi.g.edges(), psi.col);
        if let Some(w) = found {
            assert!(is_compatible_closed_walk(&r.graph, &t, &w).unwrap());
            assert_eq!(w.vertices.len(), r.graph.n() + 1);
        }
        yes += usize::from(want);
    }
    assert!(yes >= 5, "{yes}");
}

#[test]
fn hamiltonian_bags_for_two_h_edges() {
    let h = Graph::undirected(3, vec![(0, 1), (1, 2)]).unwrap();
    let g = Graph::undirected(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    let psi = PsiInstance::new(g, h, vec![0, 1, 2, 1]).unwrap();
    let ham = hamiltonian_reduction(&psi).unwrap();
    ham.check_structure().unwrap();
    let (sub, dec) = ham.reduced_decomposition().unwrap();
    assert_eq!(dec.treewidth(), 2);
    assert_eq!(sub.n(), 2 * (ham.reduction.path.len() - 2));
}

#[test]
fn linear_forest_check() {
    let p = Graph::undirected(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(is_linear_forest(&p, &[false; 4]));
    let c = Graph::undirected(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    assert!(!is_linear_forest(&c, &[false; 3]));
    assert!(is_linear_forest(&c, &[true, false, false]));
    let star = Graph::undirected(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
    assert!(!is_linear_forest(&star, &[false; 4]));
}

#[test]
fn random_psi_rejects_impossible_shapes() {
    assert!(PsiInstance::random(4, 5, 2, 0.5, 0).is_err());
    assert!(PsiInstance::random(4, 2, 2, 0.5, 0).is_err());
    assert!(PsiInstance::random(4, 2, 1, 1.5, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn structure_holds_for_every_output(seed in any::<u64>(), n_g in 2usize..10, m_h in 1usize..5, p in 0.0f64..1.0) {
        let n_h = 2 + (seed % 3) as usize;
        prop_assume!(m_h * 2 >= n_h && m_h <= n_h * (n_h - 1) / 2);
        let psi = PsiInstance::random(n_g, n_h, m_h, p, seed).unwrap();
        let r = psi_reduction(&psi).unwrap();
        r.check_structure().unwrap();
        prop_assert!(validate_transition_system(&r.graph, &r.transitions()).is_empty());
        let ham = hamiltonian_reduction(&psi).unwrap();
        ham.check_structure().unwrap();
        prop_assert_eq!(psi_reduction(&psi).unwrap(), r);
    }
}
