use ftg_core::{Decomposition, Endpoint, Graph, Transitions, Walk};
use oracle::{brute_compatible_path, brute_compatible_path_witness, brute_disjoint_paths, brute_disjoint_paths_witness, Disjointness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treecut::*;

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

fn random_pairs(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<(usize, usize)> {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    (0..count.min(n / 2)).map(|i| (vs[2 * i], vs[2 * i + 1])).collect()
}

fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::undirected(n, e).unwrap()
}

fn path_graph(n: usize) -> Graph {
    Graph::undirected(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
}

/// Root with an empty bag and every vertex in its own leaf.
fn star_of_singletons(n: usize) -> Decomposition {
    let mut parents = vec![None];
    let mut bags = vec![vec![]];
    for v in 0..n {
        parents.push(Some(0));
        bags.push(vec![v]);
    }
    Decomposition::from_parents(parents, bags).unwrap()
}

#[test]
fn k4_single_bag_has_width_four() {
    let g = complete(4);
    let dec = Decomposition::from_parents(vec![None], vec![vec![0, 1, 2, 3]]).unwrap();
    let w = evaluate_width(&g, &dec).unwrap();
    assert_eq!(w.width, 4);
    assert!(w.nice);
    let (_, best) = exhaustive_treecut_decomposition(&g, 6).unwrap().unwrap();
    assert_eq!(best, 4);
}

#[test]
fn star_decomposition_of_degree_two_part() {
    // A = {0, 1, 2}; B vertices 3..7 of degree at most two.
    let g = Graph::undirected(8, vec![(0, 1), (1, 2), (0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (0, 6), (6, 7), (7, 2)]).unwrap();
    let mut parents = vec![None];
    let mut bags = vec![vec![0, 1, 2]];
    for b in 3..8 {
        parents.push(Some(0));
        bags.push(vec![b]);
    }
    let dec = Decomposition::from_parents(parents, bags).unwrap();
    assert_eq!(evaluate_width(&g, &dec).unwrap().width, 3);
}

#[test]
fn p4_singletons_width_matches_search() {
    let g = path_graph(4);
    let w = evaluate_width(&g, &star_of_singletons(4)).unwrap().width;
    assert_eq!(w, 2);
    let (dec, best) = exhaustive_treecut_decomposition(&g, 4).unwrap().unwrap();
    assert!(best <= 2);
    assert_eq!(evaluate_width(&g, &dec).unwrap().width, best);
}

#[test]
fn exhaustive_search_small_cases() {
    let edgeless = Graph::undirected(5, vec![]).unwrap();
    assert_eq!(exhaustive_treecut_decomposition(&edgeless, 3).unwrap().unwrap().1, 1);
    assert!(exhaustive_treecut_decomposition(&complete(5), 3).unwrap().is_none());
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let (g, _) = random_instance(&mut rng, n, 0.5, 1.0);
        let (dec, w) = exhaustive_treecut_decomposition(&g, 6).unwrap().unwrap();
        assert_eq!(evaluate_width(&g, &dec).unwrap().width, w);
        // No single-bag or singleton-star decomposition does better.
        let single = Decomposition::from_parents(vec![None], vec![(0..n).collect()]).unwrap();
        assert!(w <= evaluate_width(&g, &single).unwrap().width);
        assert!(w <= evaluate_width(&g, &star_of_singletons(n)).unwrap().width);
    }
}

#[test]
fn partition_is_required() {
    let g = path_graph(3);
    let dec = Decomposition::from_parents(vec![None], vec![vec![0, 1]]).unwrap();
    assert!(evaluate_width(&g, &dec).is_err());
}

#[test]
fn nice_input_is_unchanged() {
    let g = path_graph(4);
    let dec = Decomposition::from_parents(vec![None, Some(0), Some(1)], vec![vec![0, 1], vec![2], vec![3]]).unwrap();
    assert!(is_nice(&g, &dec));
    assert_eq!(make_nice(&g, &dec).unwrap(), dec);
}

#[test]
fn thin_child_touching_sibling_is_moved() {
    let g = path_graph(3);
    let dec = Decomposition::from_parents(vec![None, Some(0), Some(0)], vec![vec![0], vec![1], vec![2]]).unwrap();
    assert!(!is_nice(&g, &dec));
    let nice = make_nice(&g, &dec).unwrap();
    assert!(is_nice(&g, &nice));
    assert_ne!(nice.parent(1), Some(0).filter(|_| nice.parent(2) == Some(0)));
    assert!(evaluate_width(&g, &nice).unwrap().width <= evaluate_width(&g, &dec).unwrap().width);
}

fn random_decomposition(rng: &mut ChaCha8Rng, n: usize) -> Decomposition {
    let nodes = rng.gen_range(1..=n + 1);
    let parents: Vec<Option<usize>> = (0..nodes).map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) }).collect();
    let mut bags = vec![Vec::new(); nodes];
    for v in 0..n {
        bags[rng.gen_range(0..nodes)].push(v);
    }
    Decomposition::from_parents(parents, bags).unwrap()
}

#[test]
fn make_nice_on_random_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let (g, _) = random_instance(&mut rng, n, 0.35, 1.0);
        let dec = random_decomposition(&mut rng, n);
        let before = evaluate_width(&g, &dec).unwrap().width;
        let nice = make_nice(&g, &dec).unwrap();
        let after = evaluate_width(&g, &nice).unwrap();
        assert!(after.nice);
        assert!(after.width <= before);
        assert_eq!(nice.len(), dec.len());
    }
}

#[test]
fn suppression_cases() {
    let g = path_graph(2);
    let mut inst = VdpInstance::new(&g, &Transitions::new(), &[]).unwrap();
    assert!(inst.suppress(1).unwrap());
    assert_eq!(inst.num_vertices(), 1);

    // a-b-c plus pendant edges at a and c; T(b) = {{ab, bc}}.
    let g = Graph::undirected(5, vec![(0, 1), (1, 2), (3, 0), (2, 4)]).unwrap();
    let t = Transitions::from_pairs([(0, 1), (2, 0), (1, 3)]);
    let mut inst = VdpInstance::new(&g, &t, &[]).unwrap();
    assert!(inst.suppress(1).unwrap());
    let ac = inst.find_edge(0, 2).unwrap();
    assert!(inst.permits(ac, 2));
    assert!(inst.permits(ac, 3));

    let g = complete(4);
    let mut inst = VdpInstance::new(&g, &Transitions::all_permitted(&g), &[]).unwrap();
    assert!(inst.suppress(0).is_err());
}

fn reachability(g: &Graph, t: &Transitions, vs: &[usize]) -> Vec<bool> {
    let mut out = Vec::new();
    for &x in vs {
        for &y in vs {
            if x < y {
                out.push(brute_compatible_path(g, t, Endpoint::Vertex(x), Endpoint::Vertex(y), None).unwrap().is_some());
            }
        }
    }
    out
}

#[test]
fn suppression_preserves_compatible_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut merged = 0;
    for _ in 0..600 {
        let n = rng.gen_range(3..=7);
        let (g, t) = random_instance(&mut rng, n, 0.45, 0.6);
        let Some(v) = (0..n).filter(|&v| g.degree(v) <= 2).collect::<Vec<_>>().choose(&mut rng).copied() else { continue };
        let mut inst = VdpInstance::new(&g, &t, &[]).unwrap();
        if !inst.suppress(v).unwrap() {
            continue;
        }
        if g.degree(v) == 2 {
            let ns: Vec<usize> = g.neighbors(v).collect();
            merged += usize::from(g.find_edge(ns[0], ns[1]).is_some());
        }
        let (h, th, _, old, _) = inst.to_graph();
        let survivors: Vec<usize> = (0..n).filter(|&x| x != v).collect();
        let before = reachability(&g, &t, &survivors);
        let after = reachability(&h, &th, &(0..h.n()).collect::<Vec<_>>());
        assert_eq!(old, survivors);
        assert_eq!(before, after, "v={v} edges={:?} t={:?}", g.edges(), t.pairs().collect::<Vec<_>>());
    }
    assert!(merged > 0);
}

#[test]
fn termination_shapes() {
    let g = path_graph(3);
    let t = Transitions::all_permitted(&g);
    let inst = VdpInstance::new(&g, &t, &[]).unwrap();
    let (out, c) = inst.terminate(&[false, false, true], &[vec![1]]).unwrap();
    assert_eq!(out.degree(c[0]), 1);
    assert_eq!(out.find_edge(1, c[0]), Some(1));

    // Both edges leave {0, 2} towards vertex 1.
    let (out, c) = inst.terminate(&[false, true, false], &[vec![0, 1]]).unwrap();
    assert_eq!(out.degree(c[0]), 2);
    assert!(out.permits(0, 1));
    assert!(inst.terminate(&[true, false, true], &[vec![0, 1]]).is_err());
}

fn crossings(w: &Walk, inside: &[bool]) -> Vec<usize> {
    w.edges
        .iter()
        .zip(w.vertices.windows(2))
        .filter(|(_, p)| inside[p[0]] != inside[p[1]])
        .map(|(&e, _)| e)
        .collect()
}

#[test]
fn terminated_graph_keeps_crossing_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut checked = [0; 2];
    for _ in 0..500 {
        let n = rng.gen_range(3..=8);
        let (g, t) = random_instance(&mut rng, n, 0.4, 0.7);
        let (s, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if s == y {
            continue;
        }
        let Some(w) = brute_compatible_path_witness(&g, &t, Endpoint::Vertex(s), Endpoint::Vertex(y), None).unwrap() else { continue };
        let mut inside: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        inside[s] = true;
        let removed: Vec<bool> = inside.iter().map(|&b| !b).collect();
        let cross = crossings(&w, &inside);
        if cross.is_empty() {
            continue;
        }
        let inst = VdpInstance::new(&g, &t, &[]).unwrap();
        // First crossing as a singleton: a compatible s-c path survives.
        let (out, c) = inst.terminate(&removed, &[vec![cross[0]]]).unwrap();
        let (h, th, _, old, _) = out.to_graph();
        let at = |v: usize| old.iter().position(|&x| x == v).unwrap();
        assert!(brute_compatible_path(&h, &th, Endpoint::Vertex(at(s)), Endpoint::Vertex(at(c[0])), None).unwrap().is_some());
        checked[0] += 1;
        // Both ends inside: pair up consecutive crossings.
        if inside[y] {
            let groups: Vec<Vec<usize>> = cross.chunks(2).map(|c| c.to_vec()).collect();
            let (out, _) = inst.terminate(&removed, &groups).unwrap();
            let (h, th, _, old, _) = out.to_graph();
            let at = |v: usize| old.iter().position(|&x| x == v).unwrap();
            assert!(brute_compatible_path(&h, &th, Endpoint::Vertex(at(s)), Endpoint::Vertex(at(y)), None).unwrap().is_some());
            checked[1] += 1;
        }
    }
    assert!(checked[0] > 50 && checked[1] > 20, "{checked:?}");
}

#[test]
fn scomvdp_examples() {
    let g = Graph::undirected(3, vec![(0, 1)]).unwrap();
    let t = Transitions::all_permitted(&g);
    assert!(scomvdp(&g, &t, &[], &[0]).unwrap());
    assert!(!scomvdp(&g, &t, &[(2, 0)], &[0]).unwrap());
    assert!(scomvdp(&g, &t, &[(1, 0)], &[0]).unwrap());
}

#[test]
fn scomvdp_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut done = 0;
    let mut yes = 0;
    while done < 200 {
        let n = rng.gen_range(2..=8);
        let na = rng.gen_range(1..=3.min(n));
        let mut edges = Vec::new();
        let mut deg = vec![0; n];
        for u in 0..n {
            for v in u + 1..n {
                let bounded = |x: usize| x < na || deg[x] < 2;
                if bounded(u) && bounded(v) && rng.gen_bool(0.5) {
                    edges.push((u, v));
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        let g = Graph::undirected(n, edges).unwrap();
        let all = Transitions::all_permitted(&g);
        let t = Transitions::from_pairs(all.pairs().filter(|_| rng.gen_bool(0.7)));
        let count = rng.gen_range(1..=3);
        let pairs = random_pairs(&mut rng, n, count);
        let a: Vec<usize> = (0..na).collect();
        let want = brute_disjoint_paths(&g, &t, &pairs, Disjointness::Vertex).unwrap();
        assert_eq!(scomvdp(&g, &t, &pairs, &a).unwrap(), want, "edges={:?} pairs={pairs:?}", g.edges());
        yes += usize::from(want);
        done += 1;
    }
    assert!(yes > 20);
}

fn mask(n: usize, vs: &[usize]) -> Vec<bool> {
    (0..n).map(|v| vs.contains(&v)).collect()
}

#[test]
fn record_counts() {
    // Y = {0}, one cut edge, no unmatched terminal.
    let g = path_graph(2);
    let rs = enumerate_records(&g, &mask(2, &[0]), &[0], &[]);
    assert_eq!(rs, vec![Record { sigma: vec![(0, Label::Unused)], ..Record::default() }]);
    // Two disjoint cut edges: all unused, both internal, or both foreign.
    let g = Graph::undirected(4, vec![(0, 2), (1, 3)]).unwrap();
    let rs = enumerate_records(&g, &mask(4, &[0, 1]), &[0, 1], &[]);
    assert_eq!(rs.len(), 3);
    // More unmatched terminals than cut edges.
    assert!(enumerate_records(&g, &mask(4, &[0, 1]), &[0], &[0, 1]).is_empty());
}

/// Direct transcription of the record conditions over all candidate tuples.
fn count_records(g: &Graph, y: &[bool], cut: &[usize], unmatched: &[usize]) -> usize {
    let m = cut.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let end = |e: usize, inner: bool| {
        let (u, v) = g.endpoints(cut[e]);
        if y[u] == inner {
            u
        } else {
            v
        }
    };
    let mut total = 0;
    for code in 0..4usize.pow(m as u32) {
        let lab: Vec<usize> = (0..m).map(|i| code / 4usize.pow(i as u32) % 4).collect();
        let mut ok = true;
        for v in 0..g.n() {
            let used: Vec<usize> = (0..m).filter(|&i| lab[i] != 3 && g.has_endpoint(cut[i], v)).map(|i| lab[i]).collect();
            ok &= match used.len() {
                0 | 1 => true,
                2 => (used[0] == used[1] && used[0] <= 1) || (!y[v] && used.contains(&1) && used.contains(&2)),
                _ => false,
            };
        }
        if !ok {
            continue;
        }
        let count_matchings = |label: usize, inner: bool| {
            let items: Vec<usize> = (0..m).filter(|&i| lab[i] == label).collect();
            let cand: Vec<(usize, usize)> = pairs
                .iter()
                .copied()
                .filter(|&(i, j)| lab[i] == label && lab[j] == label && end(i, inner) != end(j, inner))
                .collect();
            (0..1usize << cand.len())
                .filter(|&s| {
                    let chosen: Vec<(usize, usize)> = (0..cand.len()).filter(|&b| s >> b & 1 == 1).map(|b| cand[b]).collect();
                    items.iter().all(|&x| chosen.iter().filter(|&&(i, j)| i == x || j == x).count() == 1)
                })
                .count()
        };
        let leaving = (0..m).filter(|&i| lab[i] == 2).count();
        let bijections = if leaving == unmatched.len() { (1..=leaving).product::<usize>() } else { 0 };
        total += count_matchings(0, true) * count_matchings(1, false) * bijections;
    }
    total
}

#[test]
fn record_enumeration_matches_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(3..=7);
        let (g, _) = random_instance(&mut rng, n, 0.5, 1.0);
        let y: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let cut: Vec<usize> = (0..g.m()).filter(|&e| {
            let (u, v) = g.endpoints(e);
            y[u] != y[v]
        })
        .collect();
        if cut.len() > 5 {
            continue;
        }
        let ys: Vec<usize> = (0..n).filter(|&v| y[v]).collect();
        let k = rng.gen_range(0..=ys.len().min(2));
        let un: Vec<usize> = ys.choose_multiple(&mut rng, k).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let rs = enumerate_records(&g, &y, &cut, &un);
        assert_eq!(rs.len(), count_records(&g, &y, &cut, &un));
        let m = cut.len() as u32;
        let fact: usize = (1..=cut.len()).product();
        assert!(rs.len() <= 4usize.pow(m) * fact.pow(3));
        let distinct: std::collections::BTreeSet<_> = rs.iter().collect();
        assert_eq!(distinct.len(), rs.len());
        checked += 1;
    }
}

#[test]
fn corresponding_and_simplified_examples() {
    // Path 0-1-2-3 with Y = {0, 1}; cut edge 1 = (1, 2).
    let g = path_graph(4);
    let t = Transitions::all_permitted(&g);
    let y = mask(4, &[0, 1]);
    let base = VdpInstance::new(&g, &t, &[(0, 1)]).unwrap();
    let unused = Record { sigma: vec![(1, Label::Unused)], ..Record::default() };
    let j = corresponding_instance(&base, &y, &unused).unwrap();
    assert_eq!(j.num_vertices(), 2);
    assert_eq!(j.pairs, vec![(0, 1)]);
    let q = simplify(&base, &y, &unused).unwrap().unwrap();
    assert_eq!(q.vertices().collect::<Vec<_>>(), vec![2, 3]);
    assert!(q.pairs.is_empty());

    let base = VdpInstance::new(&g, &t, &[(0, 3)]).unwrap();
    let leave = Record { sigma: vec![(1, Label::Leaving)], lambda: vec![(0, 1)], ..Record::default() };
    let j = corresponding_instance(&base, &y, &leave).unwrap();
    let c = j.vertices().find(|&v| v >= 4).unwrap();
    assert_eq!(j.pairs, vec![(0, c)]);
    let q = simplify(&base, &y, &leave).unwrap().unwrap();
    let c = q.vertices().find(|&v| v >= 4).unwrap();
    assert_eq!(q.pairs, vec![(c, 3)]);

    // Internal pair: cycle 0-1-2-3-0 with Y = {0, 1}; cut edges 1 = (1,2) and 3 = (3,0).
    let g = Graph::undirected(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let t = Transitions::all_permitted(&g);
    let base = VdpInstance::new(&g, &t, &[(0, 1)]).unwrap();
    let r = Record { sigma: vec![(1, Label::Internal), (3, Label::Internal)], internal: vec![(1, 3)], ..Record::default() };
    let q = simplify(&base, &y, &r).unwrap().unwrap();
    assert_eq!(q.pairs.len(), 1);
    let (a, b) = q.pairs[0];
    assert!(a >= 4 && b >= 4 && q.degree(a) == 1 && q.degree(b) == 1);
}

/// The record a solution induces at a node.
fn record_of(g: &Graph, y: &[bool], cut: &[usize], paths: &[Walk]) -> Record {
    let mut r = Record { sigma: cut.iter().map(|&e| (e, Label::Unused)).collect(), ..Record::default() };
    let set = |r: &mut Record, e: usize, l: Label| r.sigma.iter_mut().find(|x| x.0 == e).unwrap().1 = l;
    for p in paths {
        let (a, b) = (p.first(), p.last());
        let mut walk = p.clone();
        if !y[a] && y[b] {
            walk.vertices.reverse();
            walk.edges.reverse();
        }
        let cr = crossings(&walk, y);
        let (a, b) = (walk.first(), walk.last());
        match (y[a], y[b]) {
            (true, true) | (false, false) => {
                let l = if y[a] { Label::Internal } else { Label::Foreign };
                for c in cr.chunks(2) {
                    set(&mut r, c[0], l);
                    set(&mut r, c[1], l);
                    if l == Label::Internal {
                        r.internal.push((c[0], c[1]));
                    } else {
                        r.foreign.push((c[0], c[1]));
                    }
                }
            }
            _ => {
                set(&mut r, cr[0], Label::Leaving);
                r.lambda.push((a, cr[0]));
                for c in cr[1..].chunks(2) {
                    set(&mut r, c[0], Label::Foreign);
                    set(&mut r, c[1], Label::Foreign);
                    r.foreign.push((c[0], c[1]));
                }
            }
        }
    }
    let _ = g;
    r.normalized()
}

#[test]
fn solutions_induce_valid_records() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(3..=8);
        let (g, t) = random_instance(&mut rng, n, 0.35, 0.8);
        let dec = random_decomposition(&mut rng, n);
        let w = evaluate_width(&g, &dec).unwrap();
        if w.max_adhesion > 4 || w.width > 5 {
            continue;
        }
        let count = rng.gen_range(1..=3);
        let pairs = random_pairs(&mut rng, n, count);
        let Some(paths) = brute_disjoint_paths_witness(&g, &t, &pairs, Disjointness::Vertex).unwrap() else { continue };
        let mut report = ComvdpReport::default();
        let (nice, tables) = valid_records(&g, &t, &pairs, &dec, &mut report).unwrap();
        let tables = tables.unwrap();
        let info = node_info(&g, &nice);
        for (s, i) in info.iter().enumerate() {
            let r = record_of(&g, &i.y, &i.cut, &paths);
            let all = enumerate_records(&g, &i.y, &i.cut, &unmatched(&i.y, &pairs));
            assert_eq!(all.iter().filter(|x| **x == r).count(), 1);
            assert!(tables[s].contains(&r), "node {s} record {r:?}");
        }
        assert!(tables[nice.root()].iter().all(|r| *r == Record::default()));
        checked += 1;
    }
}

#[test]
fn simplification_keeps_corresponding_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(3..=9);
        let (g, t) = random_instance(&mut rng, n, 0.35, 0.8);
        let y: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let count = rng.gen_range(1..=3);
        let pairs = random_pairs(&mut rng, n, count);
        let Some(paths) = brute_disjoint_paths_witness(&g, &t, &pairs, Disjointness::Vertex).unwrap() else { continue };
        let cut: Vec<usize> = (0..g.m()).filter(|&e| {
            let (u, v) = g.endpoints(e);
            y[u] != y[v]
        })
        .collect();
        let r = record_of(&g, &y, &cut, &paths);
        let base = VdpInstance::new(&g, &t, &pairs).unwrap();
        let q = simplify(&base, &y, &r).unwrap().unwrap();
        let j = corresponding_instance(&base, &y, &r).unwrap();
        for inst in [q, j] {
            let (h, th, hp, _, _) = inst.to_graph();
            assert!(brute_disjoint_paths(&h, &th, &hp, Disjointness::Vertex).unwrap());
        }
        checked += 1;
    }
}

fn with_thin_child(rng: &mut ChaCha8Rng) -> Option<(Graph, Transitions, Vec<(usize, usize)>, Vec<bool>, Vec<usize>)> {
    let n = rng.gen_range(3..=9);
    let (g, t) = random_instance(rng, n, 0.35, 0.75);
    let y: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.35)).collect();
    let cut: Vec<usize> = (0..g.m()).filter(|&e| {
        let (u, v) = g.endpoints(e);
        y[u] != y[v]
    })
    .collect();
    if cut.len() > 2 || !y.iter().any(|&b| b) || y.iter().all(|&b| b) {
        return None;
    }
    let count = rng.gen_range(1..=3);
    let pairs = random_pairs(rng, n, count);
    Some((g, t, pairs, y, cut))
}

#[test]
fn thin_child_reduction_preserves_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    let mut checked = 0;
    let mut yes = 0;
    while checked < 400 {
        let Some((g, t, pairs, y, cut)) = with_thin_child(&mut rng) else { continue };
        let base = VdpInstance::new(&g, &t, &pairs).unwrap();
        let un = unmatched(&y, &pairs);
        let d: RecordSet = enumerate_records(&g, &y, &cut, &un)
            .into_iter()
            .filter(|r| {
                let j = corresponding_instance(&base, &y, r).unwrap();
                let (h, th, hp, _, _) = j.to_graph();
                brute_disjoint_paths(&h, &th, &hp, Disjointness::Vertex).unwrap()
            })
            .collect();
        let want = brute_disjoint_paths(&g, &t, &pairs, Disjointness::Vertex).unwrap();
        let got = match reduce_thin_child(&base, &y, &cut, &d).unwrap() {
            None => false,
            Some(red) => {
                let (h, th, hp, _, _) = red.to_graph();
                brute_disjoint_paths(&h, &th, &hp, Disjointness::Vertex).unwrap()
            }
        };
        assert_eq!(got, want, "edges={:?} pairs={pairs:?} y={y:?}", g.edges());
        yes += usize::from(want);
        checked += 1;
    }
    assert!(yes > 40);
}

#[test]
fn thin_child_rule_shapes() {
    // Y_s = {0}, single unused edge, no unmatched terminal: Y_s vanishes.
    let g = path_graph(3);
    let t = Transitions::all_permitted(&g);
    let base = VdpInstance::new(&g, &t, &[(1, 2)]).unwrap();
    let y = mask(3, &[0]);
    let d: RecordSet = [Record { sigma: vec![(0, Label::Unused)], ..Record::default() }].into_iter().collect();
    let red = reduce_thin_child(&base, &y, &[0], &d).unwrap().unwrap();
    assert_eq!(red.vertices().collect::<Vec<_>>(), vec![1, 2]);

    // Y_s = {0, 1} with pair {0, 1}, only the internal record valid.
    let g = Graph::undirected(3, vec![(0, 2), (1, 2)]).unwrap();
    let t = Transitions::all_permitted(&g);
    let base = VdpInstance::new(&g, &t, &[(0, 1)]).unwrap();
    let y = mask(3, &[0, 1]);
    let r = Record { sigma: vec![(0, Label::Internal), (1, Label::Internal)], internal: vec![(0, 1)], ..Record::default() };
    let d: RecordSet = [r].into_iter().collect();
    let red = reduce_thin_child(&base, &y, &[0, 1], &d).unwrap().unwrap();
    assert_eq!(red.num_vertices(), 3);
    assert_eq!(red.pairs.len(), 1);
    let (a, b) = red.pairs[0];
    assert!(a >= 3 && b >= 3);
    assert!(reduce_thin_child(&base, &y, &[0, 1], &RecordSet::new()).unwrap().is_none());
}

#[test]
fn comvdp_trivial_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let n = rng.gen_range(2..=7);
        let (g, t) = random_instance(&mut rng, n, 0.4, 0.5);
        let dec = random_decomposition(&mut rng, n);
        if evaluate_width(&g, &dec).unwrap().max_adhesion > 4 {
            continue;
        }
        assert!(comvdp(&g, &t, &[], &dec).unwrap().yes);
        if let Some(e) = (0..g.m()).next() {
            let (u, v) = g.endpoints(e);
            assert!(comvdp(&g, &t, &[(u, v)], &dec).unwrap().yes);
        }
    }
}

#[test]
fn root_only_decomposition_is_scomvdp() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let (g, t) = random_instance(&mut rng, n, 0.5, 0.7);
        let dec = Decomposition::from_parents(vec![None], vec![(0..n).collect()]).unwrap();
        let count = rng.gen_range(1..=2);
        let pairs = random_pairs(&mut rng, n, count);
        let all: Vec<usize> = (0..n).collect();
        assert_eq!(comvdp(&g, &t, &pairs, &dec).unwrap().yes, scomvdp(&g, &t, &pairs, &all).unwrap());
    }
}
