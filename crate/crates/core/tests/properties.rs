use proptest::prelude::*;

use sigpow::balance::{is_balanced, lift_path, project_path};
use sigpow::distance::{sign_reachability, DistanceTable, Extremum, PathSigns};
use sigpow::oracle::{count_shortest_paths, enumerate_shortest_paths, oracle_signs};
use sigpow::power::{
    associated_complete, completion_mismatches, is_power_unique, power, CompleteMode,
    PowerWitnesses,
};
use sigpow::spectra::{adjacency_matrix, balanced_spectrum_test, eigenvalues, DEFAULT_TOL};
use sigpow::{Sign, SignedGraph, VertexPath, Walk};

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    // u < v
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Connected signed graphs on 2..=max vertices: a random tree plus extra
/// edges.
fn connected_graph(max: usize) -> impl Strategy<Value = SignedGraph> {
    (2usize..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            prop::collection::vec(0usize..1000, n - 1),
            prop::collection::vec(prop::bool::weighted(0.3), pairs),
            prop::collection::vec(any::<bool>(), pairs),
        )
            .prop_map(|(n, parents, extra, signs)| {
                let mut keep = extra;
                for i in 1..n {
                    let p = parents[i - 1] % i;
                    keep[pair_index(n, p, i)] = true;
                }
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        let k = pair_index(n, u, v);
                        if keep[k] {
                            edges.push((u, v, if signs[k] { Sign::Pos } else { Sign::Neg }));
                        }
                    }
                }
                SignedGraph::from_edges(n, edges).unwrap()
            })
    })
}

fn graph_and_subset(max: usize) -> impl Strategy<Value = (SignedGraph, Vec<usize>)> {
    connected_graph(max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n)).prop_map(|(g, picks)| {
            let set = picks
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect();
            (g, set)
        })
    })
}

/// Every simple cycle once, as a closed walk starting at its smallest vertex.
fn all_cycles(g: &SignedGraph) -> Vec<Walk> {
    fn extend(g: &SignedGraph, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Walk>) {
        let at = *stack.last().unwrap();
        for &(w, _) in g.neighbors(at) {
            if w == start && stack.len() >= 3 && stack[1] < stack[stack.len() - 1] {
                let mut c = stack.clone();
                c.push(start);
                out.push(Walk::new(c).unwrap());
            } else if w > start && !stack.contains(&w) {
                stack.push(w);
                extend(g, start, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        extend(g, s, &mut vec![s], &mut out);
    }
    out
}

/// Achievable signs over the shortest among all simple paths, by exhaustive
/// DFS with no use of BFS levels.
fn brute_force_signs(g: &SignedGraph, u: usize, v: usize) -> (usize, PathSigns) {
    fn walk(
        g: &SignedGraph,
        v: usize,
        stack: &mut Vec<usize>,
        sign: Sign,
        best: &mut (usize, PathSigns),
    ) {
        let at = *stack.last().unwrap();
        if at == v {
            let len = stack.len() - 1;
            if len < best.0 {
                *best = (len, PathSigns::of(sign));
            } else if len == best.0 {
                best.1.insert(sign);
            }
            return;
        }
        for &(w, s) in g.neighbors(at) {
            if !stack.contains(&w) {
                stack.push(w);
                walk(g, v, stack, sign * s, best);
                stack.pop();
            }
        }
    }
    let mut best = (usize::MAX, PathSigns::NONE);
    walk(g, v, &mut vec![u], Sign::Pos, &mut best);
    best
}

/// Classical n-th power of the underlying graph via Floyd–Warshall.
fn unsigned_power_edges(g: &SignedGraph, n: usize) -> Vec<(usize, usize)> {
    let m = g.order();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; m]; m];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v, _) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut out = Vec::new();
    for (u, row) in d.iter().enumerate() {
        for (v, &duv) in row.iter().enumerate().skip(u + 1) {
            if duv <= n {
                out.push((u, v));
            }
        }
    }
    out
}

fn sorted_desc(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(|a, b| b.total_cmp(a));
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn switching_is_an_involution((g, s) in graph_and_subset(8)) {
        prop_assert_eq!(g.switch(&s).unwrap().switch(&s).unwrap(), g);
    }

    #[test]
    fn switching_preserves_cycle_signs((g, s) in graph_and_subset(7)) {
        let h = g.switch(&s).unwrap();
        for c in all_cycles(&g) {
            prop_assert_eq!(g.walk_sign(&c).unwrap(), h.walk_sign(&c).unwrap());
        }
    }

    #[test]
    fn path_sign_multiplies_over_subpaths(g in connected_graph(8), u in 0usize..8, v in 0usize..8, cut in 0usize..8) {
        let (u, v) = (u % g.order(), v % g.order());
        let p = enumerate_shortest_paths(&g, u, v).unwrap().remove(0);
        let c = cut % (p.len() + 1);
        let head = VertexPath::new(p.vertices()[..=c].to_vec()).unwrap();
        let tail = VertexPath::new(p.vertices()[c..].to_vec()).unwrap();
        prop_assert_eq!(g.path_sign(&p).unwrap(), g.path_sign(&head).unwrap() * g.path_sign(&tail).unwrap());
    }

    #[test]
    fn two_connected_implies_connected(g in connected_graph(8)) {
        if g.is_two_connected() {
            prop_assert!(g.is_connected());
        }
        let removed_ok = (0..g.order()).all(|cut| {
            let keep: Vec<usize> = (0..g.order()).filter(|&x| x != cut).collect();
            let index = |x: usize| keep.iter().position(|&k| k == x).unwrap();
            let edges = g.edges().filter(|&(a, b, _)| a != cut && b != cut).map(|(a, b, s)| (index(a), index(b), s));
            SignedGraph::from_edges(keep.len(), edges).unwrap().is_connected()
        });
        prop_assert_eq!(g.is_two_connected(), g.order() >= 3 && removed_ok);
    }

    #[test]
    fn reachability_matches_enumeration(g in connected_graph(8)) {
        for u in 0..g.order() {
            let row = sign_reachability(&g, u).unwrap();
            for (v, reach) in row.iter().enumerate() {
                prop_assert_eq!(reach.signs, oracle_signs(&g, u, v).unwrap());
                prop_assert_eq!((reach.distance, reach.signs), brute_force_signs(&g, u, v));
            }
        }
    }

    #[test]
    fn reachability_is_symmetric(g in connected_graph(9)) {
        let t = DistanceTable::new(&g).unwrap();
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(t.reach(u, v), t.reach(v, u));
            }
        }
    }

    #[test]
    fn matrix_magnitudes_agree(g in connected_graph(9)) {
        let t = DistanceTable::new(&g).unwrap();
        let (dmax, dmin) = (t.matrix(Extremum::Max), t.matrix(Extremum::Min));
        prop_assert_eq!(dmax.magnitudes(), dmin.magnitudes());
        let plain = DistanceTable::new(&g.unsigned()).unwrap().matrix(Extremum::Max);
        prop_assert_eq!(dmax.magnitudes(), plain.magnitudes());
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(dmax.get(u, v), dmax.get(v, u));
                if t.is_compatible_pair(u, v) {
                    prop_assert_eq!(dmax.get(u, v), dmin.get(u, v));
                }
            }
            prop_assert_eq!(dmax.get(u, u), 0);
        }
        let plain_min = DistanceTable::new(&g.unsigned()).unwrap().matrix(Extremum::Min);
        prop_assert_eq!(plain, plain_min);
    }

    #[test]
    fn compatibility_is_switching_invariant((g, s) in graph_and_subset(9)) {
        let a = DistanceTable::new(&g).unwrap();
        let b = DistanceTable::new(&g.switch(&s).unwrap()).unwrap();
        prop_assert_eq!(a.is_compatible(), b.is_compatible());
        prop_assert_eq!(a.incompatible_pairs().collect::<Vec<_>>(), b.incompatible_pairs().collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_is_exact(g in connected_graph(8)) {
        let t = DistanceTable::new(&g).unwrap();
        for u in 0..g.order() {
            for v in 0..g.order() {
                let paths = enumerate_shortest_paths(&g, u, v).unwrap();
                prop_assert!(paths.iter().all(|p| p.len() == t.distance(u, v) && p.start() == u && p.end() == v));
                prop_assert!(paths.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(paths.len() as u128, count_shortest_paths(&g, u, v).unwrap());
            }
        }
    }

    #[test]
    fn signed_witness_is_least_enumerated_path(g in connected_graph(8)) {
        let t = DistanceTable::new(&g).unwrap();
        for u in 0..g.order() {
            for v in 0..g.order() {
                let paths = enumerate_shortest_paths(&g, u, v).unwrap();
                for sign in [Sign::Pos, Sign::Neg] {
                    let least = paths.iter().find(|p| g.path_sign(p) == Ok(sign)).cloned();
                    prop_assert_eq!(t.shortest_path_with_sign(&g, u, v, sign), least);
                }
            }
        }
    }

    #[test]
    fn power_underlying_graph_is_classical(g in connected_graph(9), n in 1usize..5) {
        let p = power(&g, n).unwrap();
        let edges: Vec<_> = p.power_max.edges().map(|(u, v, _)| (u, v)).collect();
        prop_assert_eq!(&edges, &unsigned_power_edges(&g, n));
        let min_edges: Vec<_> = p.power_min.edges().map(|(u, v, _)| (u, v)).collect();
        prop_assert_eq!(&edges, &min_edges);
        for (u, v, s) in g.edges() {
            prop_assert_eq!(p.power_max.sign(u, v), Some(s));
            prop_assert_eq!(p.power_min.sign(u, v), Some(s));
        }
    }

    #[test]
    fn powers_are_monotone(g in connected_graph(9)) {
        let d = DistanceTable::new(&g).unwrap().diameter();
        let mut prev = power(&g, 1).unwrap();
        prop_assert_eq!(&prev.power_max, &g);
        prop_assert!(prev.unique);
        for n in 2..=d + 1 {
            let next = power(&g, n).unwrap();
            prop_assert!(prev.power_max.edges().all(|(u, v, _)| next.power_max.has_edge(u, v)));
            prev = next;
        }
        prop_assert!(prev.power_max.is_complete());
    }

    #[test]
    fn uniqueness_three_ways(g in connected_graph(8), n in 1usize..5) {
        let p = power(&g, n).unwrap();
        let by_pairs = is_power_unique(&g, n).unwrap();
        let t = DistanceTable::new(&g).unwrap();
        let mut by_oracle = true;
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if t.distance(u, v) <= n && !oracle_signs(&g, u, v).unwrap().is_singleton() {
                    by_oracle = false;
                }
            }
        }
        prop_assert_eq!(p.unique, by_pairs);
        prop_assert_eq!(p.unique, p.power_max == p.power_min);
        prop_assert_eq!(p.unique, by_oracle);
    }

    #[test]
    fn completions_of_balanced_powers_agree(g in connected_graph(9), n in 1usize..4, labels in prop::collection::vec(any::<bool>(), 9)) {
        let set: Vec<usize> = (0..g.order()).filter(|&i| labels[i]).collect();
        let b = g.unsigned().switch(&set).unwrap();
        prop_assert!(completion_mismatches(&b, n, true).unwrap().is_empty());
    }

    #[test]
    fn balance_certificates_validate(g in connected_graph(9)) {
        let r = is_balanced(&g).unwrap();
        prop_assert!(r.validate(&g));
        let cycles = all_cycles(&g);
        if g.order() <= 7 {
            let all_positive = cycles.iter().all(|c| g.walk_sign(c).unwrap() == Sign::Pos);
            prop_assert_eq!(r.balanced, all_positive);
        }
    }

    #[test]
    fn balance_is_switching_invariant((g, s) in graph_and_subset(9)) {
        prop_assert_eq!(is_balanced(&g).unwrap().balanced, is_balanced(&g.switch(&s).unwrap()).unwrap().balanced);
    }

    #[test]
    fn lifting_geodesics_preserves_sign(g in connected_graph(9), n in 1usize..4) {
        if !is_power_unique(&g, n).unwrap() {
            return Ok(());
        }
        let sq = power(&g, n).unwrap().power_max;
        for u in 0..g.order() {
            for v in 0..g.order() {
                for p in enumerate_shortest_paths(&g, u, v).unwrap() {
                    let lifted = lift_path(&g, &p, n).unwrap();
                    prop_assert_eq!(lifted.len(), p.len().div_ceil(n));
                    prop_assert_eq!(sq.path_sign(&lifted).unwrap(), g.path_sign(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn projecting_power_geodesics(g in connected_graph(9), n in 1usize..4) {
        for which in [Extremum::Max, Extremum::Min] {
            let w = PowerWitnesses::new(&g, n, which).unwrap();
            for u in 0..g.order() {
                for v in 0..g.order() {
                    for p in enumerate_shortest_paths(&w.power, u, v).unwrap() {
                        let k = p.len();
                        let walk = project_path(&w, &p).unwrap();
                        let lo = if k == 0 { 0 } else { (k - 1) * n + 1 };
                        prop_assert!(walk.len() >= lo && walk.len() <= k * n);
                        prop_assert_eq!(g.walk_sign(&walk).unwrap(), w.power.path_sign(&p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn nearest_incompatible_pairs_have_disjoint_opposite_paths(g in connected_graph(8)) {
        if !g.is_two_connected() {
            return Ok(());
        }
        let t = DistanceTable::new(&g).unwrap();
        let pairs: Vec<_> = t.incompatible_pairs().collect();
        let Some(least) = pairs.iter().map(|&(u, v)| t.distance(u, v)).min() else {
            return Ok(());
        };
        for &(u, v) in pairs.iter().filter(|&&(u, v)| t.distance(u, v) == least) {
            let paths = enumerate_shortest_paths(&g, u, v).unwrap();
            let found = paths.iter().any(|p| {
                paths.iter().any(|q| {
                    g.path_sign(p).unwrap() == Sign::Pos
                        && g.path_sign(q).unwrap() == Sign::Neg
                        && p.vertices()[1..p.len()].iter().all(|x| !q.vertices().contains(x))
                })
            });
            prop_assert!(found, "no disjoint opposite pair for {}-{}", u, v);
        }
    }

    #[test]
    fn spectrum_traces((g, s) in graph_and_subset(9)) {
        let a = eigenvalues(&adjacency_matrix(&g), DEFAULT_TOL).unwrap();
        let b = eigenvalues(&adjacency_matrix(&g.switch(&s).unwrap()), DEFAULT_TOL).unwrap();
        let order = g.order() as f64;
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() < DEFAULT_TOL * 10.0 * order);
        }
        let sum: f64 = a.eigenvalues.iter().sum();
        let squares: f64 = a.eigenvalues.iter().map(|x| x * x).sum();
        prop_assert!(sum.abs() < DEFAULT_TOL * order);
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() < DEFAULT_TOL * order * order);
        prop_assert_eq!(a.groups.iter().map(|g| g.1).sum::<usize>(), g.order());
    }

    #[test]
    fn balanced_spectrum_equals_unsigned(g in connected_graph(9), picks in prop::collection::vec(any::<bool>(), 9)) {
        let set: Vec<usize> = (0..g.order()).filter(|&i| picks[i]).collect();
        let b = g.unsigned().switch(&set).unwrap();
        let x = eigenvalues(&adjacency_matrix(&b), DEFAULT_TOL).unwrap();
        let y = eigenvalues(&adjacency_matrix(&g.unsigned()), DEFAULT_TOL).unwrap();
        for (p, q) in sorted_desc(x.eigenvalues).iter().zip(&y.eigenvalues) {
            prop_assert!((p - q).abs() < 1e-8);
        }
    }

    #[test]
    fn spectral_test_agrees_with_balance(g in connected_graph(9)) {
        if DistanceTable::new(&g).unwrap().is_compatible() {
            prop_assert_eq!(balanced_spectrum_test(&g, DEFAULT_TOL).unwrap(), is_balanced(&g).unwrap().balanced);
        } else {
            prop_assert!(associated_complete(&g, CompleteMode::Pm).is_err());
        }
    }
}
