use std::ops::ControlFlow;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flexcolor::audit::shapes;
use flexcolor::choose::{self, blocking_colorable, is_ab_choosable, is_f_choosable, AbMode, ChooseOptions, Decision};
use flexcolor::constructive::{precolor_choose, precolor_counterexample, star_obstruction_check, StarOutcome};
use flexcolor::gen::{random_lists, random_request};
use flexcolor::graph::{coloring_number, hall_ratio, is_proper, respects_lists, satisfied_count};
use flexcolor::{brute, exact, ColorId, ColorSet, Coloring, ListAssignment, MultipartiteGraph, Request};

fn all_shapes(max_vertices: usize) -> Vec<Vec<usize>> {
    (1..=max_vertices)
        .flat_map(|parts| shapes(parts, max_vertices))
        .filter(|s| s.iter().sum::<usize>() <= max_vertices)
        .collect()
}

fn graph_strategy(max_parts: usize, max_size: usize) -> impl Strategy<Value = MultipartiteGraph> {
    prop::collection::vec(1..=max_size, 1..=max_parts).prop_map(|s| MultipartiteGraph::new(s).unwrap())
}

/// Random lists of sizes `1..=max_list` over a pot of at most `pot`, and a
/// random request.
fn instance_strategy(max_vertices: usize, pot: usize, max_list: usize) -> impl Strategy<Value = (MultipartiteGraph, ListAssignment, Request)> {
    (prop::collection::vec(1usize..=4, 1..=4), any::<u64>())
        .prop_filter("vertex cap", move |(s, _)| s.iter().sum::<usize>() <= max_vertices)
        .prop_map(move |(sizes, seed)| {
            use rand::Rng;
            let g = MultipartiteGraph::new(sizes).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = g.vertex_count();
            let ls: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_list.min(pot))).collect();
            let l = random_lists(&ls, pot, &mut rng);
            let d = rng.gen_range(1..=n);
            let r = random_request(&l, d, &mut rng);
            (g, l, r)
        })
}

#[test]
fn hall_ratio_matches_brute_force() {
    for s in all_shapes(12) {
        let g = MultipartiteGraph::new(s.clone()).unwrap();
        let h = hall_ratio(&g);
        assert_eq!(h.value, brute::hall_ratio(&g), "{s:?}");
    }
}

#[test]
fn coloring_number_matches_brute_force() {
    for s in all_shapes(10) {
        let g = MultipartiteGraph::new(s.clone()).unwrap();
        assert_eq!(coloring_number(&g), brute::coloring_number(&g), "{s:?}");
    }
}

/// `(a,b)`-choosability is inherited by subgraphs and by longer lists.
#[test]
fn choosability_is_monotone_on_the_grid() {
    let opts = ChooseOptions::default();
    let mut verdict = std::collections::HashMap::new();
    for m in 1..=5 {
        for n in 1..=5 {
            for a in 1..=3 {
                for b in 1..=3 {
                    let v = is_ab_choosable(m, n, a, b, AbMode::Auto, &opts).unwrap();
                    let c = v.choosable().unwrap_or_else(|| panic!("timeout at ({m},{n},{a},{b})"));
                    verdict.insert((m, n, a, b), c);
                }
            }
        }
    }
    for (&(m, n, a, b), &c) in &verdict {
        if !c {
            continue;
        }
        for (&(m2, n2, a2, b2), &c2) in &verdict {
            if m2 <= m && n2 <= n && a2 >= a && b2 >= b {
                assert!(c2, "({m},{n},{a},{b}) choosable but ({m2},{n2},{a2},{b2}) is not");
            }
        }
    }
    assert!(verdict[&(2, 2, 2, 2)] && !verdict[&(2, 4, 2, 2)] && verdict[&(5, 5, 3, 3)]);
}

#[test]
fn canonical_and_raw_enumeration_agree() {
    for sizes in [vec![1, 2], vec![2, 2], vec![2, 3], vec![1, 1, 2], vec![3, 3]] {
        let g = MultipartiteGraph::new(sizes.clone()).unwrap();
        for pot in 1..=4 {
            for k in 1..=pot.min(3) {
                let ls = vec![k; g.vertex_count()];
                let run = |canonical| {
                    let opts = ChooseOptions { pot_bound: Some(pot), canonical, ..ChooseOptions::default() };
                    is_f_choosable(&g, &ls, &opts).unwrap().decision
                };
                assert_eq!(run(true), run(false), "{sizes:?} pot {pot} k {k}");
            }
        }
    }
}

#[test]
fn star_rule_agrees_with_search() {
    for n in 1..=4 {
        let g = MultipartiteGraph::complete_bipartite(1, n).unwrap();
        for leaf_bits in 0..(1u32 << n) {
            let mut sizes = vec![n];
            sizes.extend((0..n).map(|i| 1 + ((leaf_bits >> i) & 1) as usize));
            let _ = choose::for_each_assignment(&g, &sizes, 5, true, &mut |lists| {
                let l = ListAssignment::new(lists.to_vec());
                let rule = star_obstruction_check(n, &l).unwrap();
                let direct = brute::colorable(&g, &l);
                assert_eq!(matches!(rule, StarOutcome::Obstructed(_)), !direct, "{lists:?}");
                if let StarOutcome::Colorable { center, leaves } = rule {
                    let mut cs = vec![center];
                    cs.extend(leaves);
                    let f = Coloring::new(cs);
                    assert!(is_proper(&g, &f).unwrap() && respects_lists(&l, &f).unwrap());
                }
                ControlFlow::Continue(())
            });
        }
    }
}

#[test]
fn precolor_family() {
    let cases = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (2, 3)];
    for (t, n) in cases {
        let total = usize::pow(t, n as u32);
        for b in total..=total + 2 {
            let l = precolor_counterexample(t, n, b).unwrap();
            let g = MultipartiteGraph::complete_bipartite(n, b).unwrap();
            assert!(l.is_ab_assignment(&g, t, n));
            assert!(exact::is_colorable(&g, &l).unwrap().is_none(), "t={t} n={n} b={b}");
        }
        assert!(precolor_counterexample(t, n, total - 1).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn properness_is_part_disjointness(g in graph_strategy(4, 3), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Coloring::new((0..g.vertex_count()).map(|_| ColorId(rng.gen_range(0..4))).collect());
        let edgewise = (0..g.vertex_count()).all(|u| (0..u).all(|v| !g.adjacent(u, v) || f.color(u) != f.color(v)));
        let used: Vec<ColorSet> = (0..g.part_count()).map(|p| f.used_on(g.part_range(p))).collect();
        let disjoint = (0..used.len()).all(|i| (0..i).all(|j| used[i].is_disjoint(used[j])));
        prop_assert_eq!(edgewise, disjoint);
        prop_assert_eq!(is_proper(&g, &f).unwrap(), edgewise);
    }

    #[test]
    fn satisfied_count_bounds((g, l, r) in instance_strategy(8, 5, 3), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Coloring::new((0..g.vertex_count()).map(|v| {
            let opts = l.list(v).to_vec();
            opts[rng.gen_range(0..opts.len())]
        }).collect());
        let s = satisfied_count(&r, &f).unwrap();
        prop_assert!(s <= r.domain_size());
        let extends = r.pairs().all(|(v, c)| f.color(v) == c);
        prop_assert_eq!(s == r.domain_size(), extends);
    }

    #[test]
    fn exact_solver_matches_enumeration((g, l, r) in instance_strategy(8, 6, 4)) {
        let res = exact::max_satisfied(&g, &l, &r).unwrap();
        let naive = brute::max_satisfied(&g, &l, &r);
        prop_assert_eq!(res.is_solved().then_some(res.best), naive);
        prop_assert_eq!(exact::is_colorable(&g, &l).unwrap().is_some(), naive.is_some());
        if let Some(f) = &res.witness {
            prop_assert!(is_proper(&g, f).unwrap());
            prop_assert!(respects_lists(&l, f).unwrap());
            prop_assert_eq!(satisfied_count(&r, f).unwrap(), res.best);
        }
    }

    #[test]
    fn blocking_test_matches_backtracking(m in 1usize..=4, n in 1usize..=5, seed in any::<u64>()) {
        use rand::Rng;
        let g = MultipartiteGraph::complete_bipartite(m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ls: Vec<usize> = (0..m + n).map(|_| rng.gen_range(1..=3)).collect();
        let l = random_lists(&ls, 6, &mut rng);
        prop_assert_eq!(blocking_colorable(&g, &l).unwrap(), brute::colorable(&g, &l));
    }

    #[test]
    fn precolor_choose_is_proper(n in 1usize..=2, t in 2usize..=3, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = rng.gen_range(1..t.pow(n as u32));
        let g = MultipartiteGraph::complete_bipartite(n, b).unwrap();
        let mut sizes = vec![t; n];
        sizes.extend(vec![n; b]);
        let l = random_lists(&sizes, t * n + 1, &mut rng);
        let f = precolor_choose(&g, &l, t).unwrap();
        prop_assert!(is_proper(&g, &f).unwrap() && respects_lists(&l, &f).unwrap());
    }

    #[test]
    fn counterexamples_are_uncolorable(m in 1usize..=3, n in 1usize..=4, a in 1usize..=3, b in 1usize..=3) {
        let opts = ChooseOptions::default();
        let v = is_ab_choosable(m, n, a, b, AbMode::Exhaustive, &opts).unwrap();
        prop_assert!(v.decision != Decision::Timeout);
        if let Some(l) = v.counterexample {
            prop_assert!(l.is_ab_assignment(&v.graph, a, b));
            prop_assert!(!brute::colorable(&v.graph, &l));
        }
    }
}
