//! Cross-module invariants, checked against independent oracles written
//! here in test code: permutation-based isomorphism, subset enumeration,
//! and double-BFS tree diameters. The oracles never call into the search
//! paths they are checking.

use hfed::graph::canon::canonical_key;
use hfed::graph::iso::is_free;
use hfed::pattern::{
    choose_largest_component, classify, find_carving_set, recognize_star, recognize_twin_star,
    strip_leaves, Classification,
};
use hfed::planner::{plan_is_sound, Instance, ReductionStep};
use hfed::solver::{solve_branching, SolverError};
use hfed::verifier::enumerate::{
    nonisomorphic_graphs, nonisomorphic_graphs_up_to, nonisomorphic_trees,
};
use hfed::{
    are_isomorphic, branch_gadget, clique_attach, enumerate_induced_copies,
    enumerate_subgraph_copies, plan, Edge, Graph, PatternSpec, VertexSubset,
};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// independent oracles

/// Isomorphism by trying every vertex permutation; only for tiny graphs.
fn naive_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges()
            .iter()
            .all(|e| b.has_edge(perm[e.u()], perm[e.v()]))
        {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Longest induced path oracle: try every vertex subset, keep those that
/// induce a path, take the maximum edge count.
fn longest_induced_path_by_subsets(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for size in 1..=n {
        for subset in subsets(n, size) {
            let vs: VertexSubset = subset.iter().copied().collect();
            let sub = g.induced(&vs);
            if is_path_graph(&sub) {
                best = best.max(sub.edge_count());
            }
        }
    }
    best
}

fn is_path_graph(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    g.is_connected()
        && g.edge_count() == n - 1
        && (0..n).all(|v| g.degree(v) <= 2)
}

/// Standard tree diameter in edges via double BFS.
fn tree_diameter_double_bfs(t: &Graph) -> usize {
    fn farthest(g: &Graph, start: usize) -> (usize, usize) {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut far = (start, 0);
        while let Some(v) = queue.pop_front() {
            if dist[v] > far.1 {
                far = (v, dist[v]);
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        far
    }
    let (a, _) = farthest(t, 0);
    farthest(t, a).1
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u32>()).prop_map(|(n, bits)| {
        let mut g = Graph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (bit % 32) & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    })
}

fn small_patterns() -> Vec<Graph> {
    vec![
        Graph::path(3),
        Graph::path(4),
        Graph::complete(3),
        Graph::matching(2),
        Graph::star(3),
    ]
}

// ---------------------------------------------------------------------------
// graph core

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(6)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn disjoint_union_adds_counts(a in arb_graph(5), b in arb_graph(5)) {
        let u = Graph::disjoint_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(u.vertex_count(), a.vertex_count() + b.vertex_count());
        prop_assert_eq!(u.edge_count(), a.edge_count() + b.edge_count());
    }

    #[test]
    fn induced_copies_really_induce_the_pattern(g in arb_graph(6), pi in 0usize..5) {
        let pattern = &small_patterns()[pi];
        for subset in enumerate_induced_copies(&g, pattern) {
            prop_assert!(naive_isomorphic(&g.induced(&subset), pattern));
        }
    }

    #[test]
    fn subgraph_copies_contain_the_induced_ones(g in arb_graph(6), pi in 0usize..5) {
        let pattern = &small_patterns()[pi];
        let subgraph = enumerate_subgraph_copies(&g, pattern);
        for subset in enumerate_induced_copies(&g, pattern) {
            let members = subset.sorted_vec();
            let mut edges: Vec<Edge> = Vec::new();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if g.has_edge(u, v) {
                        edges.push(Edge::new(u, v));
                    }
                }
            }
            let found = subgraph.iter().any(|c| {
                c.vertices == subset && c.edges.iter().copied().collect::<Vec<_>>() == edges
            });
            prop_assert!(found, "induced copy {:?} missing from subgraph copies", members);
        }
    }

    #[test]
    fn induced_diameter_matches_subset_oracle(g in arb_graph(6)) {
        prop_assert_eq!(g.induced_diameter(), longest_induced_path_by_subsets(&g));
    }

    #[test]
    fn isomorphism_agrees_with_canonical_keys(a in arb_graph(6), b in arb_graph(6)) {
        prop_assert_eq!(are_isomorphic(&a, &b), canonical_key(&a) == canonical_key(&b));
    }
}

#[test]
fn induced_diameter_equals_tree_diameter_on_all_trees_up_to_ten() {
    for n in 1..=10 {
        for t in nonisomorphic_trees(n) {
            assert_eq!(
                t.induced_diameter(),
                tree_diameter_double_bfs(&t),
                "tree: {t:?}"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// pattern analysis

#[test]
fn polynomial_time_iff_at_most_one_edge_up_to_six_vertices() {
    for g in nonisomorphic_graphs_up_to(6) {
        let is_poly = classify(&g).kind == Classification::PolynomialTime;
        assert_eq!(is_poly, g.edge_count() <= 1, "graph: {g:?}");
    }
}

#[test]
fn star_and_twin_star_absent_on_non_trees_up_to_six_vertices() {
    for g in nonisomorphic_graphs_up_to(6) {
        if !g.is_tree() {
            assert_eq!(recognize_star(&g), None);
            assert_eq!(recognize_twin_star(&g), None);
        } else {
            assert!(!(recognize_star(&g).is_some() && recognize_twin_star(&g).is_some()));
        }
    }
}

#[test]
fn strip_leaves_drops_the_diameter_by_exactly_two() {
    for n in 1..=10 {
        for t in nonisomorphic_trees(n) {
            let diam = t.induced_diameter();
            if diam > 3 {
                let stripped = strip_leaves(&t).unwrap();
                assert!(stripped.is_tree());
                assert_eq!(stripped.induced_diameter(), diam - 2, "tree: {t:?}");
            } else {
                assert!(strip_leaves(&t).is_err());
            }
        }
    }
}

#[test]
fn chosen_largest_component_is_maximal_up_to_seven_vertices() {
    for g in nonisomorphic_graphs_up_to(7) {
        let chosen = choose_largest_component(&g);
        let max_by_oracle = g
            .components()
            .iter()
            .map(VertexSubset::len)
            .max()
            .unwrap();
        assert_eq!(chosen.component.vertex_count(), max_by_oracle, "graph: {g:?}");
    }
}

#[test]
fn carving_sets_exist_at_min_degree_three_up_to_nine_vertices() {
    // same sweep as the acceptance criterion, one size larger; opt in with
    // HFED_SLOW_TESTS=1 since enumerating nine-vertex graphs takes minutes
    if std::env::var_os("HFED_SLOW_TESTS").is_none() {
        eprintln!("set HFED_SLOW_TESTS=1 to run the nine-vertex sweep");
        return;
    }
    for g in nonisomorphic_graphs(9) {
        let n = g.vertex_count();
        if !g.is_connected() || (0..n).any(|v| g.degree(v) < 3) {
            continue;
        }
        assert!(find_carving_set(&g, 3).is_some(), "graph: {g:?}");
    }
}

// ---------------------------------------------------------------------------
// constructions

proptest! {
    #[test]
    fn constructions_preserve_the_original_graph(g in arb_graph(5), k in 1usize..=2) {
        let original: VertexSubset = g.vertices().collect();

        let (attached, _) = clique_attach(&g, k).unwrap();
        prop_assert_eq!(attached.induced(&original), g.clone());

        let spec = PatternSpec::new(Graph::path(4), [1, 2].into_iter().collect()).unwrap();
        let (branched, _) = branch_gadget(&g, k, &spec).unwrap();
        prop_assert_eq!(branched.induced(&original), g.clone());

        // the join gadget keeps its first copy on the identity ids
        if g.is_connected() {
            let joined = hfed::join_gadget(&g, k).unwrap();
            prop_assert_eq!(joined.induced(&original), g);
        }
    }

    #[test]
    fn branch_gadget_output_size_is_bounded(g in arb_graph(5), k in 1usize..=2) {
        let spec = PatternSpec::new(Graph::path(5), [1, 2, 3].into_iter().collect()).unwrap();
        let (out, trace) = branch_gadget(&g, k, &spec).unwrap();
        let hfed::GadgetTrace::Branch(t) = trace else { unreachable!() };
        let bound = g.vertex_count()
            + t.bases.len() * (k + 1) * spec.pattern().vertex_count();
        prop_assert!(out.vertex_count() <= bound);
    }
}

// ---------------------------------------------------------------------------
// planner

#[test]
fn plans_are_sound_at_the_pattern_level_for_the_catalog() {
    let catalog = vec![
        Graph::star(3),
        Graph::star(4),
        Graph::twin_star(2, 1),
        Graph::twin_star(2, 2),
        Graph::twin_star(1, 3),
        Graph::path(5),
        Graph::path(6),
        Graph::path(7),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::complete(4),
        Graph::petersen(),
        Graph::matching(2),
        Graph::matching(3),
        Graph::disjoint_union(&[Graph::matching(2), Graph::new(1)]),
        Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)]),
        Graph::disjoint_union(&[Graph::path(3), Graph::path(3)]),
        Graph::disjoint_union(&[Graph::cycle(4), Graph::path(3), Graph::new(1)]),
    ];
    for h in catalog {
        let p = plan(&h).unwrap_or_else(|e| panic!("planning {h:?}: {e}"));
        assert!(plan_is_sound(&p), "unsound plan for {h:?}:\n{p}");
    }
}

// ---------------------------------------------------------------------------
// solver

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn yes_instances_stay_yes_with_more_budget(g in arb_graph(5), pi in 0usize..5, k in 0usize..=2) {
        let pattern = &small_patterns()[pi];
        let at_k = solve_branching(&Instance::new(g.clone(), k), pattern);
        let at_k1 = solve_branching(&Instance::new(g, k + 1), pattern);
        match (at_k, at_k1) {
            (Ok(a), Ok(b)) => prop_assert!(!a.is_yes() || b.is_yes()),
            (Err(SolverError::PatternHasNoEdges), Err(SolverError::PatternHasNoEdges)) => {}
            other => prop_assert!(false, "unexpected solver outcome: {:?}", other),
        }
    }

    #[test]
    fn certificates_delete_at_most_k_edges_and_reach_freeness(
        g in arb_graph(5), pi in 0usize..5, k in 0usize..=2
    ) {
        let pattern = &small_patterns()[pi];
        if let Ok(hfed::Solution::Yes(edges)) =
            solve_branching(&Instance::new(g.clone(), k), pattern)
        {
            prop_assert!(edges.len() <= k);
            let mut pruned = g;
            for e in edges.iter() {
                pruned.remove_edge(e.u(), e.v());
            }
            prop_assert!(is_free(&pruned, pattern));
        }
    }
}

// ---------------------------------------------------------------------------
// step soundness at six vertices (one size beyond the acceptance sweeps)

#[test]
fn step_soundness_extends_to_six_vertex_hosts() {
    let steps: Vec<ReductionStep> = vec![
        ReductionStep::Star { leaves: 3 },
        ReductionStep::TwinStar { l1: 2, l2: 2 },
        ReductionStep::DegreeStrip {
            target: Graph::path(5),
            degree: 1,
        },
        ReductionStep::ComponentLift {
            target: Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)]),
            designated: [0, 1, 2].into_iter().collect(),
        },
        ReductionStep::Copy {
            component: Graph::matching(1),
            copies: 2,
        },
    ];
    for step in &steps {
        let report =
            hfed::verify_step_equivalence(step, 6, 2, hfed::SweepMode::Exhaustive);
        assert!(
            report.failures.is_empty(),
            "six-vertex sweep failed for {step}:\n{report}"
        );
    }
}
