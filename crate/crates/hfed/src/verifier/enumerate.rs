//! Exhaustive generation of non-isomorphic host graphs, plus the seeded
//! random generator used by the fuzzing mode.
//!
//! Graphs on `n` vertices are built by extending every graph on `n - 1`
//! vertices with one new vertex over all possible neighborhoods,
//! deduplicating by canonical key at each level.

use crate::graph::canon::{canonical_form, canonical_key, CanonKey};
use crate::graph::Graph;
use rand::Rng;
use std::collections::BTreeMap;

/// All non-isomorphic graphs on exactly `n >= 1` vertices, in canonical
/// form, deterministically ordered.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=9).contains(&n),
        "exhaustive enumeration is limited to 1..=9 vertices"
    );
    let mut level = vec![Graph::new(1)];
    for size in 2..=n {
        let mut seen: BTreeMap<CanonKey, Graph> = BTreeMap::new();
        for g in &level {
            for mask in 0u64..(1 << (size - 1)) {
                let mut h = g.grown(1);
                for v in 0..size - 1 {
                    if mask >> v & 1 == 1 {
                        h.add_edge(v, size - 1);
                    }
                }
                seen.entry(canonical_key(&h))
                    .or_insert_with(|| canonical_form(&h));
            }
        }
        level = seen.into_values().collect();
    }
    level
}

/// All non-isomorphic graphs on 1..=n vertices, smaller sizes first.
pub fn nonisomorphic_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(nonisomorphic_graphs).collect()
}

/// All non-isomorphic trees on exactly `n >= 1` vertices, built by leaf
/// attachment (every tree arises from a smaller tree plus one leaf).
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "trees need at least one vertex");
    let mut level = vec![Graph::new(1)];
    for size in 2..=n {
        let mut seen: BTreeMap<CanonKey, Graph> = BTreeMap::new();
        for t in &level {
            for attach in 0..size - 1 {
                let mut h = t.grown(1);
                h.add_edge(attach, size - 1);
                seen.entry(canonical_key(&h))
                    .or_insert_with(|| canonical_form(&h));
            }
        }
        level = seen.into_values().collect();
    }
    level
}

/// Erdős–Rényi-style G(n, p) sample.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
