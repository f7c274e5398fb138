//! Backtracking enumeration of induced and subgraph copies of a small
//! pattern inside a host graph.
//!
//! Patterns here are small fixed graphs, so the search maps pattern vertices
//! one at a time onto host vertices, pruning candidates with bitset
//! intersections. Exponential cost in the pattern size is acceptable; cost in
//! the host size stays polynomial.

use super::{Edge, EdgeSet, Graph, VertexSubset};
use std::collections::{BTreeMap, BTreeSet};

const WORD_BITS: usize = 64;

/// Bijection from copy vertices (in the host) to pattern vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoMap {
    map: BTreeMap<usize, usize>,
}

impl IsoMap {
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        IsoMap {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, copy_vertex: usize) -> Option<usize> {
        self.map.get(&copy_vertex).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Pairs sorted by copy vertex.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&c, &p)| (c, p))
    }

    /// The image sequence over ascending copy vertices; the tiebreak order
    /// used when one deterministic map per copy is required.
    fn image_word(&self) -> Vec<usize> {
        self.map.values().copied().collect()
    }
}

/// One subgraph copy: its vertex set, the edges realizing the pattern, and a
/// deterministic isomorphism onto the pattern.
#[derive(Clone, Debug)]
pub struct SubgraphCopy {
    pub vertices: VertexSubset,
    pub edges: EdgeSet,
    pub iso: IsoMap,
}

/// Search effort meter shared by the matcher and the solvers.
#[derive(Debug)]
pub(crate) struct WorkBudget {
    left: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapacityExceeded;

impl WorkBudget {
    pub(crate) fn new(limit: u64) -> Self {
        WorkBudget { left: limit }
    }

    pub(crate) fn unlimited() -> Self {
        WorkBudget { left: u64::MAX }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), CapacityExceeded> {
        if self.left == 0 {
            return Err(CapacityExceeded);
        }
        self.left -= 1;
        Ok(())
    }
}

/// Order pattern vertices so that each one (after the first of its
/// component) is adjacent to an already-placed vertex. Components are taken
/// largest first; within a component, picks favor connection count, then
/// degree, then the smaller id.
fn matching_order(pattern: &Graph) -> Vec<usize> {
    let mut comps: Vec<Vec<usize>> = pattern
        .components()
        .iter()
        .map(VertexSubset::sorted_vec)
        .collect();
    comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));

    let mut order = Vec::with_capacity(pattern.vertex_count());
    for comp in comps {
        let mut remaining: BTreeSet<usize> = comp.into_iter().collect();
        let mut chosen: Vec<usize> = Vec::new();
        while !remaining.is_empty() {
            let next = remaining
                .iter()
                .copied()
                .max_by_key(|&v| {
                    let conn = chosen.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                    (conn, pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            remaining.remove(&next);
            chosen.push(next);
        }
        order.extend(chosen);
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    induced: bool,
    /// per order slot: hosts with enough degree for that pattern vertex
    degree_ok: Vec<Vec<u64>>,
    assigned: Vec<usize>,
    used: Vec<u64>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, induced: bool) -> Self {
        let order = matching_order(pattern);
        let words = host.word_count();
        let degree_ok = order
            .iter()
            .map(|&p| {
                let need = pattern.degree(p);
                let mut mask = vec![0u64; words];
                for v in host.vertices() {
                    if host.degree(v) >= need {
                        mask[v / WORD_BITS] |= 1 << (v % WORD_BITS);
                    }
                }
                mask
            })
            .collect();
        Matcher {
            host,
            pattern,
            order,
            induced,
            degree_ok,
            assigned: Vec::new(),
            used: vec![0u64; words],
        }
    }

    /// Runs the search; `visit` receives `map[pattern_vertex] = host_vertex`
    /// for every complete embedding and returns `false` to stop early.
    fn run(
        &mut self,
        budget: &mut WorkBudget,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<(), CapacityExceeded> {
        if self.pattern.vertex_count() > self.host.vertex_count() {
            return Ok(());
        }
        self.recurse(0, budget, visit)?;
        Ok(())
    }

    fn recurse(
        &mut self,
        slot: usize,
        budget: &mut WorkBudget,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, CapacityExceeded> {
        let np = self.pattern.vertex_count();
        if slot == np {
            let mut map = vec![0usize; np];
            for (i, &p) in self.order.iter().enumerate() {
                map[p] = self.assigned[i];
            }
            return Ok(visit(&map));
        }
        let words = self.host.word_count();
        let p = self.order[slot];
        let mut cand = self.degree_ok[slot].clone();
        for w in 0..words {
            cand[w] &= !self.used[w];
        }
        for (i, &q) in self.order.iter().enumerate().take(slot) {
            let hrow = self.host.row(self.assigned[i]);
            if self.pattern.has_edge(p, q) {
                for w in 0..words {
                    cand[w] &= hrow[w];
                }
            } else if self.induced {
                for w in 0..words {
                    cand[w] &= !hrow[w];
                }
            }
        }
        for wi in 0..words {
            let mut word = cand[wi];
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                let v = wi * WORD_BITS + b;
                budget.tick()?;
                self.assigned.push(v);
                self.used[wi] |= 1 << b;
                let keep_going = self.recurse(slot + 1, budget, visit)?;
                self.assigned.pop();
                self.used[wi] &= !(1 << b);
                if !keep_going {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All vertex subsets of `host` inducing a graph isomorphic to `pattern`,
/// deduplicated, in ascending lexicographic order of sorted vertex ids.
pub fn enumerate_induced_copies(host: &Graph, pattern: &Graph) -> Vec<VertexSubset> {
    assert!(pattern.vertex_count() >= 1, "pattern must have a vertex");
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut m = Matcher::new(host, pattern, true);
    m.run(&mut WorkBudget::unlimited(), &mut |map| {
        let mut vs: Vec<usize> = map.to_vec();
        vs.sort_unstable();
        sets.insert(vs);
        true
    })
    .expect("unlimited budget");
    sets.into_iter()
        .map(|vs| vs.into_iter().collect())
        .collect()
}

/// First induced copy in the deterministic search order, if any.
pub fn find_induced_copy(host: &Graph, pattern: &Graph) -> Option<VertexSubset> {
    find_induced_copy_budgeted(host, pattern, &mut WorkBudget::unlimited())
        .expect("unlimited budget")
}

pub(crate) fn find_induced_copy_budgeted(
    host: &Graph,
    pattern: &Graph,
    budget: &mut WorkBudget,
) -> Result<Option<VertexSubset>, CapacityExceeded> {
    assert!(pattern.vertex_count() >= 1, "pattern must have a vertex");
    let mut found: Option<VertexSubset> = None;
    let mut m = Matcher::new(host, pattern, true);
    m.run(budget, &mut |map| {
        found = Some(map.iter().copied().collect());
        false
    })?;
    Ok(found)
}

/// True iff `host` contains no induced copy of `pattern`.
pub fn is_free(host: &Graph, pattern: &Graph) -> bool {
    find_induced_copy(host, pattern).is_none()
}

/// All subgraph (not necessarily induced) copies of `pattern` in `host`,
/// deduplicated by (vertex set, edge set) and carrying one deterministic
/// isomorphism each: the lexicographically least map over ascending copy
/// vertices. Output is sorted by (vertex set, edge set).
pub fn enumerate_subgraph_copies(host: &Graph, pattern: &Graph) -> Vec<SubgraphCopy> {
    assert!(pattern.vertex_count() >= 1, "pattern must have a vertex");
    let pattern_edges = pattern.edges();
    let mut copies: BTreeMap<(Vec<usize>, Vec<Edge>), IsoMap> = BTreeMap::new();
    let mut m = Matcher::new(host, pattern, false);
    m.run(&mut WorkBudget::unlimited(), &mut |map| {
        let mut vs: Vec<usize> = map.to_vec();
        vs.sort_unstable();
        let mut es: Vec<Edge> = pattern_edges
            .iter()
            .map(|e| Edge::new(map[e.u()], map[e.v()]))
            .collect();
        es.sort_unstable();
        let iso = IsoMap::from_pairs(map.iter().enumerate().map(|(p, &h)| (h, p)));
        copies
            .entry((vs, es))
            .and_modify(|best| {
                if iso.image_word() < best.image_word() {
                    *best = iso.clone();
                }
            })
            .or_insert(iso);
        true
    })
    .expect("unlimited budget");
    copies
        .into_iter()
        .map(|((vs, es), iso)| SubgraphCopy {
            vertices: vs.into_iter().collect(),
            edges: es.into_iter().collect(),
            iso,
        })
        .collect()
}

/// Labeled-blind graph equality.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    if a.vertex_count() == 0 {
        return true;
    }
    // a full-size induced embedding of a into b is an isomorphism
    find_induced_copy(b, a).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_copies_of_p3() {
        // host=P4 -> 2 subsets
        assert_eq!(enumerate_induced_copies(&Graph::path(4), &Graph::path(3)).len(), 2);
        // host=K4 -> none
        assert_eq!(enumerate_induced_copies(&Graph::complete(4), &Graph::path(3)).len(), 0);
        // host=C5 -> 5 subsets
        assert_eq!(enumerate_induced_copies(&Graph::cycle(5), &Graph::path(3)).len(), 5);
    }

    #[test]
    fn induced_copy_subsets_are_sorted_and_isomorphic() {
        let host = Graph::cycle(6);
        let pattern = Graph::path(4);
        let copies = enumerate_induced_copies(&host, &pattern);
        let mut prev: Option<Vec<usize>> = None;
        for c in &copies {
            let vs = c.sorted_vec();
            if let Some(p) = prev {
                assert!(p < vs);
            }
            assert!(are_isomorphic(&host.induced(c), &pattern));
            prev = Some(vs);
        }
    }

    #[test]
    fn subgraph_copies_of_p3_in_k3() {
        // three ways to drop one edge of the triangle
        let copies = enumerate_subgraph_copies(&Graph::complete(3), &Graph::path(3));
        assert_eq!(copies.len(), 3);
        for c in &copies {
            assert_eq!(c.vertices.len(), 3);
            assert_eq!(c.edges.len(), 2);
            assert_eq!(c.iso.len(), 3);
        }
    }

    #[test]
    fn subgraph_copy_of_k3_in_k3_is_unique() {
        assert_eq!(enumerate_subgraph_copies(&Graph::complete(3), &Graph::complete(3)).len(), 1);
    }

    #[test]
    fn no_p3_subgraph_in_2k2() {
        assert_eq!(enumerate_subgraph_copies(&Graph::matching(2), &Graph::path(3)).len(), 0);
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&Graph::complete(4), &Graph::path(3)));
        assert!(!is_free(&Graph::path(4), &Graph::path(4)));
        assert!(!is_free(&Graph::cycle(6), &Graph::matching(2)));
    }

    #[test]
    fn disconnected_patterns_match() {
        // C6 contains an induced 2K2 (opposite edges)
        let copies = enumerate_induced_copies(&Graph::cycle(6), &Graph::matching(2));
        assert!(!copies.is_empty());
        for c in &copies {
            assert!(are_isomorphic(&Graph::cycle(6).induced(c), &Graph::matching(2)));
        }
    }

    #[test]
    fn isomorphism_basics() {
        assert!(are_isomorphic(&Graph::cycle(5).complement(), &Graph::cycle(5)));
        assert!(!are_isomorphic(&Graph::path(4), &Graph::star(3)));
        let relabeled = Graph::from_edges(4, [(3, 1), (1, 0), (0, 2)]);
        assert!(are_isomorphic(&relabeled, &Graph::path(4)));
    }

    #[test]
    fn subgraph_iso_map_is_least() {
        // path 0-1-2 in triangle {0,1,2} minus edge (0,2): center must map to
        // pattern center 1; ends get the smaller pattern ids in order.
        let host = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let copies = enumerate_subgraph_copies(&host, &Graph::path(3));
        assert_eq!(copies.len(), 1);
        let pairs: Vec<(usize, usize)> = copies[0].iso.iter().collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1), (2, 2)]);
    }
}
