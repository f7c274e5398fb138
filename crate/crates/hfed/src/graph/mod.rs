//! Simple undirected graphs on dense 0-based vertex ids.
//!
//! Adjacency is stored as one bitset row per vertex so the backtracking
//! searches in [`iso`] and [`canon`] get O(1) membership tests and cheap
//! mask intersections. Equality of graphs is labeled equality (same vertex
//! count, same edge set), never isomorphism.

use std::collections::BTreeSet;
use std::fmt;

pub mod canon;
pub mod format;
pub mod iso;

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

/// An unordered pair of distinct vertex ids, stored with the smaller first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Panics if `a == b`; self-loops are not representable.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop ({a},{b}) is not a valid edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// A set of edges; the shape of solutions returned by the solvers and of
/// the bookkeeping recorded by the gadget constructions.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, Edge> {
        self.edges.iter()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl Extend<Edge> for EdgeSet {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        self.edges.extend(iter);
    }
}

/// A set of vertex ids, always interpreted relative to some graph.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexSubset {
    members: BTreeSet<usize>,
}

impl VertexSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn sorted_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSubset {
            members: iter.into_iter().collect(),
        }
    }
}

/// Simple undirected graph. No self-loops; adjacency kept symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Path on `n` vertices, 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star with `leaves` leaf vertices: vertex 0 is the center.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Twin-star: two adjacent centers 0 and 1 carrying `l1` and `l2` leaves.
    pub fn twin_star(l1: usize, l2: usize) -> Self {
        let mut edges = vec![(0, 1)];
        for i in 0..l1 {
            edges.push((0, 2 + i));
        }
        for i in 0..l2 {
            edges.push((1, 2 + l1 + i));
        }
        Graph::from_edges(l1 + l2 + 2, edges)
    }

    /// Disjoint union of `t` edges (a perfect matching on `2t` vertices).
    pub fn matching(t: usize) -> Self {
        Graph::from_edges(2 * t, (0..t).map(|i| (2 * i, 2 * i + 1)))
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, 5 spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub(crate) fn word_count(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.row(u)[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        assert!(u != v, "self-loops are not allowed");
        let w = self.words;
        self.adj[u * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.adj[v * w + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        let w = self.words;
        self.adj[u * w + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.adj[v * w + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
    }

    /// A copy of this graph with `e` removed.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let mut g = self.clone();
        g.remove_edge(e.u(), e.v());
        g
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    /// Same vertices; edge present iff absent here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Disjoint union; vertex ids of later graphs are shifted up.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let n: usize = parts.iter().map(|g| g.vertex_count()).sum();
        let mut out = Graph::new(n);
        let mut offset = 0;
        for g in parts {
            for e in g.edges() {
                out.add_edge(offset + e.u(), offset + e.v());
            }
            offset += g.vertex_count();
        }
        out
    }

    /// Same edges, `extra` additional isolated vertices.
    pub fn grown(&self, extra: usize) -> Graph {
        let mut out = Graph::new(self.n + extra);
        for e in self.edges() {
            out.add_edge(e.u(), e.v());
        }
        out
    }

    /// Induced subgraph on `subset`, renumbered to 0..len in ascending order
    /// of the original ids.
    pub fn induced(&self, subset: &VertexSubset) -> Graph {
        self.induced_with_map(subset).0
    }

    /// Like [`Graph::induced`], also returning `map[new_id] = old_id`.
    pub fn induced_with_map(&self, subset: &VertexSubset) -> (Graph, Vec<usize>) {
        let map = subset.sorted_vec();
        for &v in &map {
            assert!(v < self.n, "subset vertex {v} out of range");
        }
        let mut g = Graph::new(map.len());
        for i in 0..map.len() {
            for j in i + 1..map.len() {
                if self.has_edge(map[i], map[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, map)
    }

    /// Partition of the vertices into maximal connected pieces, ordered by
    /// smallest contained vertex id.
    pub fn components(&self) -> Vec<VertexSubset> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSubset::new();
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(v) = queue.pop() {
                comp.insert(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True for the empty graph and every graph with a single component.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected with exactly `n - 1` edges; the one-vertex graph counts.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() == self.n - 1
    }

    /// `Some(r)` iff every vertex has degree `r`; `None` for the empty graph.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let r = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == r).then_some(r)
    }

    /// Number of edges in a longest induced path (0 for edgeless graphs).
    ///
    /// Exhaustive search; meant for the small fixed patterns this toolkit
    /// works with, not for large hosts.
    pub fn induced_diameter(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let words = self.words;
        let mut best = 0usize;
        // banned = path vertices plus all neighbors of non-tip path vertices
        let mut banned = vec![0u64; words];
        for start in 0..self.n {
            banned.iter_mut().for_each(|w| *w = 0);
            banned[start / WORD_BITS] |= 1 << (start % WORD_BITS);
            self.extend_path(start, 0, &mut banned, &mut best);
        }
        best
    }

    fn extend_path(&self, tip: usize, len: usize, banned: &mut Vec<u64>, best: &mut usize) {
        if len > *best {
            *best = len;
        }
        let row = self.row(tip);
        let cands: Vec<usize> = (0..self.words)
            .flat_map(|wi| {
                let mut w = row[wi] & !banned[wi];
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let b = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(wi * WORD_BITS + b)
                    }
                })
            })
            .collect();
        for next in cands {
            let saved = banned.clone();
            // tip stops being the tip: its whole neighborhood is now off-limits
            for (wi, w) in banned.iter_mut().enumerate() {
                *w |= row[wi];
            }
            banned[next / WORD_BITS] |= 1 << (next % WORD_BITS);
            self.extend_path(next, len + 1, banned, best);
            *banned = saved;
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Displays in the graph file format (`p edge` header plus 1-based `e` lines).
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "p edge {} {}", self.n, edges.len())?;
        for e in edges {
            writeln!(f, "e {} {}", e.u() + 1, e.v() + 1)?;
        }
        Ok(())
    }
}
