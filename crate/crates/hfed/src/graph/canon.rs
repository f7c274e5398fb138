//! Canonical labeling for small graphs (at most 64 vertices).
//!
//! The canonical form minimizes the upper-triangle adjacency bitstring,
//! read column by column, over all vertex orderings. The search is plain
//! branch-and-bound on the ordering with two prunes: lexicographic column
//! comparison against the best string found so far, and collapsing of
//! interchangeable candidates (vertices with identical adjacency outside
//! the pair, whose transposition is an automorphism).
//!
//! Used to deduplicate host graphs during exhaustive sweeps and to break
//! ties deterministically; heavy-duty canonical labeling is a non-goal.

use super::Graph;

/// Total order on isomorphism classes: vertex count, then the canonical
/// adjacency bitstring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonKey {
    n: usize,
    bits: Vec<u64>,
}

struct Search {
    n: usize,
    rows: Vec<u64>,
    perm: Vec<usize>,
    used: u64,
    best_cols: Vec<u64>,
    best_perm: Vec<usize>,
    found: bool,
}

impl Search {
    fn column(&self, level: usize, v: usize) -> u64 {
        let mut col = 0u64;
        for i in 0..level {
            col = (col << 1) | (self.rows[self.perm[i]] >> v & 1);
        }
        col
    }

    fn run(&mut self, level: usize) {
        if level == self.n {
            self.best_perm.copy_from_slice(&self.perm);
            self.found = true;
            return;
        }
        let mut cands: Vec<(u64, usize)> = (0..self.n)
            .filter(|&v| self.used >> v & 1 == 0)
            .map(|v| (self.column(level, v), v))
            .collect();
        cands.sort_unstable();
        // drop candidates interchangeable with an earlier one
        let mut kept: Vec<(u64, usize)> = Vec::with_capacity(cands.len());
        'outer: for &(col, v) in &cands {
            for &(kcol, w) in &kept {
                if kcol != col {
                    continue;
                }
                let mask = !(1u64 << v | 1u64 << w);
                if self.rows[v] & mask == self.rows[w] & mask {
                    continue 'outer;
                }
            }
            kept.push((col, v));
        }
        for (col, v) in kept {
            if self.found {
                if col > self.best_cols[level] {
                    break;
                }
                if col < self.best_cols[level] {
                    self.best_cols[level] = col;
                    for slot in self.best_cols[level + 1..].iter_mut() {
                        *slot = u64::MAX;
                    }
                }
            } else {
                self.best_cols[level] = col;
            }
            self.perm.push(v);
            self.used |= 1 << v;
            self.run(level + 1);
            self.perm.pop();
            self.used &= !(1 << v);
        }
    }
}

/// The ordering realizing the canonical form: `perm[position] = original id`.
pub fn canonical_permutation(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    assert!(n <= 64, "canonical labeling supports at most 64 vertices");
    if n == 0 {
        return Vec::new();
    }
    let rows: Vec<u64> = (0..n)
        .map(|v| {
            let mut row = 0u64;
            for u in g.neighbors(v) {
                row |= 1 << u;
            }
            row
        })
        .collect();
    let mut s = Search {
        n,
        rows,
        perm: Vec::with_capacity(n),
        used: 0,
        best_cols: vec![u64::MAX; n],
        best_perm: vec![0; n],
        found: false,
    };
    s.run(0);
    s.best_perm
}

/// The canonically relabeled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let perm = canonical_permutation(g);
    let n = g.vertex_count();
    let mut out = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(perm[i], perm[j]) {
                out.add_edge(i, j);
            }
        }
    }
    out
}

/// Complete isomorphism invariant: equal keys iff isomorphic graphs.
pub fn canonical_key(g: &Graph) -> CanonKey {
    let form = canonical_form(g);
    let n = form.vertex_count();
    let mut bits = Vec::new();
    let mut cursor = 0usize;
    for j in 1..n {
        for i in 0..j {
            if cursor % 64 == 0 {
                bits.push(0u64);
            }
            if form.has_edge(i, j) {
                // most significant bit first, so Vec ordering is bitstring order
                *bits.last_mut().unwrap() |= 1 << (63 - cursor % 64);
            }
            cursor += 1;
        }
    }
    CanonKey { n, bits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::iso::are_isomorphic;

    #[test]
    fn relabeling_does_not_change_the_key() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let relabeled = Graph::from_edges(5, [(3, 2), (2, 0), (0, 4), (4, 1), (1, 3), (3, 0)]);
        assert!(are_isomorphic(&g, &relabeled));
        assert_eq!(canonical_key(&g), canonical_key(&relabeled));
    }

    #[test]
    fn different_graphs_get_different_keys() {
        assert_ne!(canonical_key(&Graph::path(4)), canonical_key(&Graph::star(3)));
        assert_ne!(canonical_key(&Graph::cycle(4)), canonical_key(&Graph::path(4)));
    }

    #[test]
    fn canonical_form_is_isomorphic_to_input() {
        for g in [
            Graph::petersen(),
            Graph::twin_star(2, 3),
            Graph::cycle(6),
            Graph::matching(3),
        ] {
            let form = canonical_form(&g);
            assert!(are_isomorphic(&g, &form));
            // idempotent
            assert_eq!(canonical_form(&form), form);
        }
    }

    #[test]
    fn extreme_graphs() {
        assert_eq!(canonical_form(&Graph::new(0)), Graph::new(0));
        assert_eq!(canonical_form(&Graph::new(1)), Graph::new(1));
        assert_eq!(canonical_form(&Graph::complete(6)), Graph::complete(6));
        assert_eq!(canonical_form(&Graph::new(6)), Graph::new(6));
    }
}
