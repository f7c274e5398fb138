//! Recognition of the pattern classes the reduction chains cover, plus the
//! structural witnesses (carving sets, stripped trees, largest components)
//! that parameterize the reductions.

use crate::graph::canon::{canonical_key, CanonKey};
use crate::graph::{Graph, VertexSubset};
use std::fmt;
use thiserror::Error;

/// What kind of forbidden pattern a graph is, as far as the reduction
/// chains are concerned.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    /// At most one edge; deletion is solvable in polynomial time, nothing to reduce.
    PolynomialTime,
    /// Star with `leaves >= 2` leaf vertices (tree of induced diameter 2).
    Star { leaves: usize },
    /// Twin-star: two adjacent centers with `l1 <= l2` pendant leaves each.
    TwinStar { l1: usize, l2: usize },
    /// Tree of induced diameter greater than 3.
    GeneralTree { diameter: usize },
    /// Connected 2-regular graph, i.e. the cycle C_len.
    Cycle { len: usize },
    /// Connected r-regular graph with r >= 3.
    RegularHigh { degree: usize },
    /// `edges` disjoint edges plus `isolated` isolated vertices, edges >= 2.
    MatchingUnion { edges: usize, isolated: usize },
    /// Disconnected, with a chosen largest component that is a tree or
    /// regular: classifies through that component.
    CompositeLargest {
        inner: Box<Classification>,
        copies: usize,
        leftover: Vec<Graph>,
    },
    /// Outside the covered classes; never guessed.
    Unsupported,
}

impl Classification {
    fn params_string(&self) -> String {
        match self {
            Classification::PolynomialTime | Classification::Unsupported => "-".into(),
            Classification::Star { leaves } => leaves.to_string(),
            Classification::TwinStar { l1, l2 } => format!("{l1},{l2}"),
            Classification::GeneralTree { diameter } => diameter.to_string(),
            Classification::Cycle { len } => len.to_string(),
            Classification::RegularHigh { degree } => degree.to_string(),
            Classification::MatchingUnion { edges, isolated } => format!("{edges},{isolated}"),
            Classification::CompositeLargest {
                inner,
                copies,
                leftover,
            } => format!(
                "inner={}({}),t={},rest={}",
                inner.name(),
                inner.params_string(),
                copies,
                leftover.len()
            ),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Classification::PolynomialTime => "PolynomialTime",
            Classification::Star { .. } => "Star",
            Classification::TwinStar { .. } => "TwinStar",
            Classification::GeneralTree { .. } => "GeneralTree",
            Classification::Cycle { .. } => "Cycle",
            Classification::RegularHigh { .. } => "RegularHigh",
            Classification::MatchingUnion { .. } => "MatchingUnion",
            Classification::CompositeLargest { .. } => "CompositeLargest",
            Classification::Unsupported => "Unsupported",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationResult {
    pub kind: Classification,
    pub witness: Option<VertexSubset>,
}

/// One line: `class=<kind> params=<...> witness=<1-based vertex list or '-'>`.
impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let witness = match &self.witness {
            None => "-".to_string(),
            Some(ws) => ws
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(","),
        };
        write!(
            f,
            "class={} params={} witness={}",
            self.kind.name(),
            self.kind.params_string(),
            witness
        )
    }
}

/// Shape of a size-3 carving set; a 3-vertex connected graph is determined
/// by its edge count.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CarvingShape {
    PathThree,
    Triangle,
    OtherConnected,
}

/// A connected vertex set whose removal keeps the graph connected.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CarvingSet {
    pub vertices: VertexSubset,
    pub shape: CarvingShape,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum StripError {
    #[error("leaf stripping requires a tree")]
    NotATree,
    #[error("leaf stripping requires induced diameter > 3, got {0}")]
    DiameterTooSmall(usize),
}

/// `Some(l)` iff `g` is a star with `l >= 2` leaves, i.e. a tree of induced
/// diameter 2.
pub fn recognize_star(g: &Graph) -> Option<usize> {
    (g.is_tree() && g.induced_diameter() == 2).then(|| g.vertex_count() - 1)
}

/// `Some((l1, l2))` with `l1 <= l2` iff `g` is a tree of induced diameter 3:
/// two adjacent centers carrying `l1` and `l2` pendant leaves.
pub fn recognize_twin_star(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_tree() || g.induced_diameter() != 3 {
        return None;
    }
    let centers: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= 2).collect();
    debug_assert_eq!(centers.len(), 2);
    debug_assert!(g.has_edge(centers[0], centers[1]));
    let l1 = g.degree(centers[0]) - 1;
    let l2 = g.degree(centers[1]) - 1;
    Some((l1.min(l2), l1.max(l2)))
}

/// Deletes all leaf vertices of a tree with induced diameter > 3. The result
/// is a tree whose induced diameter is exactly two less.
pub fn strip_leaves(t: &Graph) -> Result<Graph, StripError> {
    if !t.is_tree() {
        return Err(StripError::NotATree);
    }
    let diam = t.induced_diameter();
    if diam <= 3 {
        return Err(StripError::DiameterTooSmall(diam));
    }
    let internal: VertexSubset = t.vertices().filter(|&v| t.degree(v) >= 2).collect();
    Ok(t.induced(&internal))
}

fn shape_of(induced: &Graph) -> CarvingShape {
    if induced.vertex_count() == 3 {
        match induced.edge_count() {
            2 => CarvingShape::PathThree,
            3 => CarvingShape::Triangle,
            _ => CarvingShape::OtherConnected,
        }
    } else {
        CarvingShape::OtherConnected
    }
}

/// Lexicographically least size-`d` subset that induces a connected graph
/// and leaves a nonempty connected remainder, if one exists. `None` also
/// covers disconnected input.
pub fn find_carving_set(h: &Graph, d: usize) -> Option<CarvingSet> {
    find_carving_set_where(h, d, |_| true)
}

/// Same search restricted by a predicate on the induced shape; lets callers
/// prefer one shape over another without a second full scan.
pub(crate) fn find_carving_set_where(
    h: &Graph,
    d: usize,
    accept: impl Fn(CarvingShape) -> bool,
) -> Option<CarvingSet> {
    let n = h.vertex_count();
    if d == 0 || d >= n || !h.is_connected() {
        return None;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(d);
    search_carving(h, d, 0, &mut subset, &accept)
}

fn search_carving(
    h: &Graph,
    d: usize,
    start: usize,
    subset: &mut Vec<usize>,
    accept: &impl Fn(CarvingShape) -> bool,
) -> Option<CarvingSet> {
    if subset.len() == d {
        let vs: VertexSubset = subset.iter().copied().collect();
        let inside = h.induced(&vs);
        if !inside.is_connected() {
            return None;
        }
        let shape = shape_of(&inside);
        if !accept(shape) {
            return None;
        }
        let rest: VertexSubset = h.vertices().filter(|v| !vs.contains(*v)).collect();
        let outside = h.induced(&rest);
        if outside.vertex_count() == 0 || !outside.is_connected() {
            return None;
        }
        return Some(CarvingSet { vertices: vs, shape });
    }
    for v in start..h.vertex_count() {
        subset.push(v);
        if let Some(found) = search_carving(h, d, v + 1, subset, accept) {
            subset.pop();
            return Some(found);
        }
        subset.pop();
    }
    None
}

/// The deterministic largest-component choice and its bookkeeping.
#[derive(Clone, Debug)]
pub struct LargestComponent {
    /// The chosen component, renumbered to 0..n.
    pub component: Graph,
    /// Number of components isomorphic to the chosen one.
    pub copies: usize,
    /// Remaining components (not isomorphic to the chosen one), renumbered.
    pub leftover: Vec<Graph>,
    /// Vertices of the chosen representative inside the original graph.
    pub component_vertices: VertexSubset,
    /// Vertices of all components isomorphic to the chosen one.
    pub union_vertices: VertexSubset,
}

/// Picks a largest component, preferring one that is a tree or regular, with
/// ties broken by lexicographic canonical order, then counts how many
/// components are isomorphic to it.
pub fn choose_largest_component(h: &Graph) -> LargestComponent {
    assert!(h.vertex_count() >= 1, "graph must be nonempty");
    struct Comp {
        vertices: VertexSubset,
        graph: Graph,
        key: CanonKey,
        nice: bool,
    }
    let comps: Vec<Comp> = h
        .components()
        .into_iter()
        .map(|vs| {
            let graph = h.induced(&vs);
            let key = canonical_key(&graph);
            let nice = graph.is_tree() || graph.regular_degree().is_some();
            Comp {
                vertices: vs,
                graph,
                key,
                nice,
            }
        })
        .collect();
    let max_size = comps.iter().map(|c| c.graph.vertex_count()).max().unwrap();
    let chosen = comps
        .iter()
        .filter(|c| c.graph.vertex_count() == max_size)
        .min_by_key(|c| (!c.nice, c.key.clone()))
        .unwrap();

    let mut copies = 0;
    let mut leftover = Vec::new();
    let mut union_vertices = VertexSubset::new();
    for c in &comps {
        if c.key == chosen.key {
            copies += 1;
            for v in c.vertices.iter() {
                union_vertices.insert(v);
            }
        } else {
            leftover.push(c.graph.clone());
        }
    }
    LargestComponent {
        component: chosen.graph.clone(),
        copies,
        leftover,
        component_vertices: chosen.vertices.clone(),
        union_vertices,
    }
}

/// Classifies a forbidden pattern into the class its reduction chain starts
/// from. Never guesses: anything outside the covered classes is
/// `Unsupported`.
pub fn classify(h: &Graph) -> ClassificationResult {
    assert!(h.vertex_count() >= 1, "pattern must have a vertex");
    if h.edge_count() <= 1 {
        return ClassificationResult {
            kind: Classification::PolynomialTime,
            witness: None,
        };
    }
    let comps = h.components();
    if comps.iter().all(|c| c.len() <= 2) {
        let edges = comps.iter().filter(|c| c.len() == 2).count();
        let isolated = comps.len() - edges;
        debug_assert!(edges >= 2);
        return ClassificationResult {
            kind: Classification::MatchingUnion { edges, isolated },
            witness: None,
        };
    }
    if comps.len() == 1 {
        return ClassificationResult {
            kind: classify_connected(h),
            witness: None,
        };
    }
    // disconnected, some component with >= 3 vertices
    let largest = choose_largest_component(h);
    let inner = classify_connected(&largest.component);
    let supported = matches!(
        inner,
        Classification::Star { .. }
            | Classification::TwinStar { .. }
            | Classification::GeneralTree { .. }
            | Classification::Cycle { .. }
            | Classification::RegularHigh { .. }
    );
    if !supported {
        return ClassificationResult {
            kind: Classification::Unsupported,
            witness: None,
        };
    }
    ClassificationResult {
        kind: Classification::CompositeLargest {
            inner: Box::new(inner),
            copies: largest.copies,
            leftover: largest.leftover,
        },
        witness: Some(largest.component_vertices),
    }
}

/// Connected graphs with at least two edges.
fn classify_connected(h: &Graph) -> Classification {
    debug_assert!(h.is_connected() && h.edge_count() >= 2);
    if h.is_tree() {
        let diam = h.induced_diameter();
        return match diam {
            2 => Classification::Star {
                leaves: h.vertex_count() - 1,
            },
            3 => {
                let (l1, l2) = recognize_twin_star(h).expect("diameter-3 tree");
                Classification::TwinStar { l1, l2 }
            }
            d => Classification::GeneralTree { diameter: d },
        };
    }
    match h.regular_degree() {
        Some(2) => Classification::Cycle {
            len: h.vertex_count(),
        },
        Some(r) if r >= 3 => Classification::RegularHigh { degree: r },
        _ => Classification::Unsupported,
    }
}
