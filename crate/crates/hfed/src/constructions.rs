//! The three gadget constructions behind every reduction step: branch
//! gadgets, clique attachment, and the join gadget.
//!
//! Each construction extends the input graph with fresh vertices allocated
//! after all original ids, grouped by base and then branch index, so traces
//! are reproducible byte for byte.

use crate::graph::iso::{enumerate_subgraph_copies, IsoMap};
use crate::graph::{Edge, EdgeSet, Graph, VertexSubset};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ConstructError {
    #[error("the deletion budget must be positive")]
    ZeroBudget,
    #[error("designated vertex set must be nonempty")]
    EmptyDesignated,
    #[error("designated vertex set must be a proper subset of the pattern vertices")]
    DesignatedNotProper,
    #[error("designated vertex {0} is not a pattern vertex")]
    DesignatedOutOfRange(usize),
    #[error("labelling must be a bijection on the pattern vertices")]
    InvalidLabelling,
    #[error("the join gadget requires a nonempty connected component")]
    DisconnectedJoinComponent,
}

/// A forbidden pattern together with a designated vertex subset and a fixed
/// labelling of the pattern vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternSpec {
    pattern: Graph,
    designated: VertexSubset,
    labelling: Vec<usize>,
}

impl PatternSpec {
    /// Identity labelling.
    pub fn new(pattern: Graph, designated: VertexSubset) -> Result<Self, ConstructError> {
        let labelling = (0..pattern.vertex_count()).collect();
        Self::with_labelling(pattern, designated, labelling)
    }

    pub fn with_labelling(
        pattern: Graph,
        designated: VertexSubset,
        labelling: Vec<usize>,
    ) -> Result<Self, ConstructError> {
        if let Some(v) = designated.iter().find(|&v| v >= pattern.vertex_count()) {
            return Err(ConstructError::DesignatedOutOfRange(v));
        }
        if labelling.len() != pattern.vertex_count() {
            return Err(ConstructError::InvalidLabelling);
        }
        let mut seen: Vec<usize> = labelling.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != labelling.len() {
            return Err(ConstructError::InvalidLabelling);
        }
        Ok(PatternSpec {
            pattern,
            designated,
            labelling,
        })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn designated(&self) -> &VertexSubset {
        &self.designated
    }

    pub fn labelling(&self) -> &[usize] {
        &self.labelling
    }

    /// Pattern vertices outside the designated set, ascending.
    pub fn outside(&self) -> Vec<usize> {
        self.pattern
            .vertices()
            .filter(|&v| !self.designated.contains(v))
            .collect()
    }

    /// Pattern edges with at least one endpoint outside the designated set.
    pub fn cross_edges(&self) -> Vec<Edge> {
        self.pattern
            .edges()
            .into_iter()
            .filter(|e| !(self.designated.contains(e.u()) && self.designated.contains(e.v())))
            .collect()
    }
}

/// One branch attached to a base: its fresh vertices and the edges added
/// with them.
#[derive(Clone, Debug)]
pub struct BranchArm {
    pub vertices: VertexSubset,
    pub edges: EdgeSet,
}

/// One base: a subgraph copy of the designated part of the pattern,
/// the isomorphism onto pattern vertex ids, and the attached branches.
#[derive(Clone, Debug)]
pub struct BaseTrace {
    pub vertices: VertexSubset,
    pub edges: EdgeSet,
    /// base vertex in the host -> pattern vertex id (inside the designated set)
    pub iso: IsoMap,
    pub branches: Vec<BranchArm>,
}

#[derive(Clone, Debug)]
pub struct BranchGadgetTrace {
    pub original: VertexSubset,
    pub bases: Vec<BaseTrace>,
}

/// One attached clique: an original anchor vertex plus the fresh vertices
/// forming a clique with it.
#[derive(Clone, Debug)]
pub struct CliqueArm {
    pub anchor: usize,
    pub vertices: VertexSubset,
    pub edges: EdgeSet,
}

#[derive(Clone, Debug)]
pub struct CliqueAttachTrace {
    pub original: VertexSubset,
    pub cliques: Vec<CliqueArm>,
}

/// Bookkeeping emitted by the constructions, enabling structural
/// verification of the outputs.
#[derive(Clone, Debug)]
pub enum GadgetTrace {
    Branch(BranchGadgetTrace),
    Clique(CliqueAttachTrace),
}

fn fmt_vertices(vs: &VertexSubset) -> String {
    if vs.is_empty() {
        "-".to_string()
    } else {
        vs.iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn fmt_edges(es: &EdgeSet) -> String {
    if es.is_empty() {
        "-".to_string()
    } else {
        es.iter()
            .map(|e| format!("{}-{}", e.u() + 1, e.v() + 1))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for GadgetTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetTrace::Branch(t) => {
                writeln!(f, "original {}", fmt_vertices(&t.original))?;
                for base in &t.bases {
                    let iso = base
                        .iso
                        .iter()
                        .map(|(c, p)| format!("{}:{}", c + 1, p + 1))
                        .collect::<Vec<_>>()
                        .join(",");
                    writeln!(
                        f,
                        "base v={} e={} iso={}",
                        fmt_vertices(&base.vertices),
                        fmt_edges(&base.edges),
                        iso
                    )?;
                    for arm in &base.branches {
                        writeln!(
                            f,
                            "branch v={} e={}",
                            fmt_vertices(&arm.vertices),
                            fmt_edges(&arm.edges)
                        )?;
                    }
                }
                Ok(())
            }
            GadgetTrace::Clique(t) => {
                writeln!(f, "original {}", fmt_vertices(&t.original))?;
                for arm in &t.cliques {
                    writeln!(
                        f,
                        "clique anchor={} v={} e={}",
                        arm.anchor + 1,
                        fmt_vertices(&arm.vertices),
                        fmt_edges(&arm.edges)
                    )?;
                }
                Ok(())
            }
        }
    }
}

/// For every subgraph copy of the designated part of the pattern in `g`,
/// attaches `k + 1` fresh branches, each completing its base to a full copy
/// of the pattern that extends the base isomorphism. The input graph stays
/// an induced subgraph of the output on the original vertex ids.
pub fn branch_gadget(
    g: &Graph,
    k: usize,
    spec: &PatternSpec,
) -> Result<(Graph, GadgetTrace), ConstructError> {
    if k == 0 {
        return Err(ConstructError::ZeroBudget);
    }
    let (out, trace) = branch_gadget_arms(g, spec, k + 1)?;
    Ok((out, GadgetTrace::Branch(trace)))
}

/// Core of the branch gadget with an explicit branch count. Only the public
/// wrapper (k + 1 branches) is a faithful construction; other counts exist
/// for the verifier's mutation sweeps.
pub(crate) fn branch_gadget_arms(
    g: &Graph,
    spec: &PatternSpec,
    branch_count: usize,
) -> Result<(Graph, BranchGadgetTrace), ConstructError> {
    if spec.designated().is_empty() {
        return Err(ConstructError::EmptyDesignated);
    }
    if spec.designated().len() >= spec.pattern().vertex_count() {
        return Err(ConstructError::DesignatedNotProper);
    }

    let (core, core_to_pattern) = spec.pattern().induced_with_map(spec.designated());
    let outside = spec.outside();
    let cross = spec.cross_edges();
    let bases = enumerate_subgraph_copies(g, &core);

    let n = g.vertex_count();
    let fresh_total = bases.len() * branch_count * outside.len();
    let mut out = g.grown(fresh_total);
    let mut next = n;
    let mut base_traces = Vec::with_capacity(bases.len());

    for copy in &bases {
        // host base vertex -> pattern vertex id (composing through the
        // renumbered designated subgraph)
        let iso = IsoMap::from_pairs(
            copy.iso
                .iter()
                .map(|(host_v, core_id)| (host_v, core_to_pattern[core_id])),
        );
        let image_of = |pattern_v: usize| -> usize {
            copy.iso
                .iter()
                .find(|&(_, core_id)| core_to_pattern[core_id] == pattern_v)
                .map(|(host_v, _)| host_v)
                .expect("designated pattern vertex has a base image")
        };
        let mut branches = Vec::with_capacity(branch_count);
        for _ in 0..branch_count {
            let fresh_of = |pattern_v: usize| -> usize {
                let idx = outside
                    .iter()
                    .position(|&p| p == pattern_v)
                    .expect("outside pattern vertex");
                next + idx
            };
            let mut arm_edges = EdgeSet::new();
            for e in &cross {
                let endpoint = |pv: usize| {
                    if spec.designated().contains(pv) {
                        image_of(pv)
                    } else {
                        fresh_of(pv)
                    }
                };
                let a = endpoint(e.u());
                let b = endpoint(e.v());
                out.add_edge(a, b);
                arm_edges.insert(Edge::new(a, b));
            }
            branches.push(BranchArm {
                vertices: (next..next + outside.len()).collect(),
                edges: arm_edges,
            });
            next += outside.len();
        }
        base_traces.push(BaseTrace {
            vertices: copy.vertices.clone(),
            edges: copy.edges.clone(),
            iso,
            branches,
        });
    }

    Ok((
        out,
        BranchGadgetTrace {
            original: (0..n).collect(),
            bases: base_traces,
        },
    ))
}

/// Attaches `k + 1` fresh vertices to every original vertex, forming with it
/// a clique on `k + 2` vertices.
pub fn clique_attach(g: &Graph, k: usize) -> Result<(Graph, GadgetTrace), ConstructError> {
    if k == 0 {
        return Err(ConstructError::ZeroBudget);
    }
    let (out, trace) = clique_attach_sized(g, k + 1);
    Ok((out, GadgetTrace::Clique(trace)))
}

/// Clique attachment with an explicit per-vertex count; counts other than
/// k + 1 exist for the verifier's mutation sweeps.
pub(crate) fn clique_attach_sized(g: &Graph, added: usize) -> (Graph, CliqueAttachTrace) {
    let n = g.vertex_count();
    let mut out = g.grown(n * added);
    let mut cliques = Vec::with_capacity(n);
    let mut next = n;
    for anchor in 0..n {
        let members: Vec<usize> = std::iter::once(anchor)
            .chain(next..next + added)
            .collect();
        let mut edges = EdgeSet::new();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                out.add_edge(members[i], members[j]);
                edges.insert(Edge::new(members[i], members[j]));
            }
        }
        cliques.push(CliqueArm {
            anchor,
            vertices: (next..next + added).collect(),
            edges,
        });
        next += added;
    }
    (
        out,
        CliqueAttachTrace {
            original: (0..n).collect(),
            cliques,
        },
    )
}

/// `k + 1` disjoint copies of a connected graph with every cross-copy vertex
/// pair made adjacent. The output contains no two disjoint induced copies of
/// the component.
pub fn join_gadget(h1: &Graph, k: usize) -> Result<Graph, ConstructError> {
    if k == 0 {
        return Err(ConstructError::ZeroBudget);
    }
    if h1.vertex_count() == 0 || !h1.is_connected() {
        return Err(ConstructError::DisconnectedJoinComponent);
    }
    let copies = k + 1;
    let n1 = h1.vertex_count();
    let parts: Vec<Graph> = (0..copies).map(|_| h1.clone()).collect();
    let mut out = Graph::disjoint_union(&parts);
    for ci in 0..copies {
        for cj in ci + 1..copies {
            for u in 0..n1 {
                for v in 0..n1 {
                    out.add_edge(ci * n1 + u, cj * n1 + v);
                }
            }
        }
    }
    Ok(out)
}
