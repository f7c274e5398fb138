//! Exact deciders for pattern-free edge deletion on small instances: a
//! bounded search tree and an independent brute-force oracle. These make
//! every reduction's if-and-only-if claim testable.

use crate::graph::iso::{find_induced_copy_budgeted, is_free, WorkBudget};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::planner::Instance;
use std::fmt;
use thiserror::Error;

/// Outcome of a solve: a witness edge set whose removal makes the graph
/// pattern-free, or a definitive no.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Solution {
    Yes(EdgeSet),
    No,
}

impl Solution {
    pub fn is_yes(&self) -> bool {
        matches!(self, Solution::Yes(_))
    }

    pub fn answer(&self) -> &'static str {
        if self.is_yes() {
            "yes"
        } else {
            "no"
        }
    }
}

/// `yes e u1 v1 e u2 v2 ...` (1-based) or `no`.
impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::No => write!(f, "no"),
            Solution::Yes(edges) => {
                write!(f, "yes")?;
                for e in edges.iter() {
                    write!(f, " e {} {}", e.u() + 1, e.v() + 1)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SolverError {
    #[error("pattern has no edges; deletion can never remove it")]
    PatternHasNoEdges,
    #[error("solver capacity exceeded")]
    CapacityExceeded,
}

/// Caps on the search effort; exceeding them is an explicit error, never a
/// silent wrong answer.
#[derive(Clone, Copy, Debug)]
pub struct SolveLimits {
    /// Backtracking steps across the whole solve (copy searches included).
    pub max_steps: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            max_steps: 50_000_000,
        }
    }
}

/// Instrumentation counters for the bounded search tree.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    /// Search tree nodes visited.
    pub nodes: u64,
    /// Nodes where the budget hit zero with a copy still present.
    pub exhausted_leaves: u64,
}

/// Bounded search tree: find an induced copy, branch on deleting each of its
/// edges. Sound and complete for the given budget.
pub fn solve_branching(inst: &Instance, pattern: &Graph) -> Result<Solution, SolverError> {
    solve_branching_limited(inst, pattern, &SolveLimits::default())
}

pub fn solve_branching_limited(
    inst: &Instance,
    pattern: &Graph,
    limits: &SolveLimits,
) -> Result<Solution, SolverError> {
    Ok(solve_branching_instrumented(inst, pattern, limits)?.0)
}

pub fn solve_branching_instrumented(
    inst: &Instance,
    pattern: &Graph,
    limits: &SolveLimits,
) -> Result<(Solution, SolveStats), SolverError> {
    if pattern.edge_count() == 0 {
        return Err(SolverError::PatternHasNoEdges);
    }
    let mut budget = WorkBudget::new(limits.max_steps);
    let mut stats = SolveStats::default();
    let mut deleted: Vec<Edge> = Vec::new();
    let solution = branch(
        &inst.graph,
        inst.budget,
        pattern,
        &mut deleted,
        &mut budget,
        &mut stats,
    )
    .map_err(|_| SolverError::CapacityExceeded)?;
    let solution = match solution {
        Some(edges) => Solution::Yes(edges.into_iter().collect()),
        None => Solution::No,
    };
    Ok((solution, stats))
}

fn branch(
    g: &Graph,
    remaining: usize,
    pattern: &Graph,
    deleted: &mut Vec<Edge>,
    budget: &mut WorkBudget,
    stats: &mut SolveStats,
) -> Result<Option<Vec<Edge>>, crate::graph::iso::CapacityExceeded> {
    stats.nodes += 1;
    let copy = match find_induced_copy_budgeted(g, pattern, budget)? {
        None => return Ok(Some(deleted.clone())),
        Some(c) => c,
    };
    if remaining == 0 {
        stats.exhausted_leaves += 1;
        return Ok(None);
    }
    // deterministic branch order: the copy's edges sorted ascending
    let members = copy.sorted_vec();
    let mut copy_edges = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if g.has_edge(u, v) {
                copy_edges.push(Edge::new(u, v));
            }
        }
    }
    for e in copy_edges {
        let next = g.without_edge(e);
        deleted.push(e);
        if let Some(found) = branch(&next, remaining - 1, pattern, deleted, budget, stats)? {
            return Ok(Some(found));
        }
        deleted.pop();
    }
    Ok(None)
}

/// Independent oracle: enumerate all edge subsets of size at most the budget
/// in increasing size, returning the first whose removal leaves the graph
/// pattern-free. Guarded against infeasible enumerations.
pub fn solve_bruteforce(inst: &Instance, pattern: &Graph) -> Result<Solution, SolverError> {
    const GUARD: u128 = 10_000_000;
    let edges = inst.graph.edges();
    let m = edges.len();
    let kmax = inst.budget.min(m);
    let mut total: u128 = 0;
    for size in 0..=kmax {
        total = total.saturating_add(binomial(m, size));
        if total > GUARD {
            return Err(SolverError::CapacityExceeded);
        }
    }

    for size in 0..=kmax {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            let mut g = inst.graph.clone();
            for &i in &indices {
                g.remove_edge(edges[i].u(), edges[i].v());
            }
            if is_free(&g, pattern) {
                return Ok(Solution::Yes(indices.iter().map(|&i| edges[i]).collect()));
            }
            if !next_combination(&mut indices, m) {
                break;
            }
        }
    }
    Ok(Solution::No)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    out
}

/// Advances to the next k-subset of 0..n in lexicographic order.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - k + i {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
