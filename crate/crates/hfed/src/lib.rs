//! Toolkit for taking a forbidden graph H apart and rebuilding the
//! hardness of H-free edge deletion from one of four base problems.
//!
//! The pieces:
//!
//! * [`graph`]: simple undirected graphs, file format, induced/subgraph
//!   copy enumeration, canonical labeling for small graphs.
//! * [`pattern`]: recognition of the covered pattern classes (stars,
//!   twin-stars, trees, cycles, regular graphs, matching unions,
//!   composites) and their structural witnesses.
//! * [`constructions`]: the branch gadget, clique attachment, and join
//!   gadget that realize each reduction step, with full bookkeeping traces.
//! * [`planner`]: turns a classification into an executable chain of steps
//!   and applies chains to concrete instances, preserving the budget.
//! * [`solver`]: exact deciders (bounded search tree plus a brute-force
//!   oracle) for pattern-free edge deletion on small instances.
//! * [`verifier`]: sweeps that check every step's if-and-only-if claim and
//!   every gadget's structure against the exact solvers.

pub mod constructions;
pub mod graph;
pub mod pattern;
pub mod planner;
pub mod solver;
pub mod verifier;

pub use constructions::{
    branch_gadget, clique_attach, join_gadget, ConstructError, GadgetTrace, PatternSpec,
};
pub use graph::format::{parse_graph, write_graph, ParseError};
pub use graph::iso::{
    are_isomorphic, enumerate_induced_copies, enumerate_subgraph_copies, find_induced_copy,
    is_free, IsoMap, SubgraphCopy,
};
pub use graph::{Edge, EdgeSet, Graph, VertexSubset};
pub use pattern::{classify, Classification, ClassificationResult};
pub use planner::{
    apply_plan, apply_step, parse_instance, plan, to_completion, write_instance, BaseProblem,
    Instance, ReductionPlan, ReductionStep,
};
pub use solver::{solve_branching, solve_bruteforce, Solution, SolveLimits, SolverError};
pub use verifier::{
    sweep_acceptance, verify_gadget_structure, verify_step_equivalence, Status, SweepMode,
    VerificationReport,
};
