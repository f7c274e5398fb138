//! Deliberately broken gadget variants, used to show the equivalence sweeps
//! actually have teeth: each mutation must produce at least one
//! counterexample within the small exhaustive sweeps.
//!
//! The three documented mutations:
//!
//! * `ShortBranch`: attach `k` branches (or clique vertices) instead of
//!   `k + 1`, so a budget-k solution can kill every branch.
//! * `DropBranchEdge`: omit one edge from every attached branch or clique,
//!   breaking the copy each branch is supposed to complete.
//! * `PartialJoin`: omit all cross edges between the first two copies in
//!   the join gadget, so the gadget itself contains two disjoint copies.

use super::{equivalence_sweep, SweepMode, VerificationReport};
use crate::constructions::{
    branch_gadget_arms, clique_attach_sized, join_gadget, PatternSpec,
};
use crate::graph::Graph;
use crate::planner::{Instance, Mechanism, ReductionStep, StepError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GadgetMutation {
    ShortBranch,
    DropBranchEdge,
    PartialJoin,
}

impl GadgetMutation {
    pub fn name(&self) -> &'static str {
        match self {
            GadgetMutation::ShortBranch => "short-branch",
            GadgetMutation::DropBranchEdge => "drop-branch-edge",
            GadgetMutation::PartialJoin => "partial-join",
        }
    }
}

/// Applies a step with its gadget replaced by the mutated variant. Rejects
/// combinations where the mutation does not target the step's mechanism.
pub fn apply_step_mutated(
    step: &ReductionStep,
    inst: &Instance,
    mutation: GadgetMutation,
) -> Result<Instance, StepError> {
    if inst.budget == 0 {
        return Err(StepError::BudgetExhausted);
    }
    let k = inst.budget;
    let graph = match (step.mechanism(), mutation) {
        (Mechanism::CliqueAttach, GadgetMutation::ShortBranch) => {
            clique_attach_sized(&inst.graph, k).0
        }
        (Mechanism::CliqueAttach, GadgetMutation::DropBranchEdge) => {
            let (mut out, trace) = clique_attach_sized(&inst.graph, k + 1);
            for arm in &trace.cliques {
                // drop the last recorded clique edge (always exists for k >= 1)
                if let Some(e) = arm.edges.iter().next_back() {
                    out.remove_edge(e.u(), e.v());
                }
            }
            out
        }
        (Mechanism::BranchGadget, GadgetMutation::ShortBranch) => {
            let spec = step_spec(step)?;
            branch_gadget_arms(&inst.graph, &spec, k)?.0
        }
        (Mechanism::BranchGadget, GadgetMutation::DropBranchEdge) => {
            let spec = step_spec(step)?;
            let (mut out, trace) = branch_gadget_arms(&inst.graph, &spec, k + 1)?;
            for base in &trace.bases {
                for arm in &base.branches {
                    if let Some(e) = arm.edges.iter().next_back() {
                        out.remove_edge(e.u(), e.v());
                    }
                }
            }
            out
        }
        (Mechanism::JoinGadget, GadgetMutation::PartialJoin) => {
            let ReductionStep::Copy { component, .. } = step else {
                unreachable!("join gadget steps are copy steps");
            };
            let gadget = partial_join(component, k)?;
            Graph::disjoint_union(&[inst.graph.clone(), gadget])
        }
        (mechanism, mutation) => {
            return Err(StepError::Mismatch(format!(
                "mutation {} does not target mechanism {mechanism:?}",
                mutation.name()
            )));
        }
    };
    Ok(Instance::new(graph, k))
}

fn step_spec(step: &ReductionStep) -> Result<PatternSpec, StepError> {
    match step {
        ReductionStep::DegreeStrip { target, degree } => {
            let designated = target
                .vertices()
                .filter(|&v| target.degree(v) > *degree)
                .collect();
            Ok(PatternSpec::new(target.clone(), designated)?)
        }
        ReductionStep::RegularCarve { target, carving } => {
            Ok(PatternSpec::new(target.clone(), carving.clone())?)
        }
        ReductionStep::ComponentLift { target, designated } => {
            Ok(PatternSpec::new(target.clone(), designated.clone())?)
        }
        _ => Err(StepError::Mismatch(
            "step does not use the branch gadget".into(),
        )),
    }
}

/// Join gadget with every cross edge between copies 0 and 1 removed, leaving
/// two disjoint copies inside the gadget.
fn partial_join(component: &Graph, k: usize) -> Result<Graph, StepError> {
    let mut out = join_gadget(component, k)?;
    let n1 = component.vertex_count();
    for u in 0..n1 {
        for v in n1..2 * n1 {
            if out.has_edge(u, v) {
                out.remove_edge(u, v);
            }
        }
    }
    Ok(out)
}

/// Runs the step-equivalence sweep against the mutated gadget; a healthy
/// sweep must surface at least one counterexample.
pub fn verify_step_equivalence_mutated(
    step: &ReductionStep,
    mutation: GadgetMutation,
    host_limit: usize,
    budget_limit: usize,
    mode: SweepMode,
) -> VerificationReport {
    let suite = format!("mutated-step[{step} ~ {}]", mutation.name());
    equivalence_sweep(suite, step, host_limit, budget_limit, mode, &|inst| {
        apply_step_mutated(step, inst, mutation)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::iso::is_free;

    #[test]
    fn partial_join_contains_two_copies() {
        let g = partial_join(&Graph::matching(1), 1).unwrap();
        let two = Graph::matching(2);
        assert!(!is_free(&g, &two));
    }

    #[test]
    fn non_matching_mutation_is_rejected() {
        let step = ReductionStep::Star { leaves: 3 };
        let inst = Instance::new(Graph::path(3), 1);
        assert!(matches!(
            apply_step_mutated(&step, &inst, GadgetMutation::PartialJoin),
            Err(StepError::Mismatch(_))
        ));
    }
}
