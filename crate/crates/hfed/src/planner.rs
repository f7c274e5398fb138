//! Reduction plans: a base problem plus an ordered list of steps whose
//! pattern transformations end at the target pattern. Applying a plan to an
//! instance of the base problem yields an instance of the target problem
//! with the same deletion budget.

use crate::constructions::{
    branch_gadget, clique_attach, join_gadget, ConstructError, PatternSpec,
};
use crate::graph::canon::canonical_key;
use crate::graph::format::{parse_lines, ParseError};
use crate::graph::iso::are_isomorphic;
use crate::graph::{Graph, VertexSubset};
use crate::pattern::{
    choose_largest_component, classify, find_carving_set_where, strip_leaves, CarvingShape,
    Classification, ClassificationResult,
};
use std::fmt;
use thiserror::Error;

/// A host graph together with a deletion budget.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub budget: usize,
}

impl Instance {
    pub fn new(graph: Graph, budget: usize) -> Self {
        Instance { graph, budget }
    }
}

/// Displays in the instance file format (graph lines plus a `k` line).
impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph)?;
        writeln!(f, "k {}", self.budget)
    }
}

/// Parses an instance file: a graph followed by one `k <budget>` line.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let (graph, budget) = parse_lines(text)?;
    let budget = budget.ok_or(ParseError::MissingBudget)?;
    Ok(Instance { graph, budget })
}

pub fn write_instance(inst: &Instance) -> String {
    inst.to_string()
}

/// The hard problems every chain terminates at.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseProblem {
    P3Free,
    P4Free,
    CycleFree(usize),
    TwoK2Free,
}

impl BaseProblem {
    pub fn pattern(&self) -> Graph {
        match self {
            BaseProblem::P3Free => Graph::path(3),
            BaseProblem::P4Free => Graph::path(4),
            BaseProblem::CycleFree(len) => Graph::cycle(*len),
            BaseProblem::TwoK2Free => Graph::matching(2),
        }
    }
}

impl fmt::Display for BaseProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseProblem::P3Free => write!(f, "p3-free"),
            BaseProblem::P4Free => write!(f, "p4-free"),
            BaseProblem::CycleFree(len) => write!(f, "cycle-free l={len}"),
            BaseProblem::TwoK2Free => write!(f, "2k2-free"),
        }
    }
}

/// Which construction a step invokes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mechanism {
    CliqueAttach,
    BranchGadget,
    JoinGadget,
}

/// One reduction step; each maps instances of its source pattern problem to
/// instances of its target pattern problem without changing the budget.
#[derive(Clone, PartialEq, Debug)]
pub enum ReductionStep {
    /// S_{leaves-1} -> S_leaves via clique attachment; requires leaves >= 3.
    Star { leaves: usize },
    /// S_{l1-1,l2-1} -> S_{l1,l2} via clique attachment;
    /// requires l1, l2 >= 1 and l1 + l2 >= 3.
    TwinStar { l1: usize, l2: usize },
    /// (vertices of degree > `degree` in `target`) -> `target` via the
    /// branch gadget.
    DegreeStrip { target: Graph, degree: usize },
    /// carved P3 or K3 -> the regular graph `target` via the branch gadget.
    RegularCarve {
        target: Graph,
        carving: VertexSubset,
    },
    /// all components isomorphic to a largest component -> `target` via the
    /// branch gadget over the `designated` component union.
    ComponentLift {
        target: Graph,
        designated: VertexSubset,
    },
    /// (copies-1) disjoint copies of `component` -> `copies` copies, by
    /// disjoint union with the join gadget.
    Copy { component: Graph, copies: usize },
}

impl ReductionStep {
    pub fn mechanism(&self) -> Mechanism {
        match self {
            ReductionStep::Star { .. } | ReductionStep::TwinStar { .. } => Mechanism::CliqueAttach,
            ReductionStep::DegreeStrip { .. }
            | ReductionStep::RegularCarve { .. }
            | ReductionStep::ComponentLift { .. } => Mechanism::BranchGadget,
            ReductionStep::Copy { .. } => Mechanism::JoinGadget,
        }
    }

    /// The pattern of the problem this step reduces from.
    pub fn source_pattern(&self) -> Graph {
        match self {
            ReductionStep::Star { leaves } => Graph::star(leaves - 1),
            ReductionStep::TwinStar { l1, l2 } => twin_star_or_star(l1 - 1, l2 - 1),
            ReductionStep::DegreeStrip { target, degree } => {
                target.induced(&high_degree_vertices(target, *degree))
            }
            ReductionStep::RegularCarve { target, carving } => target.induced(carving),
            ReductionStep::ComponentLift { target, designated } => target.induced(designated),
            ReductionStep::Copy { component, copies } => {
                let parts: Vec<Graph> = (0..copies - 1).map(|_| component.clone()).collect();
                Graph::disjoint_union(&parts)
            }
        }
    }

    /// The pattern of the problem this step reduces to.
    pub fn target_pattern(&self) -> Graph {
        match self {
            ReductionStep::Star { leaves } => Graph::star(*leaves),
            ReductionStep::TwinStar { l1, l2 } => Graph::twin_star(*l1, *l2),
            ReductionStep::DegreeStrip { target, .. }
            | ReductionStep::RegularCarve { target, .. }
            | ReductionStep::ComponentLift { target, .. } => target.clone(),
            ReductionStep::Copy { component, copies } => {
                let parts: Vec<Graph> = (0..*copies).map(|_| component.clone()).collect();
                Graph::disjoint_union(&parts)
            }
        }
    }
}

/// S_{l1,l2} degenerates to a star when a coordinate is zero.
fn twin_star_or_star(l1: usize, l2: usize) -> Graph {
    if l1 == 0 {
        Graph::star(l2 + 1)
    } else if l2 == 0 {
        Graph::star(l1 + 1)
    } else {
        Graph::twin_star(l1, l2)
    }
}

fn high_degree_vertices(g: &Graph, degree: usize) -> VertexSubset {
    g.vertices().filter(|&v| g.degree(v) > degree).collect()
}

#[derive(Clone, PartialEq, Debug)]
pub struct ReductionPlan {
    pub base: BaseProblem,
    pub steps: Vec<ReductionStep>,
    pub target: Graph,
}

#[derive(Error, Debug)]
pub enum PlanError {
    #[error("pattern is not reducible ({0})")]
    NotReducible(ClassificationResult),
    #[error("no size-3 carving set found in a connected graph of minimum degree >= 3")]
    CarvingMissing,
}

#[derive(Error, Debug)]
pub enum StepError {
    #[error("step requires a positive budget")]
    BudgetExhausted,
    #[error("step and pattern are inconsistent: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Builds the reduction chain for a supported pattern.
pub fn plan(h: &Graph) -> Result<ReductionPlan, PlanError> {
    let classification = classify(h);
    let steps = plan_steps(h, &classification.kind)?;
    Ok(ReductionPlan {
        base: steps.0,
        steps: steps.1,
        target: h.clone(),
    })
}

fn plan_steps(
    h: &Graph,
    kind: &Classification,
) -> Result<(BaseProblem, Vec<ReductionStep>), PlanError> {
    match kind {
        Classification::PolynomialTime | Classification::Unsupported => {
            Err(PlanError::NotReducible(classify(h)))
        }
        Classification::Star { leaves } => Ok(star_chain(*leaves)),
        Classification::TwinStar { l1, l2 } => Ok(twin_star_chain(*l1, *l2)),
        Classification::GeneralTree { .. } => {
            // strip to the diameter-2/3 core, then rebuild outward
            let mut towers = vec![h.clone()];
            while towers.last().unwrap().induced_diameter() > 3 {
                let next = strip_leaves(towers.last().unwrap()).expect("tree with diameter > 3");
                towers.push(next);
            }
            let core = towers.last().unwrap();
            let (base, mut steps) = match classify(core).kind {
                Classification::Star { leaves } => star_chain(leaves),
                Classification::TwinStar { l1, l2 } => twin_star_chain(l1, l2),
                other => unreachable!("tree core must be a star or twin-star, got {other:?}"),
            };
            for tree in towers.iter().rev().skip(1) {
                steps.push(ReductionStep::DegreeStrip {
                    target: tree.clone(),
                    degree: 1,
                });
            }
            Ok((base, steps))
        }
        Classification::Cycle { len } => Ok((BaseProblem::CycleFree(*len), Vec::new())),
        Classification::RegularHigh { .. } => {
            // a path-shaped carving keeps the base problem simplest
            let carving = find_carving_set_where(h, 3, |s| s == CarvingShape::PathThree)
                .or_else(|| find_carving_set_where(h, 3, |s| s == CarvingShape::Triangle))
                .ok_or(PlanError::CarvingMissing)?;
            let base = match carving.shape {
                CarvingShape::PathThree => BaseProblem::P3Free,
                CarvingShape::Triangle => BaseProblem::CycleFree(3),
                CarvingShape::OtherConnected => unreachable!("size-3 carving"),
            };
            Ok((
                base,
                vec![ReductionStep::RegularCarve {
                    target: h.clone(),
                    carving: carving.vertices,
                }],
            ))
        }
        Classification::MatchingUnion { edges, isolated } => {
            let mut steps = Vec::new();
            for s in 3..=*edges {
                steps.push(ReductionStep::Copy {
                    component: Graph::matching(1),
                    copies: s,
                });
            }
            if *isolated > 0 {
                let designated = component_union(h, 2);
                steps.push(ReductionStep::ComponentLift {
                    target: h.clone(),
                    designated,
                });
            }
            Ok((BaseProblem::TwoK2Free, steps))
        }
        Classification::CompositeLargest { .. } => {
            let largest = choose_largest_component(h);
            let inner_kind = classify(&largest.component).kind;
            let (base, mut steps) = plan_steps(&largest.component, &inner_kind)?;
            for s in 2..=largest.copies {
                steps.push(ReductionStep::Copy {
                    component: largest.component.clone(),
                    copies: s,
                });
            }
            if !largest.leftover.is_empty() {
                steps.push(ReductionStep::ComponentLift {
                    target: h.clone(),
                    designated: largest.union_vertices,
                });
            }
            Ok((base, steps))
        }
    }
}

/// Vertices of all components with exactly `size` vertices.
fn component_union(h: &Graph, size: usize) -> VertexSubset {
    h.components()
        .into_iter()
        .filter(|c| c.len() == size)
        .flat_map(|c| c.sorted_vec())
        .collect()
}

fn star_chain(leaves: usize) -> (BaseProblem, Vec<ReductionStep>) {
    let steps = (3..=leaves)
        .map(|l| ReductionStep::Star { leaves: l })
        .collect();
    (BaseProblem::P3Free, steps)
}

fn twin_star_chain(l1: usize, l2: usize) -> (BaseProblem, Vec<ReductionStep>) {
    let (mut a, mut b) = (l1.min(l2), l1.max(l2));
    let mut upward = Vec::new();
    loop {
        if a == 1 && b == 1 {
            let mut steps: Vec<ReductionStep> = Vec::new();
            steps.extend(upward.into_iter().rev());
            return (BaseProblem::P4Free, steps);
        }
        if a == 0 {
            // S_{0,b} is the star with b + 1 leaves
            let (base, mut steps) = star_chain(b + 1);
            steps.extend(upward.into_iter().rev());
            return (base, steps);
        }
        upward.push(ReductionStep::TwinStar { l1: a, l2: b });
        a -= 1;
        b -= 1;
    }
}

/// Applies one step to an instance. The budget is preserved exactly.
pub fn apply_step(step: &ReductionStep, inst: &Instance) -> Result<Instance, StepError> {
    if inst.budget == 0 {
        return Err(StepError::BudgetExhausted);
    }
    let k = inst.budget;
    let graph = match step {
        ReductionStep::Star { leaves } => {
            if *leaves < 3 {
                return Err(StepError::Mismatch("star step requires leaves >= 3".into()));
            }
            clique_attach(&inst.graph, k)?.0
        }
        ReductionStep::TwinStar { l1, l2 } => {
            if *l1 < 1 || *l2 < 1 || l1 + l2 < 3 {
                return Err(StepError::Mismatch(
                    "twin-star step requires l1, l2 >= 1 and l1 + l2 >= 3".into(),
                ));
            }
            clique_attach(&inst.graph, k)?.0
        }
        ReductionStep::DegreeStrip { target, degree } => {
            let designated = high_degree_vertices(target, *degree);
            if designated.is_empty() || designated.len() >= target.vertex_count() {
                return Err(StepError::Mismatch(format!(
                    "degree threshold {degree} leaves no proper vertex set"
                )));
            }
            let spec = PatternSpec::new(target.clone(), designated)?;
            branch_gadget(&inst.graph, k, &spec)?.0
        }
        ReductionStep::RegularCarve { target, carving } => {
            validate_carving(target, carving)?;
            let spec = PatternSpec::new(target.clone(), carving.clone())?;
            branch_gadget(&inst.graph, k, &spec)?.0
        }
        ReductionStep::ComponentLift { target, designated } => {
            validate_component_lift(target, designated)?;
            let spec = PatternSpec::new(target.clone(), designated.clone())?;
            branch_gadget(&inst.graph, k, &spec)?.0
        }
        ReductionStep::Copy { component, copies } => {
            if *copies < 2 {
                return Err(StepError::Mismatch("copy step requires copies >= 2".into()));
            }
            if !component.is_connected() || component.vertex_count() == 0 {
                return Err(StepError::Mismatch(
                    "copy step requires a nonempty connected component".into(),
                ));
            }
            let gadget = join_gadget(component, k)?;
            Graph::disjoint_union(&[inst.graph.clone(), gadget])
        }
    };
    Ok(Instance::new(graph, k))
}

fn validate_carving(target: &Graph, carving: &VertexSubset) -> Result<(), StepError> {
    let r = target
        .regular_degree()
        .ok_or_else(|| StepError::Mismatch("carve step requires a regular target".into()))?;
    if r <= 2 || !target.is_connected() {
        return Err(StepError::Mismatch(
            "carve step requires a connected regular target of degree > 2".into(),
        ));
    }
    if carving.len() != 3 {
        return Err(StepError::Mismatch("carving set must have 3 vertices".into()));
    }
    if carving.iter().any(|v| v >= target.vertex_count()) {
        return Err(StepError::Mismatch("carving set out of range".into()));
    }
    let inside = target.induced(carving);
    if !inside.is_connected() {
        return Err(StepError::Mismatch(
            "carving set must induce a path or triangle".into(),
        ));
    }
    let rest: VertexSubset = target
        .vertices()
        .filter(|v| !carving.contains(*v))
        .collect();
    if !target.induced(&rest).is_connected() {
        return Err(StepError::Mismatch(
            "removing the carving set must keep the target connected".into(),
        ));
    }
    Ok(())
}

fn validate_component_lift(target: &Graph, designated: &VertexSubset) -> Result<(), StepError> {
    if designated.is_empty() || designated.len() >= target.vertex_count() {
        return Err(StepError::Mismatch(
            "component lift requires a nonempty proper component union".into(),
        ));
    }
    if designated.iter().any(|v| v >= target.vertex_count()) {
        return Err(StepError::Mismatch("designated set out of range".into()));
    }
    // no crossing edges, so every component is fully inside or fully outside
    for e in target.edges() {
        if designated.contains(e.u()) != designated.contains(e.v()) {
            return Err(StepError::Mismatch(
                "designated set must be a union of components".into(),
            ));
        }
    }
    let comps = target.components();
    let max_size = comps.iter().map(VertexSubset::len).max().unwrap_or(0);
    let mut inside_key = None;
    for comp in &comps {
        let inside = comp.iter().all(|v| designated.contains(v));
        if !inside {
            continue;
        }
        if comp.len() != max_size {
            return Err(StepError::Mismatch(
                "designated components must be largest components".into(),
            ));
        }
        let key = canonical_key(&target.induced(comp));
        match &inside_key {
            None => inside_key = Some(key),
            Some(k) if *k != key => {
                return Err(StepError::Mismatch(
                    "designated components must be pairwise isomorphic".into(),
                ));
            }
            _ => {}
        }
    }
    let inside_key = inside_key.ok_or_else(|| {
        StepError::Mismatch("designated set contains no whole component".into())
    })?;
    for comp in &comps {
        let inside = comp.iter().all(|v| designated.contains(v));
        if !inside && canonical_key(&target.induced(comp)) == inside_key {
            return Err(StepError::Mismatch(
                "every copy of the designated component must be included".into(),
            ));
        }
    }
    Ok(())
}

/// Left-to-right fold of [`apply_step`]; the budget is preserved end to end.
pub fn apply_plan(plan: &ReductionPlan, base_inst: &Instance) -> Result<Instance, StepError> {
    let mut inst = base_inst.clone();
    for step in &plan.steps {
        inst = apply_step(step, &inst)?;
    }
    Ok(inst)
}

/// Completion instances are equivalent to deletion instances over the
/// complement pattern: returns the complemented pattern plus the
/// complemented instance with the same budget.
pub fn to_completion(h: &Graph, inst: &Instance) -> (Graph, Instance) {
    (
        h.complement(),
        Instance::new(inst.graph.complement(), inst.budget),
    )
}

/// True iff folding the step pattern transformations from the base pattern
/// reaches the target, with matching sources along the way.
pub fn plan_is_sound(plan: &ReductionPlan) -> bool {
    let mut current = plan.base.pattern();
    for step in &plan.steps {
        if !are_isomorphic(&current, &step.source_pattern()) {
            return false;
        }
        current = step.target_pattern();
    }
    are_isomorphic(&current, &plan.target)
}

// ---------------------------------------------------------------------------
// plan text format

fn fmt_gspec(g: &Graph) -> String {
    let edges = g
        .edges()
        .iter()
        .map(|e| format!("{}-{}", e.u() + 1, e.v() + 1))
        .collect::<Vec<_>>()
        .join(",");
    format!("{}:{}:{}", g.vertex_count(), g.edge_count(), edges)
}

fn fmt_set(s: &VertexSubset) -> String {
    s.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Star { leaves } => write!(f, "step star l={leaves}"),
            ReductionStep::TwinStar { l1, l2 } => write!(f, "step twin-star l1={l1} l2={l2}"),
            ReductionStep::DegreeStrip { target, degree } => {
                write!(f, "step degree-strip d={degree} graph={}", fmt_gspec(target))
            }
            ReductionStep::RegularCarve { target, carving } => write!(
                f,
                "step regular-carve set={} graph={}",
                fmt_set(carving),
                fmt_gspec(target)
            ),
            ReductionStep::ComponentLift { target, designated } => write!(
                f,
                "step component-lift set={} graph={}",
                fmt_set(designated),
                fmt_gspec(target)
            ),
            ReductionStep::Copy { component, copies } => {
                write!(f, "step copy t={copies} graph={}", fmt_gspec(component))
            }
        }
    }
}

/// Plan text: one `base` line, one line per step, then `target <n> <m>`
/// followed by the target's edge list.
impl fmt::Display for ReductionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {}", self.base)?;
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        let edges = self.target.edges();
        writeln!(f, "target {} {}", self.target.vertex_count(), edges.len())?;
        for e in edges {
            writeln!(f, "e {} {}", e.u() + 1, e.v() + 1)?;
        }
        Ok(())
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PlanParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("plan is missing its `base` line")]
    MissingBase,
    #[error("plan is missing its `target` section")]
    MissingTarget,
}

fn bad(line: usize, message: impl Into<String>) -> PlanParseError {
    PlanParseError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_gspec(line: usize, text: &str) -> Result<Graph, PlanParseError> {
    let parts: Vec<&str> = text.splitn(3, ':').collect();
    if parts.len() != 3 {
        return Err(bad(line, format!("malformed graph spec `{text}`")));
    }
    let n: usize = parts[0]
        .parse()
        .map_err(|_| bad(line, format!("bad vertex count in `{text}`")))?;
    let m: usize = parts[1]
        .parse()
        .map_err(|_| bad(line, format!("bad edge count in `{text}`")))?;
    let mut g = Graph::new(n);
    if !parts[2].is_empty() {
        for pair in parts[2].split(',') {
            let (u, v) = pair
                .split_once('-')
                .ok_or_else(|| bad(line, format!("bad edge `{pair}`")))?;
            let u: usize = u.parse().map_err(|_| bad(line, format!("bad edge `{pair}`")))?;
            let v: usize = v.parse().map_err(|_| bad(line, format!("bad edge `{pair}`")))?;
            if u == 0 || v == 0 || u > n || v > n || u == v {
                return Err(bad(line, format!("edge `{pair}` out of range")));
            }
            g.add_edge(u - 1, v - 1);
        }
    }
    if g.edge_count() != m {
        return Err(bad(line, format!("graph spec `{text}` edge count mismatch")));
    }
    Ok(g)
}

fn parse_vset(line: usize, text: &str) -> Result<VertexSubset, PlanParseError> {
    let mut out = VertexSubset::new();
    for part in text.split(',') {
        let v: usize = part
            .parse()
            .map_err(|_| bad(line, format!("bad vertex `{part}`")))?;
        if v == 0 {
            return Err(bad(line, "vertex ids are 1-based"));
        }
        out.insert(v - 1);
    }
    Ok(out)
}

fn field<'a>(line: usize, fields: &[&'a str], key: &str) -> Result<&'a str, PlanParseError> {
    fields
        .iter()
        .find_map(|f| f.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| bad(line, format!("missing field `{key}=`")))
}

impl ReductionPlan {
    pub fn parse(text: &str) -> Result<Self, PlanParseError> {
        let mut base: Option<BaseProblem> = None;
        let mut steps: Vec<ReductionStep> = Vec::new();
        let mut target: Option<Graph> = None;
        let mut declared_edges = 0usize;
        let mut seen_edges = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = t.split_whitespace().collect();
            match fields[0] {
                "base" => {
                    if fields.len() < 2 {
                        return Err(bad(line, "missing base kind"));
                    }
                    base = Some(match fields[1] {
                        "p3-free" => BaseProblem::P3Free,
                        "p4-free" => BaseProblem::P4Free,
                        "2k2-free" => BaseProblem::TwoK2Free,
                        "cycle-free" => {
                            let l: usize = field(line, &fields, "l")?
                                .parse()
                                .map_err(|_| bad(line, "bad cycle length"))?;
                            if l < 3 {
                                return Err(bad(line, "cycle length must be >= 3"));
                            }
                            BaseProblem::CycleFree(l)
                        }
                        other => return Err(bad(line, format!("unknown base `{other}`"))),
                    });
                }
                "step" => {
                    if fields.len() < 2 {
                        return Err(bad(line, "missing step kind"));
                    }
                    let step = match fields[1] {
                        "star" => ReductionStep::Star {
                            leaves: field(line, &fields, "l")?
                                .parse()
                                .map_err(|_| bad(line, "bad leaf count"))?,
                        },
                        "twin-star" => ReductionStep::TwinStar {
                            l1: field(line, &fields, "l1")?
                                .parse()
                                .map_err(|_| bad(line, "bad l1"))?,
                            l2: field(line, &fields, "l2")?
                                .parse()
                                .map_err(|_| bad(line, "bad l2"))?,
                        },
                        "degree-strip" => ReductionStep::DegreeStrip {
                            degree: field(line, &fields, "d")?
                                .parse()
                                .map_err(|_| bad(line, "bad degree"))?,
                            target: parse_gspec(line, field(line, &fields, "graph")?)?,
                        },
                        "regular-carve" => ReductionStep::RegularCarve {
                            carving: parse_vset(line, field(line, &fields, "set")?)?,
                            target: parse_gspec(line, field(line, &fields, "graph")?)?,
                        },
                        "component-lift" => ReductionStep::ComponentLift {
                            designated: parse_vset(line, field(line, &fields, "set")?)?,
                            target: parse_gspec(line, field(line, &fields, "graph")?)?,
                        },
                        "copy" => ReductionStep::Copy {
                            copies: field(line, &fields, "t")?
                                .parse()
                                .map_err(|_| bad(line, "bad copy count"))?,
                            component: parse_gspec(line, field(line, &fields, "graph")?)?,
                        },
                        other => return Err(bad(line, format!("unknown step `{other}`"))),
                    };
                    steps.push(step);
                }
                "target" => {
                    if fields.len() != 3 {
                        return Err(bad(line, "expected `target <n> <m>`"));
                    }
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|_| bad(line, "bad target vertex count"))?;
                    declared_edges = fields[2]
                        .parse()
                        .map_err(|_| bad(line, "bad target edge count"))?;
                    target = Some(Graph::new(n));
                }
                "e" => {
                    let g = target
                        .as_mut()
                        .ok_or_else(|| bad(line, "edge line before `target`"))?;
                    if fields.len() != 3 {
                        return Err(bad(line, "expected `e <u> <v>`"));
                    }
                    let u: usize = fields[1].parse().map_err(|_| bad(line, "bad endpoint"))?;
                    let v: usize = fields[2].parse().map_err(|_| bad(line, "bad endpoint"))?;
                    let n = g.vertex_count();
                    if u == 0 || v == 0 || u > n || v > n || u == v {
                        return Err(bad(line, "edge endpoints out of range"));
                    }
                    g.add_edge(u - 1, v - 1);
                    seen_edges += 1;
                }
                other => return Err(bad(line, format!("unrecognized line `{other}`"))),
            }
        }

        let base = base.ok_or(PlanParseError::MissingBase)?;
        let target = target.ok_or(PlanParseError::MissingTarget)?;
        if seen_edges != declared_edges {
            return Err(PlanParseError::Malformed {
                line: 0,
                message: format!(
                    "target declares {declared_edges} edges but {seen_edges} were listed"
                ),
            });
        }
        Ok(ReductionPlan {
            base,
            steps,
            target,
        })
    }
}
