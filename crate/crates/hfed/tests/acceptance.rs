//! Acceptance suite: every criterion below runs at its stated size and
//! tolerance and prints one pass/fail line (visible with `--nocapture`).
//!
//! The equivalence criteria are exhaustive sweeps, zero tolerance: the
//! source instance and the transformed instance must have the same answer
//! on every generated case.

use hfed::graph::iso::is_free;
use hfed::pattern::{classify, find_carving_set, Classification};
use hfed::planner::{apply_step, plan, Instance, ReductionStep};
use hfed::verifier::enumerate::nonisomorphic_graphs_up_to;
use hfed::verifier::mutations::{verify_step_equivalence_mutated, GadgetMutation};
use hfed::verifier::{
    verify_gadget_structure_randomized, verify_solver_agreement, verify_step_equivalence, Status,
    SweepMode,
};
use hfed::{
    are_isomorphic, join_gadget, solve_branching, solve_bruteforce, Graph, VertexSubset,
};

fn report_line(number: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {number:02} [{name}]: {} ({detail})",
        if pass { "pass" } else { "fail" }
    );
}

fn paw() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
}

fn k3_union_k2() -> Graph {
    Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)])
}

fn catalog() -> Vec<(&'static str, Graph)> {
    vec![
        ("S3", Graph::star(3)),
        ("S4", Graph::star(4)),
        ("S_{2,1}", Graph::twin_star(2, 1)),
        ("S_{2,2}", Graph::twin_star(2, 2)),
        ("P5", Graph::path(5)),
        ("P6", Graph::path(6)),
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
        ("Petersen", Graph::petersen()),
        ("2K2", Graph::matching(2)),
        ("3K2", Graph::matching(3)),
        (
            "2K2+K1",
            Graph::disjoint_union(&[Graph::matching(2), Graph::new(1)]),
        ),
        ("K3+K2", k3_union_k2()),
    ]
}

#[test]
fn criterion_01_solver_oracle_agreement() {
    let patterns = vec![
        Graph::path(3),
        Graph::path(4),
        Graph::complete(3),
        Graph::matching(2),
        Graph::complete(4),
        Graph::cycle(4),
    ];
    let report = verify_solver_agreement(5, 3, &patterns);
    let pass = report.status() == Status::Pass && report.skips == 0;
    report_line(
        1,
        "solver oracle agreement",
        pass,
        &format!("cases={} failures={}", report.cases, report.failures.len()),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_02_star_step_equivalence() {
    let report = verify_step_equivalence(
        &ReductionStep::Star { leaves: 3 },
        5,
        2,
        SweepMode::Exhaustive,
    );
    let pass = report.failures.is_empty() && report.skips == 0;
    report_line(
        2,
        "star step equivalence",
        pass,
        &format!("cases={} failures={}", report.cases, report.failures.len()),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_03_twin_star_step_equivalence() {
    let step = ReductionStep::TwinStar { l1: 2, l2: 2 };
    assert!(are_isomorphic(&step.source_pattern(), &Graph::path(4)));
    let report = verify_step_equivalence(&step, 5, 2, SweepMode::Exhaustive);
    let pass = report.failures.is_empty() && report.skips == 0;
    report_line(
        3,
        "twin-star step equivalence",
        pass,
        &format!("cases={} failures={}", report.cases, report.failures.len()),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_04_degree_strip_equivalence() {
    let step = ReductionStep::DegreeStrip {
        target: Graph::path(5),
        degree: 1,
    };
    assert!(are_isomorphic(&step.source_pattern(), &Graph::path(3)));
    let report = verify_step_equivalence(&step, 5, 2, SweepMode::Exhaustive);
    let pass = report.failures.is_empty() && report.skips == 0;
    report_line(
        4,
        "degree-strip step equivalence",
        pass,
        &format!("cases={} failures={}", report.cases, report.failures.len()),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_05_regular_carve_equivalence() {
    let carving: VertexSubset = [0, 1, 2].into_iter().collect();
    let step = ReductionStep::RegularCarve {
        target: Graph::complete(4),
        carving,
    };
    assert!(are_isomorphic(&step.source_pattern(), &Graph::complete(3)));
    let report = verify_step_equivalence(&step, 4, 1, SweepMode::Exhaustive);
    // capacity-bounded criterion: zero failures among run cases, skips <= 10%
    let pass = report.failures.is_empty() && report.skips * 10 <= report.cases;
    report_line(
        5,
        "regular-carve step equivalence",
        pass,
        &format!(
            "cases={} skips={} failures={}",
            report.cases,
            report.skips,
            report.failures.len()
        ),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_06_component_lift_equivalence() {
    let target = k3_union_k2();
    let step = ReductionStep::ComponentLift {
        target,
        designated: [0, 1, 2].into_iter().collect(),
    };
    assert!(are_isomorphic(&step.source_pattern(), &Graph::complete(3)));
    let report = verify_step_equivalence(&step, 5, 2, SweepMode::Exhaustive);
    let pass = report.failures.is_empty() && report.skips == 0;
    report_line(
        6,
        "component-lift step equivalence",
        pass,
        &format!("cases={} failures={}", report.cases, report.failures.len()),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_07_copy_step_equivalence_and_join_freeness() {
    let mut pass = true;
    let mut cases = 0;
    for copies in [2usize, 3] {
        let step = ReductionStep::Copy {
            component: Graph::matching(1),
            copies,
        };
        let report = verify_step_equivalence(&step, 5, 2, SweepMode::Exhaustive);
        cases += report.cases;
        if !(report.failures.is_empty() && report.skips == 0) {
            eprintln!("{report}");
            pass = false;
        }
    }
    for h1 in [Graph::matching(1), Graph::path(3), Graph::complete(3)] {
        for k in 1..=3 {
            cases += 1;
            let gadget = join_gadget(&h1, k).unwrap();
            let two = Graph::disjoint_union(&[h1.clone(), h1.clone()]);
            if !is_free(&gadget, &two) {
                eprintln!("join gadget of {h1:?} at k={k} contains two disjoint copies");
                pass = false;
            }
        }
    }
    report_line(
        7,
        "copy step equivalence + join gadget freeness",
        pass,
        &format!("cases={cases}"),
    );
    assert!(pass);
}

#[test]
fn criterion_08_gadget_structure_randomized() {
    let report = verify_gadget_structure_randomized(20240817, 50, 7, 3);
    let pass = report.status() == Status::Pass;
    report_line(
        8,
        "gadget structure on seeded random triples",
        pass,
        &format!("trials={}", report.cases),
    );
    assert!(pass, "{report}");
}

#[test]
fn criterion_09_budget_linearity() {
    let mut pass = true;
    let mut checked_steps = 0;
    for (name, h) in catalog() {
        let plan = plan(&h).unwrap_or_else(|e| panic!("{name} must be plannable: {e}"));
        for k in 1..=2usize {
            for host in [Graph::path(4), Graph::cycle(5)] {
                let mut inst = Instance::new(host, k);
                for step in &plan.steps {
                    inst = apply_step(step, &inst)
                        .unwrap_or_else(|e| panic!("{name}: step failed: {e}"));
                    checked_steps += 1;
                    if inst.budget != k {
                        eprintln!("{name}: budget drifted to {} from {k}", inst.budget);
                        pass = false;
                    }
                }
            }
        }
    }
    report_line(
        9,
        "budget preserved across every plan step",
        pass,
        &format!("steps checked={checked_steps}"),
    );
    assert!(pass);
}

#[test]
fn criterion_10_classification_catalog() {
    let expected: Vec<(&str, Graph, Classification)> = vec![
        ("S3", Graph::star(3), Classification::Star { leaves: 3 }),
        ("S4", Graph::star(4), Classification::Star { leaves: 4 }),
        (
            "S_{2,1}",
            Graph::twin_star(2, 1),
            Classification::TwinStar { l1: 1, l2: 2 },
        ),
        (
            "S_{2,2}",
            Graph::twin_star(2, 2),
            Classification::TwinStar { l1: 2, l2: 2 },
        ),
        ("P5", Graph::path(5), Classification::GeneralTree { diameter: 4 }),
        ("P6", Graph::path(6), Classification::GeneralTree { diameter: 5 }),
        ("C4", Graph::cycle(4), Classification::Cycle { len: 4 }),
        ("C5", Graph::cycle(5), Classification::Cycle { len: 5 }),
        ("K4", Graph::complete(4), Classification::RegularHigh { degree: 3 }),
        (
            "Petersen",
            Graph::petersen(),
            Classification::RegularHigh { degree: 3 },
        ),
        (
            "2K2",
            Graph::matching(2),
            Classification::MatchingUnion { edges: 2, isolated: 0 },
        ),
        (
            "3K2",
            Graph::matching(3),
            Classification::MatchingUnion { edges: 3, isolated: 0 },
        ),
        (
            "2K2+K1",
            Graph::disjoint_union(&[Graph::matching(2), Graph::new(1)]),
            Classification::MatchingUnion { edges: 2, isolated: 1 },
        ),
    ];
    let mut pass = true;
    for (name, g, want) in &expected {
        let got = classify(g).kind;
        if got != *want {
            eprintln!("{name}: expected {want:?}, got {got:?}");
            pass = false;
        }
    }
    // composite wraps the classification of its largest component
    match classify(&k3_union_k2()).kind {
        Classification::CompositeLargest {
            inner,
            copies,
            leftover,
        } => {
            if *inner != (Classification::Cycle { len: 3 }) || copies != 1 || leftover.len() != 1 {
                eprintln!("K3+K2: unexpected composite shape");
                pass = false;
            }
        }
        other => {
            eprintln!("K3+K2: expected composite, got {other:?}");
            pass = false;
        }
    }
    if classify(&paw()).kind != Classification::Unsupported {
        eprintln!("paw must be unsupported");
        pass = false;
    }
    let k1_k2 = Graph::disjoint_union(&[Graph::new(1), Graph::matching(1)]);
    if classify(&k1_k2).kind != Classification::PolynomialTime {
        eprintln!("K1+K2 must be polynomial-time");
        pass = false;
    }
    report_line(10, "classification catalog", pass, "entries=16");
    assert!(pass);
}

#[test]
fn criterion_11_carving_existence_min_degree_three() {
    let mut checked = 0;
    let mut missing = Vec::new();
    for g in nonisomorphic_graphs_up_to(8) {
        let n = g.vertex_count();
        if n < 4 || !g.is_connected() {
            continue;
        }
        if (0..n).any(|v| g.degree(v) < 3) {
            continue;
        }
        checked += 1;
        if find_carving_set(&g, 3).is_none() {
            missing.push(g);
        }
    }
    let pass = missing.is_empty() && checked > 0;
    report_line(
        11,
        "size-3 carving sets exist at min degree 3",
        pass,
        &format!("graphs checked={checked}"),
    );
    assert!(pass, "counterexamples: {missing:?}");
}

#[test]
fn criterion_12_mutation_kill() {
    let star = ReductionStep::Star { leaves: 3 };
    let copy = ReductionStep::Copy {
        component: Graph::matching(1),
        copies: 2,
    };
    let sweeps = [
        ("short-branch", &star, GadgetMutation::ShortBranch),
        ("drop-branch-edge", &star, GadgetMutation::DropBranchEdge),
        ("partial-join", &copy, GadgetMutation::PartialJoin),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (name, step, mutation) in sweeps {
        let report = verify_step_equivalence_mutated(step, mutation, 5, 2, SweepMode::Exhaustive);
        let killed = !report.failures.is_empty();
        detail.push_str(&format!("{name}={} ", report.failures.len()));
        if !killed {
            eprintln!("mutation {name} produced no counterexample\n{report}");
            pass = false;
        }
    }
    report_line(
        12,
        "documented gadget mutations are caught",
        pass,
        detail.trim(),
    );
    assert!(pass);
}

/// A few pinned instances whose answers were worked out by hand and against
/// the brute-force oracle.
#[test]
fn solver_examples_pinned_by_hand() {
    let p3 = Graph::path(3);
    // (C5, 2) is a no, (C5, 3) is a yes
    assert!(!solve_branching(&Instance::new(Graph::cycle(5), 2), &p3)
        .unwrap()
        .is_yes());
    assert!(solve_bruteforce(&Instance::new(Graph::cycle(5), 3), &p3)
        .unwrap()
        .is_yes());
    // (K4, 2) sheds its triangles via a perfect matching
    assert!(solve_branching(&Instance::new(Graph::complete(4), 2), &Graph::complete(3))
        .unwrap()
        .is_yes());
}
