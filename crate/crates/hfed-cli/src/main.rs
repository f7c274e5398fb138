//! Batch front end: classify forbidden patterns, emit and replay reduction
//! plans, solve small instances exactly, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure or solver capacity error,
//! 2 usage or input errors. Errors go to stderr prefixed with `error:`.

use clap::{Parser, Subcommand};
use hfed::pattern::classify;
use hfed::planner::{apply_plan, apply_step, parse_instance, plan, Instance, ReductionStep};
use hfed::solver::{solve_branching, SolverError};
use hfed::verifier::mutations::{verify_step_equivalence_mutated, GadgetMutation};
use hfed::verifier::{
    sweep_acceptance, verify_gadget_structure_randomized, verify_solver_agreement,
    verify_step_equivalence, SweepMode, VerificationReport,
};
use hfed::{parse_graph, Graph, ReductionPlan};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hfed",
    about = "Pattern classification, reduction chains and exact solving for pattern-free edge deletion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a forbidden pattern graph.
    Classify {
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Print (or write) the reduction plan for a pattern.
    Plan {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a plan to a base instance and write the reduced instance.
    Reduce {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide pattern-free edge deletion on an instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Run a named verification suite exhaustively.
    Verify {
        #[arg(long)]
        suite: String,
        /// Host size limit (suite-specific default).
        #[arg(long)]
        n: Option<usize>,
        /// Budget limit (suite-specific default).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a named verification suite on seeded random hosts.
    Fuzz {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
    },
}

enum CliError {
    /// Bad input or usage; exit 2.
    Usage(String),
    /// Verification failure or solver capacity; exit 1.
    Failed(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify { pattern } => {
            let g = read_graph(&pattern)?;
            println!("{}", classify(&g));
            Ok(())
        }
        Command::Plan { pattern, out } => {
            let g = read_graph(&pattern)?;
            let p = plan(&g).map_err(|e| CliError::usage(e.to_string()))?;
            match out {
                Some(path) => std::fs::write(&path, p.to_string())
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display()))),
                None => {
                    print!("{p}");
                    Ok(())
                }
            }
        }
        Command::Reduce {
            plan: plan_path,
            instance,
            out,
        } => {
            let text = std::fs::read_to_string(&plan_path)
                .map_err(|e| CliError::usage(format!("{}: {e}", plan_path.display())))?;
            let p = ReductionPlan::parse(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", plan_path.display())))?;
            let inst = read_instance(&instance)?;
            let reduced = apply_plan(&p, &inst).map_err(|e| CliError::usage(e.to_string()))?;
            std::fs::write(&out, reduced.to_string())
                .map_err(|e| CliError::usage(format!("{}: {e}", out.display())))
        }
        Command::Solve { instance, pattern } => {
            let inst = read_instance(&instance)?;
            let p = read_graph(&pattern)?;
            match solve_branching(&inst, &p) {
                Ok(solution) => {
                    println!("{solution}");
                    Ok(())
                }
                Err(SolverError::CapacityExceeded) => {
                    Err(CliError::Failed("solver capacity exceeded".into()))
                }
                Err(e) => Err(CliError::usage(e.to_string())),
            }
        }
        Command::Verify { suite, n, k } => {
            let reports = run_suite(&suite, n, k, None)?;
            finish(reports)
        }
        Command::Fuzz {
            suite,
            n,
            k,
            seed,
            count,
        } => {
            let reports = run_suite(&suite, n, k, Some((seed, count)))?;
            finish(reports)
        }
    }
}

fn finish(reports: Vec<VerificationReport>) -> Result<(), CliError> {
    for r in &reports {
        print!("{r}");
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}

fn catalog() -> Vec<Graph> {
    vec![
        Graph::star(3),
        Graph::star(4),
        Graph::twin_star(2, 1),
        Graph::twin_star(2, 2),
        Graph::path(5),
        Graph::path(6),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::complete(4),
        Graph::petersen(),
        Graph::matching(2),
        Graph::matching(3),
        Graph::disjoint_union(&[Graph::matching(2), Graph::new(1)]),
        Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)]),
    ]
}

struct StepSuite {
    name: &'static str,
    default_n: usize,
    default_k: usize,
    steps: Vec<ReductionStep>,
}

fn step_suites() -> Vec<StepSuite> {
    vec![
        StepSuite {
            name: "star-step",
            default_n: 5,
            default_k: 2,
            steps: vec![ReductionStep::Star { leaves: 3 }],
        },
        StepSuite {
            name: "twin-star-step",
            default_n: 5,
            default_k: 2,
            steps: vec![ReductionStep::TwinStar { l1: 2, l2: 2 }],
        },
        StepSuite {
            name: "degree-strip",
            default_n: 5,
            default_k: 2,
            steps: vec![ReductionStep::DegreeStrip {
                target: Graph::path(5),
                degree: 1,
            }],
        },
        StepSuite {
            name: "regular-carve",
            default_n: 4,
            default_k: 1,
            steps: vec![ReductionStep::RegularCarve {
                target: Graph::complete(4),
                carving: [0, 1, 2].into_iter().collect(),
            }],
        },
        StepSuite {
            name: "component-lift",
            default_n: 5,
            default_k: 2,
            steps: vec![ReductionStep::ComponentLift {
                target: Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)]),
                designated: [0, 1, 2].into_iter().collect(),
            }],
        },
        StepSuite {
            name: "copy-step",
            default_n: 5,
            default_k: 2,
            steps: vec![
                ReductionStep::Copy {
                    component: Graph::matching(1),
                    copies: 2,
                },
                ReductionStep::Copy {
                    component: Graph::matching(1),
                    copies: 3,
                },
            ],
        },
    ]
}

fn run_suite(
    name: &str,
    n: Option<usize>,
    k: Option<usize>,
    random: Option<(u64, usize)>,
) -> Result<Vec<VerificationReport>, CliError> {
    if let Some(suite) = step_suites().into_iter().find(|s| s.name == name) {
        let host_limit = n.unwrap_or(suite.default_n);
        let budget_limit = k.unwrap_or(suite.default_k);
        let mode = match random {
            None => SweepMode::Exhaustive,
            Some((seed, count)) => SweepMode::Random { count, seed },
        };
        return Ok(suite
            .steps
            .iter()
            .map(|s| verify_step_equivalence(s, host_limit, budget_limit, mode))
            .collect());
    }
    match name {
        "solver-agreement" => {
            if random.is_some() {
                return Err(CliError::usage("solver-agreement has no random mode"));
            }
            let patterns = vec![
                Graph::path(3),
                Graph::path(4),
                Graph::complete(3),
                Graph::matching(2),
                Graph::complete(4),
                Graph::cycle(4),
            ];
            Ok(vec![verify_solver_agreement(
                n.unwrap_or(5),
                k.unwrap_or(3),
                &patterns,
            )])
        }
        "gadget-structure" => {
            let (seed, count) = random.unwrap_or((20240817, 50));
            Ok(vec![verify_gadget_structure_randomized(
                seed,
                count,
                n.unwrap_or(7),
                k.unwrap_or(3),
            )])
        }
        "budget-linearity" => {
            if random.is_some() {
                return Err(CliError::usage("budget-linearity has no random mode"));
            }
            Ok(vec![budget_linearity_suite(k.unwrap_or(2))])
        }
        "classification-catalog" => {
            if random.is_some() {
                return Err(CliError::usage("classification-catalog has no random mode"));
            }
            Ok(vec![classification_suite()])
        }
        "carving-existence" => {
            if random.is_some() {
                return Err(CliError::usage("carving-existence has no random mode"));
            }
            Ok(vec![carving_suite(n.unwrap_or(8))])
        }
        "mutation-kill" => {
            if random.is_some() {
                return Err(CliError::usage("mutation-kill has no random mode"));
            }
            Ok(mutation_kill_suite(n.unwrap_or(5), k.unwrap_or(2)))
        }
        "chains" => {
            if random.is_some() {
                return Err(CliError::usage("chains has no random mode"));
            }
            Ok(sweep_acceptance(&catalog(), n.unwrap_or(4), k.unwrap_or(1)))
        }
        other => Err(CliError::usage(format!(
            "unknown suite `{other}` (try: {}, solver-agreement, gadget-structure, \
             budget-linearity, classification-catalog, carving-existence, mutation-kill, chains)",
            step_suites()
                .iter()
                .map(|s| s.name)
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn budget_linearity_suite(max_k: usize) -> VerificationReport {
    let mut report = VerificationReport::new("budget-linearity");
    for h in catalog() {
        let p = match plan(&h) {
            Ok(p) => p,
            Err(e) => {
                report.cases += 1;
                report.failures.push(hfed::verifier::Failure {
                    case: format!("plan {h:?}"),
                    instance: None,
                    expected: "plan exists".into(),
                    got: e.to_string(),
                });
                continue;
            }
        };
        for k in 1..=max_k {
            for host in [Graph::path(4), Graph::cycle(5)] {
                let mut inst = Instance::new(host, k);
                for step in &p.steps {
                    report.cases += 1;
                    match apply_step(step, &inst) {
                        Ok(next) => {
                            if next.budget != k {
                                report.failures.push(hfed::verifier::Failure {
                                    case: format!("{step}"),
                                    instance: Some(inst.clone()),
                                    expected: format!("budget {k}"),
                                    got: format!("budget {}", next.budget),
                                });
                            }
                            inst = next;
                        }
                        Err(e) => {
                            report.failures.push(hfed::verifier::Failure {
                                case: format!("{step}"),
                                instance: Some(inst.clone()),
                                expected: "step applies".into(),
                                got: e.to_string(),
                            });
                            break;
                        }
                    }
                }
            }
        }
    }
    report
}

fn classification_suite() -> VerificationReport {
    let mut report = VerificationReport::new("classification-catalog");
    let paw = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]);
    let k1_k2 = Graph::disjoint_union(&[Graph::new(1), Graph::matching(1)]);
    let expectations: Vec<(Graph, &str)> = vec![
        (Graph::star(3), "class=Star params=3 witness=-"),
        (Graph::star(4), "class=Star params=4 witness=-"),
        (Graph::twin_star(2, 1), "class=TwinStar params=1,2 witness=-"),
        (Graph::twin_star(2, 2), "class=TwinStar params=2,2 witness=-"),
        (Graph::path(5), "class=GeneralTree params=4 witness=-"),
        (Graph::path(6), "class=GeneralTree params=5 witness=-"),
        (Graph::cycle(4), "class=Cycle params=4 witness=-"),
        (Graph::cycle(5), "class=Cycle params=5 witness=-"),
        (Graph::complete(4), "class=RegularHigh params=3 witness=-"),
        (Graph::petersen(), "class=RegularHigh params=3 witness=-"),
        (Graph::matching(2), "class=MatchingUnion params=2,0 witness=-"),
        (Graph::matching(3), "class=MatchingUnion params=3,0 witness=-"),
        (
            Graph::disjoint_union(&[Graph::matching(2), Graph::new(1)]),
            "class=MatchingUnion params=2,1 witness=-",
        ),
        (
            Graph::disjoint_union(&[Graph::complete(3), Graph::matching(1)]),
            "class=CompositeLargest params=inner=Cycle(3),t=1,rest=1 witness=1,2,3",
        ),
        (paw, "class=Unsupported params=- witness=-"),
        (k1_k2, "class=PolynomialTime params=- witness=-"),
    ];
    for (g, want) in expectations {
        report.cases += 1;
        let got = classify(&g).to_string();
        if got != want {
            report.failures.push(hfed::verifier::Failure {
                case: format!("{g:?}"),
                instance: None,
                expected: want.to_string(),
                got,
            });
        }
    }
    report
}

fn carving_suite(max_n: usize) -> VerificationReport {
    use hfed::pattern::find_carving_set;
    use hfed::verifier::enumerate::nonisomorphic_graphs_up_to;
    let mut report = VerificationReport::new("carving-existence");
    for g in nonisomorphic_graphs_up_to(max_n) {
        let n = g.vertex_count();
        if n < 4 || !g.is_connected() || (0..n).any(|v| g.degree(v) < 3) {
            continue;
        }
        report.cases += 1;
        if find_carving_set(&g, 3).is_none() {
            report.failures.push(hfed::verifier::Failure {
                case: format!("{g:?}"),
                instance: None,
                expected: "carving set exists".into(),
                got: "none".into(),
            });
        }
    }
    report
}

fn mutation_kill_suite(host_limit: usize, budget_limit: usize) -> Vec<VerificationReport> {
    let star = ReductionStep::Star { leaves: 3 };
    let copy = ReductionStep::Copy {
        component: Graph::matching(1),
        copies: 2,
    };
    let sweeps = [
        (&star, GadgetMutation::ShortBranch),
        (&star, GadgetMutation::DropBranchEdge),
        (&copy, GadgetMutation::PartialJoin),
    ];
    sweeps
        .into_iter()
        .map(|(step, mutation)| {
            let inner = verify_step_equivalence_mutated(
                step,
                mutation,
                host_limit,
                budget_limit,
                SweepMode::Exhaustive,
            );
            // the suite passes when the mutation is caught
            let mut report =
                VerificationReport::new(format!("mutation-kill[{}]", mutation.name()));
            report.cases = inner.cases;
            report.skips = inner.skips;
            if inner.failures.is_empty() {
                report.failures.push(hfed::verifier::Failure {
                    case: "kill".into(),
                    instance: None,
                    expected: "at least one counterexample".into(),
                    got: "none".into(),
                });
            } else {
                report
                    .notes
                    .push(format!("counterexamples={}", inner.failures.len()));
            }
            report
        })
        .collect()
}
