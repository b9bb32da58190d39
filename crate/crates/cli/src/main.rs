//! `iterupd`: load scenario files, run updates, check postulates, and replay
//! the built-in scenarios.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iterupd::catalog::{load_example, replay_example};
use iterupd::conditions::{check_cr, equivalence_harness, Condition};
use iterupd::logic::{models, parse_formula, Formula, Universe, WorldSet};
use iterupd::postulates::{CheckOptions, Checker, Coverage, Postulate, DEFAULT_VIOLATION_LIMIT};
use iterupd::scenario::{evaluate_expectations, parse_scenario, print_scenario, StateView, Strategies};
use iterupd::search::{random_scenario, replay_impossibility, Family, OrderStyle, RandomParams, Variant};
use iterupd::states::{BeliefState, Scenario};
use iterupd::update::{apply_strategy, StrategyKind};

use report::{
    CheckView, CrView, EvalView, ExpectView, HarnessView, ImpossibilityView, IterateView, RandomView, Render,
    ReplayView, UpdateView,
};

/// Exhaustive checks above this many atoms take noticeably long.
const QUICK_ATOMS: usize = 3;

#[derive(Parser)]
#[command(name = "iterupd", version, about = "Iterated belief update over finite alphabets")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Op1,
    Scripted,
    Composite,
}

impl Op {
    fn kind(self) -> StrategyKind {
        match self {
            Op::Op1 => StrategyKind::Op1,
            Op::Scripted => StrategyKind::Scripted,
            Op::Composite => StrategyKind::Composite,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoverageArg {
    Total,
    ScriptedOnly,
}

#[derive(Args)]
struct StrategyArgs {
    /// Update strategy: the hierarchy operator, the file's script, or the
    /// script with the hierarchy operator for unscripted steps.
    #[arg(long, value_enum, default_value = "composite")]
    op: Op,
}

#[derive(Subcommand)]
enum Command {
    /// Print the models of a formula.
    Eval {
        file: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Update a state once.
    Update {
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long = "with")]
        with: String,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Update a state twice and compare with updating it by the second formula directly.
    Iterate {
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long = "with")]
        with: String,
        #[arg(long)]
        then: String,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Check postulates exhaustively at one or every state.
    Check {
        file: PathBuf,
        #[arg(long, required_unless_present = "all")]
        postulate: Option<String>,
        /// Check U1 to U8 and every iterated postulate.
        #[arg(long)]
        all: bool,
        /// Only this state; every state otherwise.
        #[arg(long)]
        state: Option<String>,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Defaults to scripted-only for the scripted strategy, total otherwise.
        #[arg(long, value_enum)]
        coverage: Option<CoverageArg>,
        /// Violations kept per report.
        #[arg(long, default_value_t = DEFAULT_VIOLATION_LIMIT)]
        limit: usize,
    },
    /// Check a semantic condition at one update.
    Cr {
        file: PathBuf,
        #[arg(long)]
        condition: String,
        #[arg(long)]
        state: String,
        #[arg(long = "with")]
        with: String,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, default_value_t = DEFAULT_VIOLATION_LIMIT)]
        limit: usize,
    },
    /// Compare every postulate with its semantic condition at every state and input.
    Harness {
        file: PathBuf,
        /// Comma-separated postulates (C1, ..., Ind); all seven by default.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Evaluate the `expect` block of a scenario file.
    Run { file: PathBuf },
    /// Print a scenario file in canonical form.
    Fmt { file: PathBuf },
    /// Replay a built-in scenario or the impossibility argument.
    Replay {
        #[arg(long, required_unless_present = "impossibility", conflicts_with = "impossibility")]
        example: Option<u8>,
        /// Enumerate the candidate orders for variant c1 or c2.
        #[arg(long, alias = "theorem6", value_parser = parse_variant)]
        impossibility: Option<Variant>,
        /// Constraint families to leave out (N0, N1, N2).
        #[arg(long, value_delimiter = ',', value_parser = parse_family, requires = "impossibility")]
        drop: Vec<Family>,
    },
    /// Print a seeded random scenario.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 2)]
        belief_size: usize,
        #[arg(long, default_value = "total-layered", value_parser = parse_style)]
        style: OrderStyle,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_style(s: &str) -> Result<OrderStyle, String> {
    s.parse()
}

/// A failure that ends the run with status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure(format!("{}:{e}", path.display())))
}

fn formula(sc: &Scenario, text: &str) -> Result<(Formula, WorldSet), Failure> {
    let f = parse_formula(text, &sc.universe).map_err(|e| Failure(format!("formula `{text}`: {e}")))?;
    let m = models(&f, &sc.universe)?;
    Ok((f, m))
}

fn state<'a>(sc: &'a Scenario, id: &str) -> Result<&'a BeliefState, Failure> {
    sc.state(id).ok_or_else(|| Failure(format!("unknown state `{id}`")))
}

fn warn_if_large(universe: &Universe) {
    if let Some(a) = universe.alphabet() {
        if a.len() > QUICK_ATOMS {
            eprintln!(
                "warning: {} atoms; exhaustive checks enumerate {} formula classes and may be slow",
                a.len(),
                format_classes(universe.size())
            );
        }
    }
}

fn format_classes(worlds: u32) -> String {
    if worlds >= 64 {
        format!("2^{worlds}")
    } else {
        (1u128 << worlds).to_string()
    }
}

fn coverage_for(op: Op, arg: Option<CoverageArg>) -> Coverage {
    match (arg, op) {
        (Some(CoverageArg::Total), _) => Coverage::Total,
        (Some(CoverageArg::ScriptedOnly), _) | (None, Op::Scripted) => Coverage::ScriptedOnly,
        (None, _) => Coverage::Total,
    }
}

fn execute(command: Command) -> Result<Box<dyn Render>, Failure> {
    Ok(match command {
        Command::Eval { file, formula: text } => {
            let sc = load(&file)?;
            let (f, m) = formula(&sc, &text)?;
            Box::new(EvalView {
                formula: f.to_string(),
                models: sc.universe.names(&m),
            })
        }
        Command::Update {
            file,
            state: id,
            with,
            strategy,
        } => {
            let sc = load(&file)?;
            let strategies = Strategies::new(&sc)?;
            let s = state(&sc, &id)?;
            let (f, phi) = formula(&sc, &with)?;
            let next = apply_strategy(strategies.get(strategy.op.kind()), s, &phi)?;
            Box::new(UpdateView {
                strategy: strategies.get(strategy.op.kind()).name().to_string(),
                from: id,
                formula: f.to_string(),
                models: sc.universe.names(&phi),
                next: StateView::new(&sc.universe, &next),
            })
        }
        Command::Iterate {
            file,
            state: id,
            with,
            then,
            strategy,
        } => {
            let sc = load(&file)?;
            let strategies = Strategies::new(&sc)?;
            let strategy = strategies.get(strategy.op.kind());
            let s = state(&sc, &id)?;
            let (f, phi) = formula(&sc, &with)?;
            let (g, varphi) = formula(&sc, &then)?;
            let next = apply_strategy(strategy, s, &phi)?;
            let iterated = strategy.update_belief(&next, &varphi)?;
            let direct = strategy.update_belief(s, &varphi)?;
            let u = &sc.universe;
            Box::new(IterateView {
                strategy: strategy.name().to_string(),
                from: id,
                first: f.to_string(),
                second: g.to_string(),
                after_first: StateView::new(u, &next),
                iterated: u.names(&iterated),
                direct: u.names(&direct),
            })
        }
        Command::Check {
            file,
            postulate,
            all,
            state: only,
            strategy,
            coverage,
            limit,
        } => {
            let sc = load(&file)?;
            warn_if_large(&sc.universe);
            let strategies = Strategies::new(&sc)?;
            let which: Vec<Postulate> = if all {
                Postulate::KM.iter().chain(Postulate::ITERATED.iter()).copied().collect()
            } else {
                let name = postulate.expect("clap requires one of --postulate and --all");
                vec![name.parse().map_err(|e| Failure(format!("{e}")))?]
            };
            let states: Vec<&BeliefState> = match &only {
                Some(id) => vec![state(&sc, id)?],
                None => sc.states.iter().collect(),
            };
            let checker = Checker::new(strategies.get(strategy.op.kind()), &sc.universe)
                .with_options(CheckOptions {
                    coverage: coverage_for(strategy.op, coverage),
                    violation_limit: limit,
                })
                .with_singletons(sc.declared_singletons());
            let mut reports = Vec::new();
            for s in states {
                for &p in &which {
                    reports.push(checker.check(s, p)?);
                }
            }
            Box::new(CheckView {
                universe: sc.universe.clone(),
                reports,
            })
        }
        Command::Cr {
            file,
            condition,
            state: id,
            with,
            strategy,
            limit,
        } => {
            let sc = load(&file)?;
            warn_if_large(&sc.universe);
            let strategies = Strategies::new(&sc)?;
            let condition: Condition = condition.parse().map_err(|e| Failure(format!("{e}")))?;
            let s = state(&sc, &id)?;
            let (_, phi) = formula(&sc, &with)?;
            let next = apply_strategy(strategies.get(strategy.op.kind()), s, &phi)?;
            Box::new(CrView {
                universe: sc.universe.clone(),
                report: check_cr(s, &next, &phi, condition, limit)?,
            })
        }
        Command::Harness { file, pairs, strategy } => {
            let sc = load(&file)?;
            warn_if_large(&sc.universe);
            let strategies = Strategies::new(&sc)?;
            let pairs: Vec<Postulate> = if pairs.is_empty() {
                Postulate::ITERATED.to_vec()
            } else {
                pairs
                    .iter()
                    .map(|p| {
                        p.parse::<Postulate>()
                            .ok()
                            .or_else(|| p.parse::<Condition>().ok().map(Condition::postulate))
                            .filter(|p| p.is_iterated())
                            .ok_or_else(|| Failure(format!("`{p}` is not an iterated postulate")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let report = equivalence_harness(
                strategies.get(strategy.op.kind()),
                &sc.universe,
                &sc.states,
                &pairs,
                coverage_for(strategy.op, None),
            )?;
            Box::new(HarnessView {
                universe: sc.universe.clone(),
                report,
            })
        }
        Command::Run { file } => {
            let sc = load(&file)?;
            Box::new(ExpectView {
                results: evaluate_expectations(&sc)?,
                universe: Some(sc.universe),
            })
        }
        Command::Fmt { file } => {
            let sc = load(&file)?;
            Box::new(RandomView {
                seed: None,
                scenario: print_scenario(&sc),
            })
        }
        Command::Replay {
            example,
            impossibility,
            drop,
        } => match (example, impossibility) {
            (Some(n), _) => Box::new(ReplayView {
                universe: load_example(n)?.universe,
                replay: replay_example(n)?,
            }),
            (None, Some(variant)) => Box::new(ImpossibilityView(replay_impossibility(variant, &drop))),
            (None, None) => unreachable!("clap requires --example or --impossibility"),
        },
        Command::Random {
            seed,
            atoms,
            belief_size,
            style,
        } => {
            let sc = random_scenario(RandomParams {
                seed,
                atoms,
                belief_size,
                style,
            })?;
            Box::new(RandomView {
                seed: Some(seed),
                scenario: print_scenario(&sc),
            })
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Update { .. } => "update",
        Command::Iterate { .. } => "iterate",
        Command::Check { .. } => "check",
        Command::Cr { .. } => "cr",
        Command::Harness { .. } => "harness",
        Command::Run { .. } => "run",
        Command::Fmt { .. } => "fmt",
        Command::Replay { .. } => "replay",
        Command::Random { .. } => "random",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(view) => {
            let text = if cli.json {
                format!("{}\n", report::to_json(name, view.as_ref()))
            } else {
                view.human()
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(view.exit_code())
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
