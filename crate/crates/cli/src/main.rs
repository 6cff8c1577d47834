use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use dmagic_core::constructions::eit_export;
use dmagic_core::criteria::{
    check_ad_regular_bounds, check_cpow, check_delta_full, check_direct_c4, check_lex_c4,
    check_nminus3_regular, check_odd_regular, check_shared_neighborhood, check_twin_antimagic,
    magic_criteria, CriterionVerdict, Verdict,
};
use dmagic_core::families::{cal_g, cycle};
use dmagic_core::graph::is_balanced_distance_magic;
use dmagic_core::products::{direct_product, lexicographic};
use dmagic_core::recipes::{Recipe, RecipeName};
use dmagic_core::report::{run_table1, Table1Options};
use dmagic_core::{
    classify, search, FamilySpec, Graph, GraphSpec, Labeling, Mode, Outcome, SearchSpec, Target,
};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "dmagic",
    version,
    about = "Distance magic and (a,d)-distance antimagic labelings"
)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the search engine (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a family or product expression.
    Construct {
        spec: String,
        #[arg(long)]
        dot: bool,
    },
    /// Produce a closed-form labeling.
    Label {
        recipe: String,
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Classify a labeling of a graph.
    Verify { graph: String, labeling: PathBuf },
    /// Evaluate an analytic criterion.
    Check {
        criterion: CriterionName,
        /// Family or product expression, or a graph JSON file.
        spec: String,
        /// Common difference for the progression criteria.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run the exact search oracle.
    Search {
        /// Graph JSON file, or a family or product expression.
        graph: String,
        #[arg(long, value_enum, default_value_t = TargetArg::Magic)]
        target: TargetArg,
        /// Fixed magic constant.
        #[arg(long)]
        c: Option<u64>,
        /// Fixed common difference; omitted means any d >= 1.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Find)]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Override the order ceiling of the chosen mode.
        #[arg(long)]
        ceiling: Option<usize>,
    },
    /// Export a distance magic labeling as an equalized incomplete tournament.
    Eit {
        graph: String,
        /// Labeling JSON; when omitted a recipe or the oracle supplies one.
        #[arg(long)]
        labeling: Option<PathBuf>,
    },
    /// Evaluate every row of the Harary graph table.
    Table1 {
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Criteria for G∘C_4 and G×C_4, optionally cross-checked by the oracle.
    Products {
        kind: ProductKind,
        n: usize,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionName {
    OddRegular,
    SharedNeighborhood,
    Twins,
    DeltaFull,
    AdBounds,
    Nminus3,
    Cpow,
    LexC4,
    DirectC4,
    Magic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Magic,
    Prog,
    Distinct,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Find,
    Decide,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Lex,
    Dir,
}

enum Failure {
    Input(anyhow::Error),
    Refuted(String),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<dmagic_core::Error> for Failure {
    fn from(e: dmagic_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Refuted(msg)) => {
            eprintln!("refuted: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(4)
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Construct { spec, dot } => {
            let g = parse_spec(spec)?.build()?;
            if *dot {
                out(&g.to_dot(None)?);
            } else {
                emit(cli, &g, || {
                    format!(
                        "{spec}: {} vertices, {} edges\n{}",
                        g.order(),
                        g.size(),
                        to_json(&g)
                    )
                })
            }
            Ok(())
        }
        Command::Label { recipe, n, dot } => label(cli, recipe, *n, *dot),
        Command::Verify { graph, labeling } => verify(cli, graph, labeling),
        Command::Check { criterion, spec, d } => check(cli, *criterion, spec, *d),
        Command::Search {
            graph,
            target,
            c,
            d,
            mode,
            budget,
            time_limit,
            ceiling,
        } => {
            let g = load_graph(graph)?;
            let target = match target {
                TargetArg::Magic => Target::Magic { c: *c },
                TargetArg::Prog => Target::Progression { d: *d },
                TargetArg::Distinct => Target::AllDistinct,
            };
            let mode = match mode {
                ModeArg::Find => Mode::FindOne,
                ModeArg::Decide => Mode::Decide,
                ModeArg::Count => Mode::CountAll,
            };
            let mut spec = SearchSpec::new(target, mode).with_threads(cli.threads);
            if let Some(b) = budget {
                spec = spec.with_budget(*b);
            }
            if let Some(t) = time_limit {
                let limit =
                    Duration::try_from_secs_f64(*t).map_err(|e| anyhow!("--time-limit: {e}"))?;
                spec = spec.with_time_budget(limit);
            }
            if let Some(c) = ceiling {
                spec = spec.with_ceiling(*c);
            }
            let result = search(&g, &spec)?;
            emit(cli, &result, || {
                let outcome = match &result.outcome {
                    Outcome::Found(f) => format!("found {:?}", f.as_slice()),
                    Outcome::ExhaustedNone => "exhausted, none".into(),
                    Outcome::BudgetExceeded => "budget exceeded".into(),
                    Outcome::Counted(k) => format!("count {k}"),
                };
                let kind = result
                    .profile
                    .as_ref()
                    .map(|p| format!("\n{}", p.kind))
                    .unwrap_or_default();
                format!("{target}: {outcome}{kind}\nnodes {}", result.stats.nodes)
            });
            if result.outcome == Outcome::BudgetExceeded {
                return Err(Failure::Budget(format!(
                    "{} nodes expanded",
                    result.stats.nodes
                )));
            }
            Ok(())
        }
        Command::Eit { graph, labeling } => eit(cli, graph, labeling.as_deref()),
        Command::Table1 { budget } => {
            let report = run_table1(&Table1Options {
                node_budget: *budget,
                threads: cli.threads,
            });
            emit(cli, &report, || report.to_string());
            let refuted = report.refuted_rows();
            if !refuted.is_empty() {
                let names: Vec<String> = refuted
                    .iter()
                    .map(|r| format!("{} {}", r.family, r.claim))
                    .collect();
                return Err(Failure::Refuted(names.join("; ")));
            }
            Ok(())
        }
        Command::Products {
            kind,
            n,
            oracle,
            budget,
        } => products(cli, *kind, *n, *oracle, *budget),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush());
}

fn emit<T: Serialize>(cli: &Cli, value: &T, human: impl FnOnce() -> String) {
    let mut text = if cli.json { to_json(value) } else { human() };
    text.push('\n');
    out(&text);
}

fn parse_spec(s: &str) -> anyhow::Result<GraphSpec> {
    s.parse::<GraphSpec>().map_err(Into::into)
}

/// Reads a graph JSON file when `arg` names one, else parses it as an expression.
fn load_graph(arg: &str) -> anyhow::Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Graph::from_json_str(&text).with_context(|| format!("parsing {arg}"));
    }
    Ok(parse_spec(arg)?.build()?)
}

/// Accepts `{"labels": [...]}` or a bare array.
fn load_labeling(path: &Path) -> anyhow::Result<Labeling> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match Labeling::from_json_str(&text) {
        Ok(f) => Ok(f),
        Err(_) => {
            let labels: Vec<usize> = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            Ok(Labeling::new(labels)?)
        }
    }
}

fn label(cli: &Cli, name: &str, n: usize, dot: bool) -> Run {
    let recipe_name: RecipeName = name.parse()?;
    let recipe = recipe_name.build(n)?;
    let profile = classify(&recipe.graph, &recipe.labeling)?;
    let verified = profile.kind == recipe.predicted;
    if dot {
        out(&recipe.graph.to_dot(Some(&recipe.labeling))?);
    } else {
        let out = json!({
            "recipe": recipe.name,
            "graph": recipe.graph,
            "labeling": recipe.labeling,
            "profile": profile,
            "predicted": recipe.predicted,
            "verified": verified,
        });
        emit(cli, &out, || {
            format!(
                "{}: {} vertices, {} edges\nlabels {:?}\nweights {:?}\n{} (predicted {})",
                recipe.name,
                recipe.graph.order(),
                recipe.graph.size(),
                recipe.labeling.as_slice(),
                profile.weights,
                profile.kind,
                recipe.predicted
            )
        });
    }
    if !verified {
        return Err(Failure::Refuted(format!(
            "{} classifies as {}, predicted {}",
            recipe.name, profile.kind, recipe.predicted
        )));
    }
    Ok(())
}

fn verify(cli: &Cli, graph: &str, labeling: &Path) -> Run {
    let g = load_graph(graph)?;
    let f = load_labeling(labeling)?;
    let profile = classify(&g, &f)?;
    let balanced = if profile.kind.is_magic() {
        is_balanced_distance_magic(&g, &f)?
    } else {
        None
    };
    let out = json!({ "profile": profile, "balanced": balanced });
    emit(cli, &out, || {
        let mut s = format!("{}\nweights {:?}", profile.kind, profile.weights);
        if let Some(p) = &balanced {
            s.push_str(&format!("\nbalanced, twin pairs {:?}", p.pairs));
        }
        s
    });
    Ok(())
}

fn family_params(spec: &str) -> anyhow::Result<FamilySpec> {
    spec.parse::<FamilySpec>().map_err(Into::into)
}

fn check(cli: &Cli, criterion: CriterionName, spec: &str, d: Option<usize>) -> Run {
    let need_d = || d.ok_or_else(|| anyhow!("this criterion needs --d"));
    let verdicts: Vec<CriterionVerdict> = match criterion {
        CriterionName::OddRegular => vec![check_odd_regular(&load_graph(spec)?)],
        CriterionName::SharedNeighborhood => vec![check_shared_neighborhood(&load_graph(spec)?)],
        CriterionName::Twins => vec![check_twin_antimagic(&load_graph(spec)?)],
        CriterionName::DeltaFull => vec![check_delta_full(&load_graph(spec)?)?],
        CriterionName::Magic => magic_criteria(&load_graph(spec)?),
        CriterionName::AdBounds => {
            let g = load_graph(spec)?;
            let r = g
                .regularity()
                .ok_or_else(|| anyhow!("{spec} is not regular"))?;
            vec![check_ad_regular_bounds(r, g.order(), need_d()?)?]
        }
        CriterionName::Nminus3 => {
            let g = load_graph(spec)?;
            if g.regularity().map(|r| r + 3) != Some(g.order()) {
                return Err(anyhow!("{spec} is not (n-3)-regular").into());
            }
            vec![check_nminus3_regular(g.order(), need_d()?)?]
        }
        CriterionName::Cpow => match family_params(spec)? {
            FamilySpec::CyclePower { n, m } => vec![check_cpow(n, m)?],
            FamilySpec::Harary { m, n } if m % 2 == 0 => vec![check_cpow(n, m / 2)?],
            _ => return Err(anyhow!("cpow needs cpow:n,m or harary:2m,n").into()),
        },
        CriterionName::LexC4 | CriterionName::DirectC4 => {
            let FamilySpec::CalG(n) = family_params(spec)? else {
                return Err(anyhow!("expected calg:n").into());
            };
            if matches!(criterion, CriterionName::LexC4) {
                vec![check_lex_c4(n)?]
            } else {
                vec![check_direct_c4(n)?]
            }
        }
    };
    emit(cli, &verdicts, || {
        verdicts
            .iter()
            .map(|v| format!("{}: {:?}\n{}", v.criterion, v.verdict, to_json(&v.witness)))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(())
}

/// A recipe whose graph is exactly `g`, if any.
fn recipe_for(g: &Graph) -> Option<Recipe> {
    RecipeName::ALL.iter().find_map(|name| {
        (1..=g.order())
            .filter_map(|n| name.build(n).ok())
            .find(|r| r.graph.order() == g.order() && r.graph == *g && r.predicted.is_magic())
    })
}

fn eit(cli: &Cli, graph: &str, labeling: Option<&Path>) -> Run {
    let g = load_graph(graph)?;
    let (f, source) = match labeling {
        Some(path) => (load_labeling(path)?, "file".to_string()),
        None => match recipe_for(&g) {
            Some(r) => (r.labeling, format!("recipe {}", r.name)),
            None => {
                let spec = SearchSpec::find(Target::Magic { c: None }).with_threads(cli.threads);
                match search(&g, &spec)?.outcome {
                    Outcome::Found(f) => (f, "oracle".to_string()),
                    Outcome::BudgetExceeded => {
                        return Err(Failure::Budget("no magic labeling found".into()))
                    }
                    _ => return Err(anyhow!("{graph} has no distance magic labeling").into()),
                }
            }
        },
    };
    let schedule = eit_export(&g, &f)?;
    let out = json!({ "source": source, "schedule": schedule });
    emit(cli, &out, || {
        let mut s = format!(
            "EIT({}, {}) strength {} from {source}",
            schedule.teams, schedule.rounds, schedule.strength
        );
        for (team, opp) in &schedule.opponents {
            s.push_str(&format!("\n  team {team}: {opp:?}"));
        }
        s
    });
    Ok(())
}

fn products(cli: &Cli, kind: ProductKind, n: usize, oracle: bool, budget: u64) -> Run {
    let (verdict, g) = match kind {
        ProductKind::Lex => (check_lex_c4(n)?, lexicographic(&cal_g(n)?, &cycle(4)?)),
        ProductKind::Dir => (check_direct_c4(n)?, direct_product(&cal_g(n)?, &cycle(4)?)),
    };
    let oracle_result = if oracle {
        let spec = SearchSpec::decide(Target::Magic { c: None })
            .with_budget(budget)
            .with_threads(cli.threads);
        Some(search(&g, &spec)?)
    } else {
        None
    };
    let out = json!({ "verdict": verdict, "oracle": oracle_result });
    emit(cli, &out, || {
        let mut s = format!(
            "{}: {:?}\n{}",
            verdict.criterion,
            verdict.verdict,
            to_json(&verdict.witness)
        );
        if let Some(r) = &oracle_result {
            s.push_str(&format!(
                "\noracle: {:?} after {} nodes",
                r.outcome, r.stats.nodes
            ));
        }
        s
    });
    if let Some(r) = &oracle_result {
        let found = r.outcome.labeling().is_some();
        let exhausted = r.outcome == Outcome::ExhaustedNone;
        if (found && verdict.verdict.is_negative())
            || (exhausted && verdict.verdict == Verdict::CharacterizedYes)
        {
            return Err(Failure::Refuted(format!(
                "oracle disagrees with {}",
                verdict.criterion
            )));
        }
    }
    Ok(())
}
