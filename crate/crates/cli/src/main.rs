use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pushcops::format::{read_oriented, write_arc_list};
use pushcops::game::{play_match, Game, GameVariant, MatchError, PushAbility};
use pushcops::generators::{enumerate_orientations, random_orientation, Family, OrientationMode};
use pushcops::graph::OrientedGraph;
use pushcops::push_dag::{find_dag_push_set, normalize_single_source};
use pushcops::solver::{cop_number_detail, optimal_robber, solve_game, SolveResult};
use pushcops::strategies::{
    four_regular_strategy, oracle::OracleCop, strong_push_dag_strategy, Manual, RandomRobber, StayRobber, Strategy,
    StrategyError,
};
use pushcops::sweep::{parse_spec, run_sweep};
use pushcops::verify::{self, Suite, VerifyOptions};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pushcops", version, about = "Cops and Robber with push moves on oriented graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game exactly and report the verdict.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "strong")]
        push: PushAbility,
        #[arg(long, default_value_t = 1)]
        cops: usize,
        /// Search for the cop number up to --cops instead of a single verdict.
        #[arg(long)]
        cop_number: bool,
        #[arg(long)]
        json: bool,
    },
    /// Play one match between two strategies.
    Play {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        cop: CopKind,
        #[arg(long, value_enum, default_value = "optimal")]
        robber: RobberKind,
        #[arg(long, default_value = "strong")]
        push: PushAbility,
        #[arg(long, default_value_t = 1)]
        cops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_rounds: Option<u64>,
        /// Write the trace JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Find pushes that turn the orientation into a DAG.
    Pushdag {
        #[arg(long)]
        input: PathBuf,
        /// Also push to a DAG with a single source.
        #[arg(long)]
        normalize: bool,
    },
    /// Generate arc-list files for a graph family.
    Gen {
        #[arg(long)]
        family: String,
        /// Comma-separated integers, e.g. `8,1,2` for a circulant.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value = "given")]
        orient: OrientKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random orientations.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Directory for the files; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch of cop-number computations from a JSON spec.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "sweep-out")]
        out: PathBuf,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Where a failing suite writes its reproduction file.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CopKind {
    FourRegular,
    Dag,
    Oracle,
    Manual,
}

#[derive(Clone, Copy, ValueEnum)]
enum RobberKind {
    Optimal,
    Random,
    Manual,
    Stay,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientKind {
    Given,
    Random,
    Enumerate,
    Classes,
}

/// Failure class, mapped to the process exit code.
enum Failure {
    User(anyhow::Error),
    Verdict(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::User(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_graph(path: &Path) -> anyhow::Result<OrientedGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    read_oriented(&text).with_context(|| format!("{}", path.display()))
}

fn solve(input: &Path, push: PushAbility, cops: usize, cop_number: bool, as_json: bool) -> Outcome {
    let og = read_graph(input)?;
    let start = Instant::now();
    let (verdict, number, rounds, states) = if cop_number {
        let (number, result, states) = cop_number_detail(&og, push, cops).context("--cops")?;
        let verdict = if result.is_some() { "cop-win" } else { "robber-win" };
        (verdict.to_string(), Some(number.to_string()), result.and_then(|r| r.capture_rounds()), states)
    } else {
        let result = solve_game(&og, GameVariant::new(push, cops)).context("--cops")?;
        (result.verdict().to_string(), None, result.capture_rounds(), result.state_count())
    };
    let runtime_ms = start.elapsed().as_millis() as u64;
    if as_json {
        let mut v = json!({
            "verdict": verdict,
            "capture_rounds": rounds,
            "states": states,
            "runtime_ms": runtime_ms,
        });
        if let Some(n) = number {
            v["cop_number"] = json!(n);
        }
        println!("{v}");
    } else {
        println!("verdict: {verdict}");
        if let Some(n) = number {
            println!("cop number: {n}");
        }
        match rounds {
            Some(r) => println!("capture rounds: {r}"),
            None => println!("capture rounds: none"),
        }
        println!("states: {states}\nruntime: {runtime_ms} ms");
    }
    Ok(())
}

fn strategy_failure(e: StrategyError) -> Failure {
    match e {
        StrategyError::InternalInvariantViolation(_) => Failure::Internal(e.into()),
        StrategyError::NotCopWin
        | StrategyError::NotPushableToDag
        | StrategyError::NotFourRegular
        | StrategyError::NotSingleSourceDag => Failure::Verdict(e.into()),
        other => Failure::User(other.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn play(
    input: &Path,
    cop_kind: CopKind,
    robber_kind: RobberKind,
    push: PushAbility,
    cops: usize,
    seed: u64,
    max_rounds: Option<u64>,
    trace: Option<&Path>,
) -> Outcome {
    let og = read_graph(input)?;
    let variant = GameVariant::new(push, cops);
    let game = Game::new(&og, variant).map_err(|e| Failure::User(e.into()))?;
    let needs_solve = matches!(cop_kind, CopKind::Oracle) || matches!(robber_kind, RobberKind::Optimal);
    let solved: Option<Arc<SolveResult>> =
        if needs_solve { Some(Arc::new(solve_game(&og, variant).context("--cops")?)) } else { None };
    let stdin = io::stdin();
    let mut cop: Box<dyn Strategy> = match cop_kind {
        CopKind::FourRegular => Box::new(four_regular_strategy(&og).map_err(strategy_failure)?),
        CopKind::Dag => Box::new(strong_push_dag_strategy(&og).map_err(strategy_failure)?),
        CopKind::Oracle => Box::new(OracleCop::from_result(solved.clone().expect("solved")).map_err(strategy_failure)?),
        CopKind::Manual => Box::new(Manual::new(stdin.lock(), io::stderr())),
    };
    let mut robber: Box<dyn Strategy> = match robber_kind {
        RobberKind::Optimal => Box::new(optimal_robber(solved.clone().expect("solved"))),
        RobberKind::Random => Box::new(RandomRobber::new(seed)),
        RobberKind::Manual => Box::new(Manual::new(stdin.lock(), io::stderr())),
        RobberKind::Stay => Box::new(StayRobber::new()),
    };
    let result = match play_match(&game, cop.as_mut(), robber.as_mut(), max_rounds) {
        Ok(r) => r,
        Err(MatchError::Strategy { source, .. }) => return Err(strategy_failure(source)),
        Err(e) => return Err(Failure::Internal(e.into())),
    };
    if let Some(path) = trace {
        std::fs::write(path, result.trace.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match result.capture_round() {
        Some(r) => println!("captured in round {r}"),
        None => println!("no capture within {} rounds", result.trace.rounds.last().map_or(0, |s| s.round)),
    }
    Ok(())
}

fn pushdag(input: &Path, normalize: bool) -> Outcome {
    let og = read_graph(input)?;
    let set = find_dag_push_set(&og)
        .map_err(|e| Failure::User(e.into()))?
        .ok_or_else(|| Failure::Verdict(anyhow!("no push set turns {} into a DAG", input.display())))?;
    let dag = og.push_set(set.parity_set());
    println!("push set: {set}");
    if normalize {
        let norm = normalize_single_source(&dag).map_err(|e| Failure::Internal(e.into()))?;
        let mut all = set.clone();
        all.extend(&norm.pushes);
        println!("normalizing pushes: {}", norm.pushes);
        println!("combined pushes: {}", all.reduced());
        println!("source: {}", norm.source);
        print!("{}", write_arc_list(&norm.graph));
    } else {
        print!("{}", write_arc_list(&dag));
    }
    Ok(())
}

fn gen(family: &str, params: &str, orient: OrientKind, seed: u64, count: usize, out: Option<&Path>) -> Outcome {
    let fam = Family::parse(family, params).context("--family/--params")?;
    let base = fam.reference().context("--params")?;
    let g = base.graph_arc().clone();
    let graphs: Vec<OrientedGraph> = match orient {
        OrientKind::Given => vec![base],
        OrientKind::Random => (0..count as u64).map(|i| random_orientation(g.clone(), seed.wrapping_add(i))).collect(),
        OrientKind::Enumerate => enumerate_orientations(g, OrientationMode::All).context("--orient")?.collect(),
        OrientKind::Classes => enumerate_orientations(g, OrientationMode::Classes).context("--orient")?.collect(),
    };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            for (i, og) in graphs.iter().enumerate() {
                let path = dir.join(format!("{}-{i}.arcs", fam.name()));
                std::fs::write(&path, format!("# {fam}\n{}", write_arc_list(og)))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            println!("wrote {} files to {}", graphs.len(), dir.display());
        }
        None => {
            let mut stdout = io::stdout().lock();
            for (i, og) in graphs.iter().enumerate() {
                let sep = if i > 0 { "\n" } else { "" };
                write!(stdout, "{sep}# {fam} #{i}\n{}", write_arc_list(og)).context("stdout")?;
            }
        }
    }
    Ok(())
}

fn sweep(spec: &Path, out: &Path) -> Outcome {
    let text = std::fs::read_to_string(spec).with_context(|| format!("cannot read {}", spec.display()))?;
    let spec = parse_spec(&text).with_context(|| format!("{}", spec.display()))?;
    let report = run_sweep(&spec).context("sweep")?;
    report.write_to(out).map_err(|e| Failure::Internal(e.into()))?;
    println!(
        "{} rows, {} errors, {} strong-push instances with cop number above 1; results in {}",
        report.counters.rows,
        report.counters.errors,
        report.counters.strong_push_above_one,
        out.display()
    );
    Ok(())
}

fn verify_suite(name: &str, max_n: Option<usize>, seed: u64, samples: usize, out: &Path) -> Outcome {
    let suite: Suite = name.parse().map_err(|e: verify::UnknownSuite| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        anyhow!("{e}; known suites: {}", names.join(", "))
    })?;
    let report = verify::run(suite, &VerifyOptions { max_n, seed, samples });
    print!("{report}");
    if report.passed() {
        return Ok(());
    }
    let path = report.write_reproduction(out).context("writing the reproduction file")?;
    let shown = path.map(|p| p.display().to_string()).unwrap_or_default();
    Err(Failure::Internal(anyhow!("{suite} failed; minimal instance written to {shown}")))
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { input, push, cops, cop_number, json } => solve(&input, push, cops, cop_number, json),
        Command::Play { input, cop, robber, push, cops, seed, max_rounds, trace } => {
            play(&input, cop, robber, push, cops, seed, max_rounds, trace.as_deref())
        }
        Command::Pushdag { input, normalize } => pushdag(&input, normalize),
        Command::Gen { family, params, orient, seed, count, out } => {
            gen(&family, &params, orient, seed, count, out.as_deref())
        }
        Command::Sweep { spec, out } => sweep(&spec, &out),
        Command::Verify { suite, max_n, seed, samples, out } => verify_suite(&suite, max_n, seed, samples, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, e) = match f {
                Failure::User(e) => (1, e),
                Failure::Verdict(e) => (2, e),
                Failure::Internal(e) => (3, e),
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
