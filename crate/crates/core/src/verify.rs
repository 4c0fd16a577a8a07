//! Exhaustive and randomized checks of the game's structural claims.
//!
//! Each suite returns a [`SuiteReport`] with counts, failures (each carrying
//! a reproducible instance) and free-form findings.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::format::write_arc_list;
use crate::game::{play_match, Game, GameVariant, PushAbility};
use crate::generators::{
    circulant, complete, enumerate_connected_graphs, enumerate_orientations, is_k_degenerate, octahedron,
    random_connected_graph, random_orientation, OrientationMode,
};
use crate::graph::{OrientedGraph, UnderlyingGraph, VertexSet};
use crate::push_dag::{
    extend_reachability, find_dag_push_set, masks_acyclic, normalize_single_source, ReachabilityPartition,
};
use crate::solver::{optimal_robber, solve_game, SolveResult, Verdict};
use crate::strategies::{
    four_regular_strategy, oracle::OracleCop, strong_push_dag_strategy, trap_capture, Phase, RandomRobber, StayRobber,
    Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremDag,
    Theorem3Degen,
    TheoremMaxdeg4,
    Strategy4Regular,
    PushdagProps,
    Trap,
    Monotonic,
    Cycles,
    K4Obstruction,
    OpenSweep,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::TheoremDag,
        Suite::Theorem3Degen,
        Suite::TheoremMaxdeg4,
        Suite::Strategy4Regular,
        Suite::PushdagProps,
        Suite::Trap,
        Suite::Monotonic,
        Suite::Cycles,
        Suite::K4Obstruction,
        Suite::OpenSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremDag => "theorem-dag",
            Suite::Theorem3Degen => "theorem-3degen",
            Suite::TheoremMaxdeg4 => "theorem-maxdeg4",
            Suite::Strategy4Regular => "strategy-4regular",
            Suite::PushdagProps => "pushdag-props",
            Suite::Trap => "trap",
            Suite::Monotonic => "monotonic",
            Suite::Cycles => "cycles",
            Suite::K4Obstruction => "k4-obstruction",
            Suite::OpenSweep => "open-sweep",
        }
    }

    /// Default vertex bound for the exhaustive suites.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::TheoremDag | Suite::Monotonic => 5,
            Suite::Trap => 12,
            Suite::Cycles => 8,
            _ => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Instance count for the randomized trap suite.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: None, seed: 0, samples: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub instance: OrientedGraph,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counts {
    pub graphs: u64,
    pub classes: u64,
    pub orientations: u64,
    pub matches: u64,
    pub solves: u64,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub counts: Counts,
    pub failures: Vec<Failure>,
    pub findings: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, counts: Counts::default(), failures: Vec::new(), findings: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, instance: &OrientedGraph, message: impl Into<String>) {
        self.failures.push(Failure { instance: instance.clone(), message: message.into() });
    }

    /// The failure on the fewest vertices, then fewest edges.
    pub fn minimal_failure(&self) -> Option<&Failure> {
        self.failures.iter().min_by_key(|f| (f.instance.n(), f.instance.m()))
    }

    /// Writes the minimal failing instance as `<suite>-failure.arcs` in `dir`.
    pub fn write_reproduction(&self, dir: &Path) -> std::io::Result<Option<PathBuf>> {
        let Some(f) = self.minimal_failure() else {
            return Ok(None);
        };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}-failure.arcs", self.suite));
        let text = format!("# {}\n{}", f.message.replace('\n', " "), write_arc_list(&f.instance));
        std::fs::write(&path, text)?;
        Ok(Some(path))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        writeln!(
            f,
            "{}: {} (graphs {}, classes {}, orientations {}, matches {}, solves {}, failures {})",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            c.graphs,
            c.classes,
            c.orientations,
            c.matches,
            c.solves,
            self.failures.len()
        )?;
        for finding in &self.findings {
            writeln!(f, "  finding: {finding}")?;
        }
        for fail in self.failures.iter().take(5) {
            writeln!(f, "  failure: {} on {:?}", fail.message, fail.instance)?;
        }
        Ok(())
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let max_n = opts.max_n.unwrap_or(suite.default_max_n());
    match suite {
        Suite::TheoremDag => theorem_dag(max_n),
        Suite::Theorem3Degen => from_sweep(suite, &class_sweep(max_n, |g| is_k_degenerate(g, 3).0), "3-degenerate"),
        Suite::TheoremMaxdeg4 => from_sweep(suite, &class_sweep(max_n, |g| g.max_degree() <= 4), "max degree <= 4"),
        Suite::Strategy4Regular => strategy_four_regular(opts.seed),
        Suite::PushdagProps => pushdag_props(max_n),
        Suite::Trap => trap(max_n, opts.samples, opts.seed),
        Suite::Monotonic => monotonic(max_n, 3),
        Suite::Cycles => cycles(max_n),
        Suite::K4Obstruction => k4_obstruction(),
        Suite::OpenSweep => open_sweep(&class_sweep(max_n, |_| true)),
    }
}

/// Connected graphs on `2..=max_n` vertices (the single vertex has no push
/// classes worth checking but is included for `n = 1`).
fn connected_graphs(max_n: usize, max_degree: usize) -> impl Iterator<Item = Arc<UnderlyingGraph>> {
    (1..=max_n).flat_map(move |n| enumerate_connected_graphs(n, max_degree).expect("n within bounds").map(Arc::new))
}

fn class_reps(g: &Arc<UnderlyingGraph>) -> impl Iterator<Item = OrientedGraph> {
    enumerate_orientations(g.clone(), OrientationMode::Classes).expect("m within bounds")
}

/// Plays from every member of the class of `game.start()`.
fn members(game: &Game) -> impl Iterator<Item = (u64, Game)> + '_ {
    (0..game.start().push_class().size()).map(|i| (i, game.clone().with_start_class(i).expect("index in range")))
}

fn theorem_dag(max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::TheoremDag);
    let mut pushable = 0u64;
    for g in connected_graphs(max_n, usize::MAX) {
        rep.counts.graphs += 1;
        for class_rep in class_reps(&g) {
            rep.counts.classes += 1;
            let game = Game::new(&class_rep, GameVariant::strong(1)).expect("one cop");
            let mut solved: Option<Arc<SolveResult>> = None;
            for (i, member) in members(&game) {
                rep.counts.orientations += 1;
                let og = game.start().with_class_index(i);
                let Some(set) = find_dag_push_set(&og).expect("small") else { continue };
                pushable += 1;
                if !og.push_set(set.parity_set()).is_acyclic() {
                    rep.fail(&og, "returned push set does not give a DAG");
                    continue;
                }
                let result = solved.get_or_insert_with(|| {
                    rep.counts.solves += 1;
                    Arc::new(solve_game(game.start(), GameVariant::strong(1)).expect("within cap"))
                });
                if result.verdict_for_class(i) != Verdict::CopWin {
                    rep.fail(&og, "pushable to a DAG but the solver says robber-win");
                    continue;
                }
                let mut cop = strong_push_dag_strategy(&og).expect("pushable");
                let plan = cop.push_plan().len() as u64;
                let n = og.n() as u64;
                rep.counts.matches += 1;
                match play_match(&member, &mut cop, &mut optimal_robber(result.clone()), None) {
                    Ok(m) => match m.capture_round() {
                        Some(r) if r <= plan + 3 * n.saturating_sub(1) => {}
                        Some(r) => rep.fail(&og, format!("captured in {r} rounds, over the bound for plan {plan}")),
                        None => rep.fail(&og, "no capture within the round limit"),
                    },
                    Err(e) => rep.fail(&og, format!("match error: {e}")),
                }
            }
        }
    }
    rep.findings.push(format!("{pushable} orientations pushable to a DAG"));
    rep
}

/// Per-class solver outcome for one underlying graph.
#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub representative: OrientedGraph,
    /// Members (by class index) that one strong-push cop cannot catch.
    pub robber_wins: Vec<u64>,
    /// Among those, the ones two cops cannot catch either.
    pub robber_wins_two: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct GraphRecord {
    pub graph: Arc<UnderlyingGraph>,
    pub three_degenerate: bool,
    pub max_degree: usize,
    pub classes: Vec<ClassRecord>,
}

#[derive(Debug, Clone, Default)]
pub struct SweepData {
    pub max_n: usize,
    pub graphs: Vec<GraphRecord>,
    pub solves: u64,
}

/// One strong-push solve per push class of every connected graph on at most
/// `max_n` vertices passing `filter`, with a two-cop follow-up wherever one
/// cop loses.
pub fn class_sweep(max_n: usize, filter: impl Fn(&UnderlyingGraph) -> bool) -> SweepData {
    let mut data = SweepData { max_n, ..Default::default() };
    for g in connected_graphs(max_n, usize::MAX).filter(|g| filter(g)) {
        let mut classes = Vec::new();
        for rep in class_reps(&g) {
            data.solves += 1;
            let one = solve_game(&rep, GameVariant::strong(1)).expect("within cap");
            let size = rep.push_class().size();
            let robber_wins: Vec<u64> = (0..size).filter(|&i| one.verdict_for_class(i) != Verdict::CopWin).collect();
            let robber_wins_two = if robber_wins.is_empty() {
                Vec::new()
            } else {
                data.solves += 1;
                let two = solve_game(&rep, GameVariant::strong(2)).expect("within cap");
                robber_wins.iter().copied().filter(|&i| two.verdict_for_class(i) != Verdict::CopWin).collect()
            };
            classes.push(ClassRecord { representative: one.game().start().clone(), robber_wins, robber_wins_two });
        }
        data.graphs.push(GraphRecord {
            three_degenerate: is_k_degenerate(&g, 3).0,
            max_degree: g.max_degree(),
            graph: g,
            classes,
        });
    }
    data
}

fn tally(rep: &mut SuiteReport, data: &SweepData, pick: impl Fn(&GraphRecord) -> bool) {
    for gr in data.graphs.iter().filter(|gr| pick(gr)) {
        rep.counts.graphs += 1;
        for cr in &gr.classes {
            rep.counts.classes += 1;
            rep.counts.orientations += cr.representative.push_class().size();
        }
    }
}

/// Checks `c_sp = 1` on every orientation of the subset picked by `filter`.
pub fn theorem_from_sweep(
    suite: Suite,
    data: &SweepData,
    filter: impl Fn(&GraphRecord) -> bool,
    label: &str,
) -> SuiteReport {
    let mut rep = SuiteReport::new(suite);
    tally(&mut rep, data, &filter);
    rep.counts.solves = data.solves;
    for gr in data.graphs.iter().filter(|gr| filter(gr)) {
        for cr in &gr.classes {
            for &i in &cr.robber_wins {
                rep.fail(&cr.representative.with_class_index(i), format!("{label} orientation with c_sp > 1"));
            }
        }
    }
    rep.findings.push(format!("{label} graphs on at most {} vertices", data.max_n));
    rep
}

fn from_sweep(suite: Suite, data: &SweepData, label: &str) -> SuiteReport {
    // The sweep was already filtered to the subset.
    let mut rep = theorem_from_sweep(suite, data, |_| true, label);
    if suite == Suite::Theorem3Degen || suite == Suite::TheoremMaxdeg4 {
        oracle_spot_check(&mut rep, data);
    }
    rep
}

/// Plays the solver-backed cop from each class representative.
fn oracle_spot_check(rep: &mut SuiteReport, data: &SweepData) {
    for gr in &data.graphs {
        for cr in gr.classes.iter().filter(|cr| cr.robber_wins.is_empty()) {
            let result = Arc::new(solve_game(&cr.representative, GameVariant::strong(1)).expect("within cap"));
            let game = result.game().clone();
            let mut cop = OracleCop::from_result(result.clone()).expect("cop win");
            rep.counts.matches += 1;
            match play_match(&game, &mut cop, &mut optimal_robber(result.clone()), None) {
                Ok(m) if m.capture_round() == result.capture_rounds() => {}
                Ok(m) => rep.fail(
                    &cr.representative,
                    format!("oracle captured at {:?}, solver says {:?}", m.capture_round(), result.capture_rounds()),
                ),
                Err(e) => rep.fail(&cr.representative, format!("match error: {e}")),
            }
        }
    }
}

pub fn open_sweep(data: &SweepData) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::OpenSweep);
    tally(&mut rep, data, |_| true);
    rep.counts.solves = data.solves;
    let mut above_one = 0u64;
    let mut above_two = 0u64;
    for gr in &data.graphs {
        for cr in &gr.classes {
            above_one += cr.robber_wins.len() as u64;
            above_two += cr.robber_wins_two.len() as u64;
            for &i in &cr.robber_wins {
                let og = cr.representative.with_class_index(i);
                rep.findings.push(format!("c_sp > 1: {}", write_arc_list(&og).replace('\n', "; ")));
                // A guaranteed-by-theory subset must never show up here.
                if gr.three_degenerate || gr.max_degree <= 4 || find_dag_push_set(&og).ok().flatten().is_some() {
                    rep.fail(&og, "c_sp > 1 inside a subset where one cop always wins");
                }
            }
        }
    }
    rep.findings.insert(
        0,
        format!(
            "{} orientations on at most {} vertices: {above_one} with c_sp > 1, {above_two} with c_sp > 2",
            rep.counts.orientations, data.max_n
        ),
    );
    rep
}

/// Plays every orientation of the three 4-regular test graphs against the
/// optimal robber and against seeded random robbers, auditing the invariant
/// after every cop move.
fn strategy_four_regular(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Strategy4Regular);
    let graphs = [
        ("K5", complete(5).expect("valid")),
        ("octahedron", octahedron()),
        ("C8(1,2)", circulant(8, &[1, 2]).expect("valid")),
    ];
    for (name, g) in graphs {
        let g = Arc::new(g);
        rep.counts.graphs += 1;
        let mut violations = 0u64;
        let (mut walks, mut endgames, mut longest, mut adversary_leaves) = (0u64, 0u64, 0u64, 0u64);
        for class_rep in class_reps(&g) {
            rep.counts.classes += 1;
            rep.counts.solves += 1;
            let result = Arc::new(solve_game(&class_rep, GameVariant::strong(1)).expect("within cap"));
            let game = result.game().clone();
            for (i, member) in members(&game) {
                rep.counts.orientations += 1;
                let og = game.start().with_class_index(i);
                let robbers: Vec<Box<dyn Strategy>> = vec![
                    Box::new(optimal_robber(result.clone())),
                    Box::new(RandomRobber::new(seed ^ i)),
                    Box::new(RandomRobber::new(seed.wrapping_add(1) ^ (i << 8))),
                ];
                match four_regular_adversary(&member, 6 * og.n() as u64, 1 << 22) {
                    Ok(stats) => {
                        rep.counts.matches += stats.leaves;
                        adversary_leaves += stats.leaves;
                        longest = longest.max(stats.longest);
                    }
                    Err(msg) => {
                        violations += 1;
                        rep.fail(&og, format!("{name}: adversary: {msg}"));
                    }
                }
                for mut robber in robbers {
                    rep.counts.matches += 1;
                    match four_regular_match(&member, robber.as_mut()) {
                        Ok((round, phases)) => {
                            longest = longest.max(round);
                            walks += u64::from(phases.contains(&Phase::WalkToU));
                            endgames += u64::from(phases.contains(&Phase::TrapEndgame));
                        }
                        Err(msg) => {
                            violations += 1;
                            rep.fail(&og, format!("{name}: {msg}"));
                        }
                    }
                }
            }
        }
        rep.findings.push(format!(
            "{name}: {violations} failing matches, {endgames} with a scripted endgame, {walks} with a walk, \
             {adversary_leaves} exhaustive robber lines, longest {longest} rounds"
        ));
    }
    rep
}

/// One audited match; the error names what went wrong. On success returns
/// the capture round and the phases the cop passed through.
pub fn four_regular_match(game: &Game, robber: &mut dyn Strategy) -> Result<(u64, Vec<Phase>), String> {
    let mut cop = four_regular_strategy(game.start()).map_err(|e| e.to_string())?;
    let limit = 40 * game.n() as u64;
    let m = play_match(game, &mut cop, robber, Some(limit)).map_err(|e| e.to_string())?;
    let round = m.capture_round().ok_or("no capture within the round limit")?;
    // Independent audit: replay the trace, recompute the visited set and the
    // orientation after every cop move, and compare with the reported phase.
    let mut visited = VertexSet::EMPTY;
    let mut cop_moves = 0usize;
    for step in &m.trace.rounds {
        if let Some(r) = step.robber {
            visited.insert(r);
        }
        if step.actor != crate::game::Actor::Cop || step.action.kind == crate::game::ActionKind::Place {
            continue;
        }
        let og = game.start().with_class_index(step.class_index);
        let holds = visited.iter().all(|w| og.out_degree(w) <= 1);
        let phase = cop.history().get(cop_moves).copied().ok_or("phase history too short")?;
        cop_moves += 1;
        let captured = step.robber.is_some_and(|r| step.cops.contains(&r));
        if !holds && phase == Phase::MaintainInvariant && !captured {
            return Err(format!("invariant claimed but broken after cop move {cop_moves}"));
        }
    }
    Ok((round, cop.history().to_vec()))
}

fn pushdag_props(max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::PushdagProps);
    for g in connected_graphs(max_n, usize::MAX) {
        rep.counts.graphs += 1;
        let m = g.m();
        let n = g.n();
        let nbr: Vec<u64> = (0..n).map(|v| g.neighbors(v).0).collect();
        let mut out = vec![0u64; n];
        for mask in 0..1u64 << m {
            out.iter_mut().for_each(|o| *o = 0);
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if mask >> e & 1 == 1 {
                    out[v] |= 1 << u;
                } else {
                    out[u] |= 1 << v;
                }
            }
            debug_assert!((0..n).all(|v| out[v] & !nbr[v] == 0));
            if !masks_acyclic(&out) {
                continue;
            }
            rep.counts.orientations += 1;
            let og = OrientedGraph::from_edge_bits(g.clone(), (0..m).map(|e| mask >> e & 1 == 1).collect());
            check_extend(&mut rep, &og);
            check_normalize(&mut rep, &og);
        }
    }
    rep
}

fn check_extend(rep: &mut SuiteReport, og: &OrientedGraph) {
    for u in og.sources().iter() {
        let part = ReachabilityPartition::of(og, u);
        if part.unreachable.is_empty() {
            continue;
        }
        let seq = match extend_reachability(og, u) {
            Ok(s) => s,
            Err(e) => return rep.fail(og, format!("extend_reachability from {u}: {e}")),
        };
        if !seq.parity_set().is_subset(part.unreachable) {
            rep.fail(og, format!("extend_reachability from {u} pushed a reachable vertex"));
        }
        let after = og.push_set(seq.parity_set());
        let reach = after.reachable_from(u).expect("in range");
        if !after.is_acyclic() || !after.in_set(u).is_empty() {
            rep.fail(og, format!("after extending from {u}: not a DAG with {u} as a source"));
        }
        if !part.reachable.is_subset(reach) {
            rep.fail(og, format!("after extending from {u}: lost reachability"));
        }
        if !part.frontier.is_subset(reach) || part.frontier.is_empty() {
            rep.fail(og, format!("after extending from {u}: frontier not newly reachable"));
        }
    }
}

fn check_normalize(rep: &mut SuiteReport, og: &OrientedGraph) {
    match normalize_single_source(og) {
        Ok(norm) => {
            let n = og.n();
            let g = &norm.graph;
            let sources = g.sources();
            if !g.is_acyclic() || sources != VertexSet::singleton(norm.source) {
                rep.fail(og, "normalised graph is not a single-source DAG");
            }
            if g.reachable_from(norm.source).expect("in range") != VertexSet::full(n) {
                rep.fail(og, "normalised source does not reach every vertex");
            }
            if norm.source != og.sources().min().expect("a DAG has a source") {
                rep.fail(og, "normalised source is not the lowest-id source");
            }
            if norm.rounds > n.saturating_sub(1) {
                rep.fail(og, format!("{} rounds for {n} vertices", norm.rounds));
            }
            if !g.same_arcs(&og.push_set(norm.pushes.parity_set())) || g.class_id() != og.class_id() {
                rep.fail(og, "normalised graph left the push class");
            }
        }
        Err(e) => rep.fail(og, format!("normalize_single_source: {e}")),
    }
}

/// Random connected graph, random orientation, then every edge at the robber
/// turned inwards.
pub fn random_trap_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (OrientedGraph, usize, usize) {
    let n = rng.gen_range(2..=max_n.max(2));
    let p = rng.gen_range(0.05..0.5);
    let g = Arc::new(random_connected_graph(n, p, rng.gen()).expect("valid size"));
    let og = random_orientation(g.clone(), rng.gen());
    let robber = rng.gen_range(0..n);
    let mut cop_at = rng.gen_range(0..n - 1);
    if cop_at >= robber {
        cop_at += 1;
    }
    let arcs: Vec<(usize, usize)> =
        og.arcs().into_iter().map(|(a, b)| if a == robber { (b, a) } else { (a, b) }).collect();
    (OrientedGraph::from_arcs(n, &arcs).expect("same graph"), cop_at, robber)
}

fn trap(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Trap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0u64;
    for _ in 0..samples {
        let (og, c, r) = random_trap_instance(&mut rng, max_n);
        rep.counts.orientations += 1;
        rep.counts.matches += 1;
        let dist = og.graph().distances_from(c)[r] as u64;
        let game = Game::new(&og, GameVariant::new(PushAbility::Weak, 1)).expect("one cop");
        let mut cop = match trap_capture(&og, c, r) {
            Ok(s) => s,
            Err(e) => {
                rep.fail(&og, format!("trap_capture rejected a trapped robber: {e}"));
                continue;
            }
        };
        match play_match(&game, &mut cop, &mut StayRobber::at(r), Some(4 * og.n() as u64)) {
            Ok(m) => match m.capture_round() {
                Some(t) if t <= 2 * dist => worst = worst.max(t),
                other => rep.fail(&og, format!("cop {c}, robber {r}, distance {dist}: capture at {other:?}")),
            },
            Err(e) => rep.fail(&og, format!("cop {c}, robber {r}: {e}")),
        }
        if let Some(&w) = cop.pushes.iter().find(|&&w| og.graph().has_edge(w, r)) {
            rep.fail(&og, format!("pushed {w}, a neighbour of the robber at {r}"));
        }
    }
    rep.findings.push(format!("largest capture round {worst}"));
    rep
}

/// Smallest `k <= k_max` per class member, or `k_max + 1`.
fn class_cop_numbers(
    rep: &mut SuiteReport,
    class_rep: &OrientedGraph,
    ability: PushAbility,
    k_max: usize,
) -> Vec<usize> {
    let size = class_rep.push_class().size();
    let mut numbers = vec![k_max + 1; size as usize];
    for k in 1..=k_max {
        rep.counts.solves += 1;
        let result = solve_game(class_rep, GameVariant::new(ability, k)).expect("within cap");
        let mut open = false;
        for (i, slot) in numbers.iter_mut().enumerate() {
            if *slot > k_max {
                if result.verdict_for_class(i as u64) == Verdict::CopWin {
                    *slot = k;
                } else {
                    open = true;
                }
            }
        }
        if !open {
            break;
        }
    }
    numbers
}

fn monotonic(max_n: usize, k_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Monotonic);
    let mut strict = [0u64; 2];
    for g in connected_graphs(max_n, usize::MAX) {
        rep.counts.graphs += 1;
        for class_rep in class_reps(&g) {
            rep.counts.classes += 1;
            let sp = class_cop_numbers(&mut rep, &class_rep, PushAbility::Strong, k_max);
            let wp = class_cop_numbers(&mut rep, &class_rep, PushAbility::Weak, k_max);
            let c = class_cop_numbers(&mut rep, &class_rep, PushAbility::None, k_max);
            for i in 0..sp.len() {
                rep.counts.orientations += 1;
                if !(sp[i] <= wp[i] && wp[i] <= c[i]) {
                    rep.fail(
                        &class_rep.with_class_index(i as u64),
                        format!("c_sp = {}, c_wp = {}, c = {}", sp[i], wp[i], c[i]),
                    );
                }
                strict[0] += u64::from(sp[i] < wp[i]);
                strict[1] += u64::from(wp[i] < c[i]);
            }
        }
    }
    rep.findings.push(format!("c_sp < c_wp on {} orientations, c_wp < c on {}", strict[0], strict[1]));
    rep
}

fn cycles(max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Cycles);
    for n in 3..=max_n.max(3) {
        let og = crate::generators::directed_cycle(n).expect("n >= 3");
        rep.counts.graphs += 1;
        rep.counts.orientations += 1;
        let c = class_cop_numbers(&mut rep, &og, PushAbility::None, 3)[0];
        let sp = class_cop_numbers(&mut rep, &og, PushAbility::Strong, 3)[0];
        if c != 2 {
            rep.fail(&og, format!("directed {n}-cycle: c = {c}, expected 2"));
        }
        if sp != 1 {
            rep.fail(&og, format!("directed {n}-cycle: c_sp = {sp}, expected 1"));
        }
        if find_dag_push_set(&og).ok().flatten().is_none() {
            rep.fail(&og, format!("directed {n}-cycle is not pushable to a DAG"));
        }
    }
    rep
}

fn k4_obstruction() -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::K4Obstruction);
    let g = Arc::new(complete(4).expect("valid"));
    rep.counts.graphs = 1;
    let mut blocked = Vec::new();
    for class_rep in class_reps(&g) {
        rep.counts.classes += 1;
        rep.counts.orientations += class_rep.push_class().size();
        if find_dag_push_set(&class_rep).expect("small").is_none() {
            blocked.push(write_arc_list(&class_rep).replace('\n', "; "));
        }
    }
    rep.findings.push(format!(
        "{} of {} push classes of K4 cannot be pushed to a DAG",
        blocked.len(),
        rep.counts.classes
    ));
    if blocked.len() != 2 {
        rep.findings.push(format!("MISMATCH: expected two blocked orientations, found {}", blocked.len()));
    }
    for b in blocked {
        rep.findings.push(format!("blocked: {b}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Cycles, Suite::K4Obstruction] {
            let r = run(suite, &VerifyOptions { max_n: Some(5), ..Default::default() });
            assert!(r.passed(), "{r}");
        }
        let r = run(Suite::Trap, &VerifyOptions { max_n: Some(8), samples: 50, seed: 1 });
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn failures_write_reproductions() {
        let mut r = SuiteReport::new(Suite::Trap);
        let tri = crate::generators::directed_cycle(3).unwrap();
        r.fail(&tri, "example");
        let dir = std::env::temp_dir().join(format!("pushcops-repro-{}", std::process::id()));
        let path = r.write_reproduction(&dir).unwrap().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(crate::format::read_oriented(&text).unwrap().same_arcs(&tri));
        std::fs::remove_dir_all(dir).unwrap();
    }
}

/// Outcome of exploring every robber reply against the 4-regular cop.
#[derive(Debug, Clone, Default)]
pub struct AdversaryStats {
    pub leaves: u64,
    pub longest: u64,
    pub walks: u64,
    pub endgames: u64,
    /// True when the node budget ran out before the tree was exhausted.
    pub truncated: bool,
}

/// Depth-first search over all robber placements and moves. Every branch
/// must end in capture within `max_rounds` without an invariant violation.
pub fn four_regular_adversary(game: &Game, max_rounds: u64, node_budget: u64) -> Result<AdversaryStats, String> {
    use crate::game::{Action, Turn};
    use crate::strategies::FourRegular;

    fn go(
        game: &Game,
        cop: FourRegular,
        state: crate::game::GameState,
        round: u64,
        max_rounds: u64,
        budget: &mut u64,
        stats: &mut AdversaryStats,
    ) -> Result<(), String> {
        if *budget == 0 {
            stats.truncated = true;
            return Ok(());
        }
        *budget -= 1;
        if state.is_captured() {
            stats.leaves += 1;
            stats.longest = stats.longest.max(round);
            stats.walks += u64::from(cop.history().contains(&Phase::WalkToU));
            stats.endgames += u64::from(cop.history().contains(&Phase::TrapEndgame));
            return Ok(());
        }
        if round > max_rounds {
            return Err(format!("no capture after {max_rounds} rounds from {state:?}"));
        }
        match state.turn {
            Turn::CopTurn | Turn::CopPlacement => {
                let mut cop = cop;
                let a = cop.choose(game, &state).map_err(|e| format!("{e} at {state:?}"))?;
                let next = game.apply(&state, &a).map_err(|e| e.to_string())?;
                let og = game.orientation(&next);
                let holds = cop.visited().iter().all(|w| og.out_degree(w) <= 1);
                if state.turn == Turn::CopTurn
                    && cop.phase() == Phase::MaintainInvariant
                    && !holds
                    && !next.is_captured()
                {
                    return Err(format!("invariant claimed but broken after {a:?} at {state:?}"));
                }
                let r = if state.turn == Turn::CopTurn { round + 1 } else { round };
                go(game, cop, next, r, max_rounds, budget, stats)
            }
            Turn::RobberPlacement | Turn::RobberTurn => {
                for a in game.legal_actions(&state).map_err(|e| e.to_string())? {
                    if matches!(a, Action::PlaceRobber(v) if state.cops.as_ref().is_some_and(|c| c.contains(&v))) {
                        continue;
                    }
                    let next = game.apply(&state, &a).map_err(|e| e.to_string())?;
                    go(game, cop.clone(), next, round, max_rounds, budget, stats)?;
                }
                Ok(())
            }
        }
    }

    let cop = four_regular_strategy(game.start()).map_err(|e| e.to_string())?;
    let mut stats = AdversaryStats::default();
    let mut budget = node_budget;
    go(game, cop, game.initial_state(), 0, max_rounds, &mut budget, &mut stats)?;
    Ok(stats)
}
