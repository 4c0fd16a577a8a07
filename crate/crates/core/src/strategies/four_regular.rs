//! Single strong-push cop on an orientation of a 4-regular graph.
//!
//! The cop keeps every vertex the robber has visited at out-degree at most
//! one. When that cannot be kept it runs a short scripted endgame that ends
//! with the robber on a vertex of out-degree at most one, where pushing the
//! remaining out-neighbour traps it. Scripts are lists of rules keyed on the
//! robber's vertex and read the live orientation, so a robber that ignores a
//! forced move is simply handled by whichever rule (or the out-degree one
//! trap) applies where it stands.

use crate::game::{Action, CopAction, Game, GameState, PushAbility, Turn};
use crate::graph::{OrientedGraph, VertexSet};

use super::{cop, expect_turn, require_single_cop, single_cop_positions, trap_step, Strategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Every visited vertex has out-degree at most one.
    MaintainInvariant,
    /// A scripted endgame (or a trapped robber) is running.
    TrapEndgame,
    /// Walking towards the neighbourhood of the robber's vertex.
    WalkToU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Act {
    Push(usize),
    /// Push the robber's out-neighbour other than the given vertex.
    PushOutExcept(usize),
    /// Push the robber's out-neighbour other than the cop's vertex.
    PushOutExceptCop,
    /// Push `then` if `probe` has out-degree 3, else `otherwise`.
    IfOut3 {
        probe: usize,
        then: usize,
        otherwise: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rule {
    at: usize,
    out: Option<usize>,
    act: Act,
    once: bool,
}

fn rule(at: usize, act: Act) -> Rule {
    Rule { at, out: None, act, once: false }
}

fn rule_out(at: usize, out: usize, act: Act) -> Rule {
    Rule { at, out: Some(out), act, once: false }
}

fn once(at: usize, act: Act) -> Rule {
    Rule { at, out: None, act, once: true }
}

#[derive(Debug, Clone)]
struct Walk {
    u: usize,
    x: usize,
    y: usize,
    x1: usize,
    x2: usize,
    y2: usize,
    target: VertexSet,
}

/// What a dispatch decided for this cop turn.
struct Plan {
    action: CopAction,
    rules: Vec<Rule>,
    walk: Option<Walk>,
}

impl Plan {
    fn push(w: usize) -> Self {
        Plan { action: CopAction::Push(w), rules: Vec::new(), walk: None }
    }

    fn with(w: usize, rules: Vec<Rule>) -> Self {
        Plan { action: CopAction::Push(w), rules, walk: None }
    }
}

const SCRIPT_BUDGET: u64 = 8;

#[derive(Debug, Clone)]
pub struct FourRegular {
    visited: VertexSet,
    rules: Vec<Rule>,
    walk: Option<Walk>,
    phase: Phase,
    deadline: u64,
    turns: u64,
    invariant_held: bool,
    history: Vec<Phase>,
}

pub fn four_regular_strategy(og: &OrientedGraph) -> Result<FourRegular, StrategyError> {
    if og.graph().regular_degree() != Some(4) {
        return Err(StrategyError::NotFourRegular);
    }
    Ok(FourRegular {
        visited: VertexSet::EMPTY,
        rules: Vec::new(),
        walk: None,
        phase: Phase::MaintainInvariant,
        deadline: 0,
        turns: 0,
        invariant_held: true,
        history: Vec::new(),
    })
}

fn violation(msg: impl Into<String>) -> StrategyError {
    StrategyError::InternalInvariantViolation(msg.into())
}

fn other(set: VertexSet, not: usize) -> Result<usize, StrategyError> {
    let rest: Vec<usize> = set.iter().filter(|&v| v != not).collect();
    match rest.as_slice() {
        [w] => Ok(*w),
        _ => Err(violation(format!("expected exactly one vertex of {set:?} besides {not}"))),
    }
}

impl FourRegular {
    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Phase after each cop move so far.
    pub fn history(&self) -> &[Phase] {
        &self.history
    }

    pub fn visited(&self) -> VertexSet {
        self.visited
    }

    fn invariant(&self, og: &OrientedGraph) -> bool {
        self.visited.iter().all(|w| og.out_degree(w) <= 1)
    }

    fn step(&mut self, og: &OrientedGraph, c: usize, r: usize) -> Result<CopAction, StrategyError> {
        if og.has_arc(c, r) {
            return Ok(CopAction::MoveTo(r));
        }
        match og.out_degree(r) {
            0 => return trap_step(og, c, r),
            1 => return Ok(CopAction::Push(og.out_set(r).min().expect("one out-neighbour"))),
            _ => {}
        }
        if let Some(i) = self.rules.iter().position(|rl| rl.at == r && rl.out.is_none_or(|d| og.out_degree(r) == d)) {
            let rl = self.rules[i];
            if rl.once {
                self.rules.remove(i);
            }
            return self.act(og, c, r, rl.act);
        }
        if let Some(walk) = self.walk.clone() {
            if walk.u == r {
                return self.walk_step(og, c, &walk);
            }
        }
        if !self.invariant_held {
            return Err(violation(format!(
                "robber at {r} (out-degree {}) outside any scripted endgame",
                og.out_degree(r)
            )));
        }
        let plan = if self.turns == 0 { base_case(og, r) } else { maintain(og, r, self.visited)? };
        self.rules = plan.rules;
        self.walk = plan.walk.clone();
        if let Some(walk) = plan.walk {
            self.deadline = self.turns + 2 * og.n() as u64 + SCRIPT_BUDGET;
            return self.walk_step(og, c, &walk);
        }
        self.deadline = self.turns + SCRIPT_BUDGET;
        Ok(plan.action)
    }

    fn act(&self, og: &OrientedGraph, c: usize, r: usize, act: Act) -> Result<CopAction, StrategyError> {
        let w = match act {
            Act::Push(w) => w,
            Act::PushOutExcept(v) => other(og.out_set(r), v)?,
            Act::PushOutExceptCop => other(og.out_set(r), c)?,
            Act::IfOut3 { probe, then, otherwise } => {
                if og.out_degree(probe) == 3 {
                    then
                } else {
                    otherwise
                }
            }
        };
        Ok(CopAction::Push(w))
    }

    fn walk_step(&mut self, og: &OrientedGraph, c: usize, walk: &Walk) -> Result<CopAction, StrategyError> {
        if !walk.target.contains(c) {
            self.rules = vec![rule(walk.x, Act::Push(walk.x2)), rule(walk.y, Act::Push(walk.y2))];
            let path =
                og.graph().shortest_path_to(c, walk.target).ok_or_else(|| violation("no path to the walk target"))?;
            return Ok(if og.has_arc(c, path[1]) { CopAction::MoveTo(path[1]) } else { CopAction::Push(c) });
        }
        // Arrived: pick the endgame by where the cop stands.
        let g = og.graph();
        let Walk { u, x, y, x1, x2, y2, .. } = *walk;
        let near = |v: usize| c == v || g.has_edge(c, v);
        let (w, rules) = if c == x {
            (y, vec![])
        } else if c == y {
            (x, vec![])
        } else if og.has_arc(c, x) && c != u {
            (y, vec![])
        } else if og.has_arc(c, y) && c != u {
            (x, vec![])
        } else if near(x1) {
            (y, vec![rule(x, Act::Push(x2)), rule(x1, Act::Push(y))])
        } else if near(x2) {
            (y, vec![rule(x, Act::Push(x1)), rule(x2, Act::PushOutExceptCop)])
        } else if near(y2) {
            (x, vec![rule(y, Act::Push(x1)), rule(y2, Act::PushOutExceptCop)])
        } else {
            return Err(violation(format!("cop at {c} reached the walk target with no endgame")));
        };
        self.walk = None;
        self.rules = rules;
        self.deadline = self.turns + SCRIPT_BUDGET;
        Ok(CopAction::Push(w))
    }
}

/// First cop move against a freshly placed robber with out-degree at least 2.
fn base_case(og: &OrientedGraph, u: usize) -> Plan {
    match og.out_degree(u) {
        2 => Plan::push(og.out_set(u).min().expect("two out-neighbours")),
        _ => Plan::push(u),
    }
}

/// Robber just moved onto `u` (out-degree at least 2) while every other
/// visited vertex has out-degree at most one.
fn maintain(og: &OrientedGraph, u: usize, visited: VertexSet) -> Result<Plan, StrategyError> {
    if og.out_degree(u) != 2 {
        return Ok(Plan::push(u));
    }
    let out = |v: usize| og.out_degree(v);
    let outs = |v: usize| og.out_set(v);
    let g = og.graph();
    let nbrs = outs(u).to_vec();
    let (a, b) = (nbrs[0], nbrs[1]);

    if g.has_edge(a, b) {
        let (x, y) = if og.has_arc(a, b) { (a, b) } else { (b, a) };
        if out(x) <= 2 {
            return Ok(Plan::push(y));
        }
        if out(y) <= 1 {
            return Ok(Plan::with(
                x,
                vec![rule_out(y, 2, Act::PushOutExcept(x)), rule_out(x, 2, Act::PushOutExcept(u))],
            ));
        }
        return Ok(Plan::with(x, vec![rule_out(y, 3, Act::Push(y))]));
    }

    if let Some(x) = [a, b].into_iter().find(|&v| out(v) != 2) {
        let y = if x == a { b } else { a };
        return Ok(Plan::with(y, vec![rule_out(x, 3, Act::Push(x))]));
    }
    if let Some(x) = [a, b].into_iter().find(|&v| (outs(v) & visited).is_empty()) {
        return Ok(Plan::push(x));
    }

    let (mut x, mut y) = (a, b);
    let common = outs(x) & outs(y) & visited;
    let (mut x1, mut y1) = match common.min() {
        Some(w) => (w, w),
        None => (
            (outs(x) & visited).min().expect("visited out-neighbour"),
            (outs(y) & visited).min().expect("visited out-neighbour"),
        ),
    };
    let mut x2 = other(outs(x), x1)?;
    let mut y2 = other(outs(y), y1)?;

    if g.has_edge(x1, x2) || g.has_edge(y1, y2) {
        if !g.has_edge(x1, x2) {
            std::mem::swap(&mut x, &mut y);
            std::mem::swap(&mut x1, &mut y1);
            std::mem::swap(&mut x2, &mut y2);
        }
        if og.has_arc(x1, x2) {
            return Ok(Plan::with(y, vec![rule(x, Act::Push(x2))]));
        }
        if x1 == y1 {
            if out(x1) == 1 {
                return Ok(Plan::with(y, vec![rule(x, Act::Push(x2)), rule_out(x1, 3, Act::Push(x1))]));
            }
            return Ok(Plan::with(
                y,
                vec![
                    once(x, Act::Push(y)),
                    once(x, Act::Push(x2)),
                    rule_out(x2, 2, Act::PushOutExcept(x1)),
                    rule_out(x2, 3, Act::Push(x2)),
                ],
            ));
        }
        if out(x1) == 0 {
            return Ok(Plan::with(y, vec![rule(x, Act::Push(x2))]));
        }
        if out(x2) == 1 {
            return Ok(Plan::with(y, vec![once(x, Act::Push(y)), once(x, Act::Push(x1))]));
        }
        return Ok(Plan::with(
            y,
            vec![
                rule(x, Act::IfOut3 { probe: x2, then: x2, otherwise: x1 }),
                rule_out(x1, 2, Act::PushOutExcept(x2)),
                rule_out(x2, 2, Act::PushOutExcept(x)),
            ],
        ));
    }

    if x1 != y1 {
        return Ok(Plan::with(y, vec![rule(x, Act::Push(x2))]));
    }
    if out(x2) != 2 || out(y2) != 2 {
        if out(x2) == 2 {
            std::mem::swap(&mut x, &mut y);
            std::mem::swap(&mut x2, &mut y2);
        }
        return Ok(Plan::with(y, vec![once(x, Act::Push(y)), once(x, Act::Push(x2)), rule_out(x2, 3, Act::Push(x2))]));
    }
    if x2 == y2 {
        return Ok(Plan::with(y, vec![rule(x, Act::Push(x1)), rule_out(x2, 3, Act::Push(x2))]));
    }
    if og.has_arc(x2, y) {
        return Ok(Plan::with(y, vec![rule(x, Act::Push(x1))]));
    }
    if g.has_edge(x2, y) {
        return Err(violation(format!("arc {y}->{x2} with {x2} outside N+({y})")));
    }
    if out(x1) == 0 {
        return Ok(Plan::with(y, vec![rule(x, Act::Push(x2))]));
    }
    let mut target = VertexSet::EMPTY;
    for v in [u, x, y, x1, x2, y2] {
        target = target | g.neighbors(v) | VertexSet::singleton(v);
    }
    Ok(Plan { action: CopAction::Stay, rules: Vec::new(), walk: Some(Walk { u, x, y, x1, x2, y2, target }) })
}

impl Strategy for FourRegular {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        require_single_cop(game, &[PushAbility::Strong])?;
        if state.turn == Turn::CopPlacement {
            return Ok(Action::PlaceCops(vec![0]));
        }
        expect_turn(state, Turn::CopTurn)?;
        let (c, r) = single_cop_positions(state)?;
        let og = game.orientation(state);
        self.visited.insert(r);

        let action = self.step(&og, c, r)?;
        self.turns += 1;

        let after = match action {
            CopAction::Push(w) => og.push(w)?,
            _ => og.clone(),
        };
        let captured = action == CopAction::MoveTo(r);
        self.invariant_held = self.invariant(&after);
        self.phase = if self.invariant_held {
            self.rules.clear();
            self.walk = None;
            Phase::MaintainInvariant
        } else if captured || after.out_degree(r) == 0 {
            Phase::TrapEndgame
        } else if self.turns > self.deadline {
            return Err(violation(format!("invariant broken and endgame over budget after cop move {}", self.turns)));
        } else if self.walk.is_some() {
            Phase::WalkToU
        } else {
            Phase::TrapEndgame
        };
        self.history.push(self.phase);
        Ok(cop(action))
    }
}
