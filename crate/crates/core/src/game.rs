//! Game rules: legal actions, transitions, capture, match playback and
//! traces.
//!
//! States carry the orientation as a class index relative to the game's
//! reference frame, which is the orientation the game was created from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{read_oriented, write_arc_list, FormatError};
use crate::graph::{push_parity, OrientedGraph};
use crate::strategies::{Strategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum PushAbility {
    None,
    Weak,
    Strong,
}

impl FromStr for PushAbility {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(PushAbility::None),
            "weak" => Ok(PushAbility::Weak),
            "strong" => Ok(PushAbility::Strong),
            other => Err(format!("unknown push ability `{other}` (expected strong, weak or none)")),
        }
    }
}

impl fmt::Display for PushAbility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PushAbility::None => "none",
            PushAbility::Weak => "weak",
            PushAbility::Strong => "strong",
        })
    }
}

/// Cop push ability and cop count. The robber never pushes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameVariant {
    #[serde(rename = "push")]
    pub cop_push: PushAbility,
    pub cops: usize,
}

impl GameVariant {
    pub fn new(cop_push: PushAbility, cops: usize) -> Self {
        GameVariant { cop_push, cops }
    }

    pub fn strong(cops: usize) -> Self {
        Self::new(PushAbility::Strong, cops)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Turn {
    CopPlacement,
    RobberPlacement,
    CopTurn,
    RobberTurn,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub class_index: u64,
    /// Sorted cop positions once placed.
    pub cops: Option<Vec<usize>>,
    pub robber: Option<usize>,
    pub turn: Turn,
}

impl GameState {
    pub fn is_captured(&self) -> bool {
        match (&self.cops, self.robber) {
            (Some(cops), Some(r)) => cops.contains(&r),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CopAction {
    Stay,
    MoveTo(usize),
    Push(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RobberAction {
    Stay,
    MoveTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    PlaceCops(Vec<usize>),
    PlaceRobber(usize),
    /// One action per cop, resolved in cop-index (sorted position) order.
    Cops(Vec<CopAction>),
    Robber(RobberAction),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("action for the wrong turn: state expects {expected:?}")]
    WrongTurn { expected: Turn },
    #[error("game is over: the robber has been captured")]
    GameOver,
    #[error("illegal action: {0}")]
    IllegalAction(String),
    #[error("a game needs at least one cop")]
    NoCops,
}

fn illegal(msg: impl Into<String>) -> GameError {
    GameError::IllegalAction(msg.into())
}

/// A game instance: start orientation plus variant.
#[derive(Debug, Clone)]
pub struct Game {
    /// Reference frame; class index 0.
    start: OrientedGraph,
    variant: GameVariant,
    start_class: u64,
}

impl Game {
    /// The start orientation is re-based so its own arcs are the reference.
    pub fn new(start: &OrientedGraph, variant: GameVariant) -> Result<Self, GameError> {
        if variant.cops == 0 {
            return Err(GameError::NoCops);
        }
        let start = OrientedGraph::from_edge_bits(start.graph_arc().clone(), start.edge_bits());
        Ok(Game { start, variant, start_class: 0 })
    }

    /// Same frame, but play starts from another member of the push class.
    pub fn with_start_class(mut self, class_index: u64) -> Result<Self, GameError> {
        if class_index >= self.start.push_class().size() {
            return Err(illegal(format!("class index {class_index} outside the push class")));
        }
        self.start_class = class_index;
        Ok(self)
    }

    pub fn start_class(&self) -> u64 {
        self.start_class
    }

    pub fn start(&self) -> &OrientedGraph {
        &self.start
    }

    pub fn variant(&self) -> GameVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.start.n()
    }

    pub fn initial_state(&self) -> GameState {
        GameState { class_index: self.start_class, cops: None, robber: None, turn: Turn::CopPlacement }
    }

    pub fn orientation(&self, state: &GameState) -> OrientedGraph {
        self.start.with_class_index(state.class_index)
    }

    /// `2 * 2^(n-1) * n^(k+1) + n`, saturating.
    pub fn default_max_rounds(&self) -> u64 {
        let n = self.n() as u128;
        let classes = 1u128 << (self.n() - 1);
        let mut pow = 1u128;
        for _ in 0..=self.variant.cops {
            pow = pow.saturating_mul(n);
        }
        let v = classes.saturating_mul(pow).saturating_mul(2).saturating_add(n);
        u64::try_from(v).unwrap_or(u64::MAX)
    }

    fn single_cop_actions(&self, og: &OrientedGraph, pos: usize) -> Vec<CopAction> {
        let mut acts = vec![CopAction::Stay];
        acts.extend(og.out_set(pos).iter().map(CopAction::MoveTo));
        match self.variant.cop_push {
            PushAbility::None => {}
            PushAbility::Weak => acts.push(CopAction::Push(pos)),
            PushAbility::Strong => acts.extend((0..self.n()).map(CopAction::Push)),
        }
        acts
    }

    /// Every legal action for the player to move, in a fixed order.
    pub fn legal_actions(&self, state: &GameState) -> Result<Vec<Action>, GameError> {
        if state.is_captured() {
            return Err(GameError::GameOver);
        }
        let n = self.n();
        match state.turn {
            Turn::CopPlacement => Ok(multisets(n, self.variant.cops).into_iter().map(Action::PlaceCops).collect()),
            Turn::RobberPlacement => Ok((0..n).map(Action::PlaceRobber).collect()),
            Turn::RobberTurn => {
                let r = state.robber.ok_or_else(|| illegal("robber not placed"))?;
                let og = self.orientation(state);
                let mut acts = vec![Action::Robber(RobberAction::Stay)];
                acts.extend(og.out_set(r).iter().map(|v| Action::Robber(RobberAction::MoveTo(v))));
                Ok(acts)
            }
            Turn::CopTurn => {
                let cops = state.cops.as_ref().ok_or_else(|| illegal("cops not placed"))?;
                let mut out = Vec::new();
                let mut prefix = Vec::with_capacity(cops.len());
                self.cop_products(state.class_index << 1, cops, &mut prefix, &mut out);
                Ok(out)
            }
        }
    }

    fn cop_products(&self, parity: u64, cops: &[usize], prefix: &mut Vec<CopAction>, out: &mut Vec<Action>) {
        let j = prefix.len();
        if j == cops.len() {
            out.push(Action::Cops(prefix.clone()));
            return;
        }
        let og = self.start.with_class_index(parity >> 1);
        for a in self.single_cop_actions(&og, cops[j]) {
            let next = match a {
                CopAction::Push(w) => push_parity(parity, w, self.n()),
                _ => parity,
            };
            prefix.push(a);
            self.cop_products(next, cops, prefix, out);
            prefix.pop();
        }
    }

    /// Resolves a cop turn cop by cop, returning `(class_index, positions)`
    /// after each cop's action, positions in cop-index order.
    pub fn resolve_cops(&self, state: &GameState, actions: &[CopAction]) -> Result<Vec<(u64, Vec<usize>)>, GameError> {
        if state.is_captured() {
            return Err(GameError::GameOver);
        }
        if state.turn != Turn::CopTurn {
            return Err(GameError::WrongTurn { expected: state.turn });
        }
        let mut cops = state.cops.clone().ok_or_else(|| illegal("cops not placed"))?;
        if actions.len() != cops.len() {
            return Err(illegal(format!("expected {} cop actions, got {}", cops.len(), actions.len())));
        }
        let n = self.n();
        let mut parity = state.class_index << 1;
        let mut steps = Vec::with_capacity(actions.len());
        for (j, &a) in actions.iter().enumerate() {
            match a {
                CopAction::Stay => {}
                CopAction::MoveTo(v) => {
                    let og = self.start.with_class_index(parity >> 1);
                    if v >= n || !og.has_arc(cops[j], v) {
                        return Err(illegal(format!(
                            "cop {j} cannot move from {} to {v}: not an out-neighbour",
                            cops[j]
                        )));
                    }
                    cops[j] = v;
                }
                CopAction::Push(w) => {
                    if w >= n {
                        return Err(illegal(format!("cop {j} pushes vertex {w}: out of range")));
                    }
                    match self.variant.cop_push {
                        PushAbility::None => {
                            return Err(illegal("cops cannot push in this variant"));
                        }
                        PushAbility::Weak if w != cops[j] => {
                            return Err(illegal(format!(
                                "cop {j} has weak push and may only push its own vertex {}",
                                cops[j]
                            )));
                        }
                        _ => {}
                    }
                    parity = push_parity(parity, w, n);
                }
            }
            steps.push((parity >> 1, cops.clone()));
        }
        Ok(steps)
    }

    pub fn apply(&self, state: &GameState, action: &Action) -> Result<GameState, GameError> {
        if state.is_captured() {
            return Err(GameError::GameOver);
        }
        let n = self.n();
        let wrong = || GameError::WrongTurn { expected: state.turn };
        match action {
            Action::PlaceCops(positions) => {
                if state.turn != Turn::CopPlacement {
                    return Err(wrong());
                }
                if positions.len() != self.variant.cops {
                    return Err(illegal(format!(
                        "expected {} cop positions, got {}",
                        self.variant.cops,
                        positions.len()
                    )));
                }
                if let Some(&v) = positions.iter().find(|&&v| v >= n) {
                    return Err(illegal(format!("cop placed on missing vertex {v}")));
                }
                let mut cops = positions.clone();
                cops.sort_unstable();
                Ok(GameState {
                    class_index: state.class_index,
                    cops: Some(cops),
                    robber: None,
                    turn: Turn::RobberPlacement,
                })
            }
            Action::PlaceRobber(v) => {
                if state.turn != Turn::RobberPlacement {
                    return Err(wrong());
                }
                if *v >= n {
                    return Err(illegal(format!("robber placed on missing vertex {v}")));
                }
                Ok(GameState { robber: Some(*v), turn: Turn::CopTurn, ..state.clone() })
            }
            Action::Cops(actions) => {
                let steps = self.resolve_cops(state, actions)?;
                let (class_index, mut cops) = steps.last().cloned().expect("at least one cop");
                cops.sort_unstable();
                Ok(GameState { class_index, cops: Some(cops), robber: state.robber, turn: Turn::RobberTurn })
            }
            Action::Robber(a) => {
                if state.turn != Turn::RobberTurn {
                    return Err(wrong());
                }
                let r = state.robber.ok_or_else(|| illegal("robber not placed"))?;
                let to = match *a {
                    RobberAction::Stay => r,
                    RobberAction::MoveTo(v) => {
                        if v >= n || !self.orientation(state).has_arc(r, v) {
                            return Err(illegal(format!("robber cannot move from {r} to {v}: not an out-neighbour")));
                        }
                        v
                    }
                };
                Ok(GameState { robber: Some(to), turn: Turn::CopTurn, ..state.clone() })
            }
        }
    }
}

/// All sorted `k`-multisets over `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in lo..n {
            cur.push(v);
            rec(n, k, v, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Actor {
    Cop,
    Robber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Place,
    Stay,
    Move,
    Push,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    #[serde(rename = "type")]
    pub kind: ActionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
}

impl From<CopAction> for ActionRecord {
    fn from(a: CopAction) -> Self {
        match a {
            CopAction::Stay => ActionRecord { kind: ActionKind::Stay, vertex: None },
            CopAction::MoveTo(v) => ActionRecord { kind: ActionKind::Move, vertex: Some(v) },
            CopAction::Push(v) => ActionRecord { kind: ActionKind::Push, vertex: Some(v) },
        }
    }
}

impl From<RobberAction> for ActionRecord {
    fn from(a: RobberAction) -> Self {
        match a {
            RobberAction::Stay => ActionRecord { kind: ActionKind::Stay, vertex: None },
            RobberAction::MoveTo(v) => ActionRecord { kind: ActionKind::Move, vertex: Some(v) },
        }
    }
}

impl ActionRecord {
    fn place(v: usize) -> Self {
        ActionRecord { kind: ActionKind::Place, vertex: Some(v) }
    }

    fn to_cop_action(self) -> Option<CopAction> {
        match (self.kind, self.vertex) {
            (ActionKind::Stay, None) => Some(CopAction::Stay),
            (ActionKind::Move, Some(v)) => Some(CopAction::MoveTo(v)),
            (ActionKind::Push, Some(v)) => Some(CopAction::Push(v)),
            _ => None,
        }
    }

    fn to_robber_action(self) -> Option<RobberAction> {
        match (self.kind, self.vertex) {
            (ActionKind::Stay, None) => Some(RobberAction::Stay),
            (ActionKind::Move, Some(v)) => Some(RobberAction::MoveTo(v)),
            _ => None,
        }
    }
}

/// One agent's half-move. Cop turns produce one step per cop; `cops` lists
/// positions in cop-index order after that cop acted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub round: u64,
    pub actor: Actor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cop: Option<usize>,
    pub action: ActionRecord,
    pub class_index: u64,
    pub cops: Vec<usize>,
    pub robber: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    /// Captured during the given round; round 0 is placement.
    Captured {
        round: u64,
    },
    RoundLimit {
        rounds: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub schema: u32,
    /// Reference orientation as an arc list.
    pub graph: String,
    /// Class index the match started from, relative to `graph`.
    #[serde(default)]
    pub start_class: u64,
    pub variant: GameVariant,
    pub rounds: Vec<TraceStep>,
    pub outcome: Outcome,
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("{actor:?} strategy chose an illegal action in round {round}: {source}")]
    IllegalStrategyAction {
        actor: Actor,
        round: u64,
        #[source]
        source: GameError,
    },
    #[error("{actor:?} strategy failed in round {round}: {source}")]
    Strategy {
        actor: Actor,
        round: u64,
        #[source]
        source: StrategyError,
    },
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("trace graph: {0}")]
    Graph(#[from] FormatError),
    #[error("trace step {step}: {source}")]
    Engine {
        step: usize,
        #[source]
        source: GameError,
    },
    #[error("trace step {step}: {message}")]
    Mismatch { step: usize, message: String },
}

/// Everything a finished match produced.
#[derive(Debug, Clone)]
pub struct MatchResult {
    pub trace: Trace,
    pub final_state: GameState,
}

impl MatchResult {
    pub fn captured(&self) -> bool {
        matches!(self.trace.outcome, Outcome::Captured { .. })
    }

    pub fn capture_round(&self) -> Option<u64> {
        match self.trace.outcome {
            Outcome::Captured { round } => Some(round),
            Outcome::RoundLimit { .. } => None,
        }
    }
}

/// Plays placement and then alternating rounds until capture or the round
/// limit (defaults to [`Game::default_max_rounds`]).
pub fn play_match(
    game: &Game,
    cop: &mut dyn Strategy,
    robber: &mut dyn Strategy,
    max_rounds: Option<u64>,
) -> Result<MatchResult, MatchError> {
    let limit = max_rounds.unwrap_or_else(|| game.default_max_rounds());
    let mut steps = Vec::new();
    let mut state = game.initial_state();

    let strat_err = |actor, round| move |source| MatchError::Strategy { actor, round, source };
    let illegal_err = |actor, round| move |source| MatchError::IllegalStrategyAction { actor, round, source };

    let finish = |steps: Vec<TraceStep>, state: GameState, outcome: Outcome| MatchResult {
        trace: Trace {
            schema: 1,
            graph: write_arc_list(game.start()),
            start_class: game.start_class(),
            variant: game.variant(),
            rounds: steps,
            outcome,
        },
        final_state: state,
    };

    let place = cop.choose(game, &state).map_err(strat_err(Actor::Cop, 0))?;
    let Action::PlaceCops(positions) = &place else {
        return Err(illegal_err(Actor::Cop, 0)(illegal("expected a cop placement")));
    };
    let positions = positions.clone();
    state = game.apply(&state, &place).map_err(illegal_err(Actor::Cop, 0))?;
    for (j, &v) in positions.iter().enumerate() {
        steps.push(TraceStep {
            round: 0,
            actor: Actor::Cop,
            cop: Some(j),
            action: ActionRecord::place(v),
            class_index: state.class_index,
            cops: positions[..=j].to_vec(),
            robber: None,
        });
    }

    let place = robber.choose(game, &state).map_err(strat_err(Actor::Robber, 0))?;
    state = game.apply(&state, &place).map_err(illegal_err(Actor::Robber, 0))?;
    steps.push(TraceStep {
        round: 0,
        actor: Actor::Robber,
        cop: None,
        action: ActionRecord::place(state.robber.expect("robber placed")),
        class_index: state.class_index,
        cops: state.cops.clone().unwrap_or_default(),
        robber: state.robber,
    });
    if state.is_captured() {
        return Ok(finish(steps, state, Outcome::Captured { round: 0 }));
    }

    for round in 1..=limit {
        let action = cop.choose(game, &state).map_err(strat_err(Actor::Cop, round))?;
        let Action::Cops(acts) = &action else {
            return Err(illegal_err(Actor::Cop, round)(GameError::WrongTurn { expected: Turn::CopTurn }));
        };
        let sub = game.resolve_cops(&state, acts).map_err(illegal_err(Actor::Cop, round))?;
        for (j, ((class_index, cops), a)) in sub.into_iter().zip(acts).enumerate() {
            steps.push(TraceStep {
                round,
                actor: Actor::Cop,
                cop: Some(j),
                action: (*a).into(),
                class_index,
                cops,
                robber: state.robber,
            });
        }
        state = game.apply(&state, &action).map_err(illegal_err(Actor::Cop, round))?;
        if state.is_captured() {
            return Ok(finish(steps, state, Outcome::Captured { round }));
        }

        let action = robber.choose(game, &state).map_err(strat_err(Actor::Robber, round))?;
        let Action::Robber(a) = action else {
            return Err(illegal_err(Actor::Robber, round)(GameError::WrongTurn { expected: Turn::RobberTurn }));
        };
        state = game.apply(&state, &action).map_err(illegal_err(Actor::Robber, round))?;
        steps.push(TraceStep {
            round,
            actor: Actor::Robber,
            cop: None,
            action: a.into(),
            class_index: state.class_index,
            cops: state.cops.clone().unwrap_or_default(),
            robber: state.robber,
        });
        if state.is_captured() {
            return Ok(finish(steps, state, Outcome::Captured { round }));
        }
    }
    Ok(finish(steps, state, Outcome::RoundLimit { rounds: limit }))
}

impl Trace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Re-applies every recorded action and checks every recorded state.
    /// Returns the final state.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        let og = read_oriented(&self.graph)?;
        let game = Game::new(&og, self.variant)
            .and_then(|g| g.with_start_class(self.start_class))
            .map_err(|source| ReplayError::Engine { step: 0, source })?;
        let k = self.variant.cops;
        let mut state = game.initial_state();
        let mut i = 0;
        let mismatch = |step: usize, message: String| ReplayError::Mismatch { step, message };
        let engine = |step: usize| move |source| ReplayError::Engine { step, source };

        while i < self.rounds.len() {
            let step = &self.rounds[i];
            match (step.actor, state.turn) {
                (Actor::Cop, Turn::CopPlacement) => {
                    let group = self.cop_group(i, k)?;
                    let positions: Vec<usize> = group
                        .iter()
                        .map(|s| s.action.vertex.filter(|_| s.action.kind == ActionKind::Place))
                        .collect::<Option<_>>()
                        .ok_or_else(|| mismatch(i, "cop placement without a vertex".into()))?;
                    state = game.apply(&state, &Action::PlaceCops(positions)).map_err(engine(i))?;
                    i += k;
                }
                (Actor::Robber, Turn::RobberPlacement) => {
                    let v = step
                        .action
                        .vertex
                        .filter(|_| step.action.kind == ActionKind::Place)
                        .ok_or_else(|| mismatch(i, "robber placement without a vertex".into()))?;
                    state = game.apply(&state, &Action::PlaceRobber(v)).map_err(engine(i))?;
                    self.check(i, &state, state.cops.as_deref().unwrap_or_default())?;
                    i += 1;
                }
                (Actor::Cop, Turn::CopTurn) => {
                    let group = self.cop_group(i, k)?;
                    let acts: Vec<CopAction> = group
                        .iter()
                        .map(|s| s.action.to_cop_action())
                        .collect::<Option<_>>()
                        .ok_or_else(|| mismatch(i, "malformed cop action".into()))?;
                    let sub = game.resolve_cops(&state, &acts).map_err(engine(i))?;
                    for (j, (class_index, cops)) in sub.iter().enumerate() {
                        let rec = &group[j];
                        if rec.class_index != *class_index || &rec.cops != cops {
                            return Err(mismatch(
                                i + j,
                                format!(
                                    "recorded class {} cops {:?}, replay gives class {} cops {:?}",
                                    rec.class_index, rec.cops, class_index, cops
                                ),
                            ));
                        }
                    }
                    state = game.apply(&state, &Action::Cops(acts)).map_err(engine(i))?;
                    i += k;
                }
                (Actor::Robber, Turn::RobberTurn) => {
                    let a =
                        step.action.to_robber_action().ok_or_else(|| mismatch(i, "malformed robber action".into()))?;
                    state = game.apply(&state, &Action::Robber(a)).map_err(engine(i))?;
                    self.check(i, &state, state.cops.as_deref().unwrap_or_default())?;
                    i += 1;
                }
                (actor, turn) => {
                    return Err(mismatch(i, format!("{actor:?} step during {turn:?}")));
                }
            }
        }
        let expected = match self.outcome {
            Outcome::Captured { .. } => true,
            Outcome::RoundLimit { .. } => false,
        };
        if state.is_captured() != expected {
            return Err(mismatch(self.rounds.len(), "outcome does not match final state".into()));
        }
        Ok(state)
    }

    fn cop_group(&self, i: usize, k: usize) -> Result<&[TraceStep], ReplayError> {
        let group = self
            .rounds
            .get(i..i + k)
            .ok_or(ReplayError::Mismatch { step: i, message: format!("expected {k} cop steps") })?;
        if group.iter().enumerate().any(|(j, s)| s.actor != Actor::Cop || s.cop != Some(j)) {
            return Err(ReplayError::Mismatch { step: i, message: "cop steps out of order".into() });
        }
        Ok(group)
    }

    fn check(&self, i: usize, state: &GameState, cops: &[usize]) -> Result<(), ReplayError> {
        let rec = &self.rounds[i];
        if rec.class_index != state.class_index || rec.cops != cops || rec.robber != state.robber {
            return Err(ReplayError::Mismatch {
                step: i,
                message: format!(
                    "recorded ({}, {:?}, {:?}) but replay gives ({}, {:?}, {:?})",
                    rec.class_index, rec.cops, rec.robber, state.class_index, cops, state.robber
                ),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag() -> OrientedGraph {
        OrientedGraph::from_arcs(3, &[(1, 0), (1, 2), (0, 2)]).unwrap()
    }

    fn at(cops: &[usize], robber: usize, turn: Turn) -> GameState {
        GameState { class_index: 0, cops: Some(cops.to_vec()), robber: Some(robber), turn }
    }

    #[test]
    fn strong_cop_actions_at_source() {
        let game = Game::new(&dag(), GameVariant::strong(1)).unwrap();
        let acts = game.legal_actions(&at(&[1], 2, Turn::CopTurn)).unwrap();
        let expected: Vec<Action> = [
            CopAction::Stay,
            CopAction::MoveTo(0),
            CopAction::MoveTo(2),
            CopAction::Push(0),
            CopAction::Push(1),
            CopAction::Push(2),
        ]
        .into_iter()
        .map(|a| Action::Cops(vec![a]))
        .collect();
        assert_eq!(acts, expected);
    }

    #[test]
    fn trapped_robber_can_only_stay() {
        let game = Game::new(&dag(), GameVariant::strong(1)).unwrap();
        let acts = game.legal_actions(&at(&[1], 2, Turn::RobberTurn)).unwrap();
        assert_eq!(acts, vec![Action::Robber(RobberAction::Stay)]);
    }

    #[test]
    fn weak_cop_has_exactly_one_push() {
        let game = Game::new(&dag(), GameVariant::new(PushAbility::Weak, 1)).unwrap();
        let acts = game.legal_actions(&at(&[0], 1, Turn::CopTurn)).unwrap();
        let pushes: Vec<_> =
            acts.iter().filter(|a| matches!(a, Action::Cops(v) if matches!(v[0], CopAction::Push(_)))).collect();
        assert_eq!(pushes, vec![&Action::Cops(vec![CopAction::Push(0)])]);
    }

    #[test]
    fn placement_actions() {
        let game = Game::new(&dag(), GameVariant::strong(2)).unwrap();
        let acts = game.legal_actions(&game.initial_state()).unwrap();
        assert_eq!(acts.len(), 6);
        assert_eq!(acts[1], Action::PlaceCops(vec![0, 1]));
    }

    #[test]
    fn capture_and_push_transitions() {
        let game = Game::new(&dag(), GameVariant::strong(1)).unwrap();
        let s = at(&[1], 2, Turn::CopTurn);
        let t = game.apply(&s, &Action::Cops(vec![CopAction::MoveTo(2)])).unwrap();
        assert!(t.is_captured());
        assert_eq!(game.legal_actions(&t), Err(GameError::GameOver));

        let t = game.apply(&s, &Action::Cops(vec![CopAction::Push(0)])).unwrap();
        assert_eq!(t.cops, Some(vec![1]));
        assert_eq!(t.robber, Some(2));
        // Pushing vertex 0 flips its parity bit, which normalises to {1, 2}.
        assert_eq!(t.class_index, 3);
        assert_eq!(t.turn, Turn::RobberTurn);
    }

    #[test]
    fn robber_moving_onto_cop_is_capture() {
        let g = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        let game = Game::new(&g, GameVariant::strong(1)).unwrap();
        let s = at(&[1], 0, Turn::RobberTurn);
        let t = game.apply(&s, &Action::Robber(RobberAction::MoveTo(1))).unwrap();
        assert!(t.is_captured());
    }

    #[test]
    fn out_star_capture_in_round_one() {
        let star = OrientedGraph::from_arcs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let game = Game::new(&star, GameVariant::strong(1)).unwrap();
        let mut s = game.apply(&game.initial_state(), &Action::PlaceCops(vec![0])).unwrap();
        s = game.apply(&s, &Action::PlaceRobber(3)).unwrap();
        assert!(!s.is_captured());
        s = game.apply(&s, &Action::Cops(vec![CopAction::MoveTo(3)])).unwrap();
        assert!(s.is_captured());
    }

    #[test]
    fn illegal_actions_are_named() {
        let game = Game::new(&dag(), GameVariant::new(PushAbility::None, 1)).unwrap();
        let s = at(&[0], 1, Turn::CopTurn);
        assert!(matches!(game.apply(&s, &Action::Cops(vec![CopAction::MoveTo(1)])), Err(GameError::IllegalAction(_))));
        assert!(matches!(game.apply(&s, &Action::Cops(vec![CopAction::Push(0)])), Err(GameError::IllegalAction(_))));
        assert_eq!(
            game.apply(&s, &Action::Robber(RobberAction::Stay)),
            Err(GameError::WrongTurn { expected: Turn::CopTurn })
        );
    }

    #[test]
    fn sequential_cop_resolution_sees_earlier_pushes() {
        // 0 <- 1 <- 2 path; cop at 2 can reach 1 only after 1 is pushed... by
        // the lower-index cop sitting at 0.
        let g = OrientedGraph::from_arcs(3, &[(1, 0), (2, 1)]).unwrap();
        let game = Game::new(&g, GameVariant::strong(2)).unwrap();
        let s = GameState { class_index: 0, cops: Some(vec![0, 1]), robber: Some(2), turn: Turn::CopTurn };
        // cop 0 pushes 2 (2 -> 1 becomes 1 -> 2), then cop 1 moves onto 2.
        let t = game.apply(&s, &Action::Cops(vec![CopAction::Push(2), CopAction::MoveTo(2)])).unwrap();
        assert!(t.is_captured());
        assert!(game.apply(&s, &Action::Cops(vec![CopAction::MoveTo(2), CopAction::Push(2)])).is_err());
    }

    #[test]
    fn default_round_limit_formula() {
        let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let game = Game::new(&tri, GameVariant::strong(1)).unwrap();
        assert_eq!(game.default_max_rounds(), 2 * 4 * 9 + 3);
    }
}
