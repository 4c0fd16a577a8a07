//! Chasing down a DAG from its unique source, and pushing an orientation
//! into such a DAG first.

use crate::game::{Action, CopAction, Game, GameState, PushAbility, Turn};
use crate::graph::{OrientedGraph, VertexSet};
use crate::push_dag::{find_dag_push_set, normalize_single_source};

use super::{cop, expect_turn, require_single_cop, single_cop_positions, trap_step, Strategy, StrategyError};

/// Next chase move: the out-neighbour whose reachable set contains the
/// robber, smallest reachable set first, then lowest id.
pub fn dag_step(og: &OrientedGraph, cop_at: usize, robber: usize) -> Result<CopAction, StrategyError> {
    og.out_set(cop_at)
        .iter()
        .map(|w| (og.reach(VertexSet::singleton(w)), w))
        .filter(|(reach, _)| reach.contains(robber))
        .min_by_key(|(reach, w)| (reach.len(), *w))
        .map(|(_, w)| CopAction::MoveTo(w))
        .ok_or(StrategyError::RobberUnreachable { cop: cop_at, robber })
}

fn is_single_source_dag(og: &OrientedGraph, source: usize) -> bool {
    og.is_acyclic() && og.sources() == VertexSet::singleton(source)
}

#[derive(Debug, Clone)]
pub struct DagChase {
    source: usize,
}

pub fn dag_chase(og: &OrientedGraph, cop_at: usize) -> Result<DagChase, StrategyError> {
    if cop_at >= og.n() || !is_single_source_dag(og, cop_at) {
        return Err(StrategyError::NotSingleSourceDag);
    }
    Ok(DagChase { source: cop_at })
}

impl Strategy for DagChase {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        require_single_cop(game, &[PushAbility::None, PushAbility::Weak, PushAbility::Strong])?;
        if state.turn == Turn::CopPlacement {
            return Ok(Action::PlaceCops(vec![self.source]));
        }
        expect_turn(state, Turn::CopTurn)?;
        let (c, r) = single_cop_positions(state)?;
        Ok(cop(dag_step(&game.orientation(state), c, r)?))
    }
}

/// Places on the source of a single-source DAG in the push class, spends one
/// round per push to reach it, then chases. Falls back to trap captures.
#[derive(Debug, Clone)]
pub struct StrongPushDag {
    source: usize,
    pushes: Vec<usize>,
    next_push: usize,
    trapping: bool,
}

pub fn strong_push_dag_strategy(og: &OrientedGraph) -> Result<StrongPushDag, StrategyError> {
    let set = find_dag_push_set(og)?.ok_or(StrategyError::NotPushableToDag)?;
    let dag = og.push_set(set.parity_set());
    let norm = normalize_single_source(&dag)?;
    let combined = VertexSet(set.parity_set().0 ^ norm.pushes.parity_set().0);
    let complement = VertexSet(VertexSet::full(og.n()).0 & !combined.0);
    let pushes = if complement.len() < combined.len() { complement } else { combined };
    Ok(StrongPushDag { source: norm.source, pushes: pushes.to_vec(), next_push: 0, trapping: false })
}

impl StrongPushDag {
    pub fn source(&self) -> usize {
        self.source
    }

    /// The pushes executed before chasing, in order.
    pub fn push_plan(&self) -> &[usize] {
        &self.pushes
    }
}

impl Strategy for StrongPushDag {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        require_single_cop(game, &[PushAbility::Strong])?;
        if state.turn == Turn::CopPlacement {
            return Ok(Action::PlaceCops(vec![self.source]));
        }
        expect_turn(state, Turn::CopTurn)?;
        let (c, r) = single_cop_positions(state)?;
        let og = game.orientation(state);
        if og.has_arc(c, r) {
            return Ok(cop(CopAction::MoveTo(r)));
        }
        if self.trapping || og.out_degree(r) == 0 {
            self.trapping = true;
            return Ok(cop(trap_step(&og, c, r)?));
        }
        if let Some(&w) = self.pushes.get(self.next_push) {
            self.next_push += 1;
            return Ok(cop(CopAction::Push(w)));
        }
        Ok(cop(dag_step(&og, c, r)?))
    }
}
