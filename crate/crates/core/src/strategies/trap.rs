//! Catching a robber stuck on a vertex with no out-arcs.

use crate::game::{Action, CopAction, Game, GameState, PushAbility, Turn};
use crate::graph::{OrientedGraph, VertexSet};

use super::{cop, require_single_cop, single_cop_positions, Strategy, StrategyError};

/// One cop step towards a trapped robber along a shortest underlying path.
///
/// Moves when the next edge points forward, otherwise pushes its own vertex.
/// The own vertex is then at distance at least two from the robber, so the
/// robber stays trapped.
pub fn trap_step(og: &OrientedGraph, cop_at: usize, robber: usize) -> Result<CopAction, StrategyError> {
    if og.out_degree(robber) != 0 {
        return Err(StrategyError::RobberNotTrapped(robber));
    }
    let path = og
        .graph()
        .shortest_path_to(cop_at, VertexSet::singleton(robber))
        .ok_or(StrategyError::RobberUnreachable { cop: cop_at, robber })?;
    let next = path[1];
    if og.has_arc(cop_at, next) {
        return Ok(CopAction::MoveTo(next));
    }
    if og.graph().has_edge(cop_at, robber) {
        return Err(StrategyError::InternalInvariantViolation(format!(
            "would push {cop_at}, a neighbour of the trapped robber at {robber}"
        )));
    }
    Ok(CopAction::Push(cop_at))
}

/// Places the cop on a fixed vertex and runs [`trap_step`] every turn.
#[derive(Debug, Clone)]
pub struct TrapCapture {
    start: usize,
    /// Vertices pushed so far.
    pub pushes: Vec<usize>,
}

pub fn trap_capture(og: &OrientedGraph, cop_at: usize, robber: usize) -> Result<TrapCapture, StrategyError> {
    if cop_at >= og.n() || robber >= og.n() {
        return Err(StrategyError::Input("vertex out of range".into()));
    }
    if og.out_degree(robber) != 0 {
        return Err(StrategyError::RobberNotTrapped(robber));
    }
    Ok(TrapCapture { start: cop_at, pushes: Vec::new() })
}

impl Strategy for TrapCapture {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        require_single_cop(game, &[PushAbility::Weak, PushAbility::Strong])?;
        match state.turn {
            Turn::CopPlacement => Ok(Action::PlaceCops(vec![self.start])),
            Turn::CopTurn => {
                let (c, r) = single_cop_positions(state)?;
                let step = trap_step(&game.orientation(state), c, r)?;
                if let CopAction::Push(w) = step {
                    self.pushes.push(w);
                }
                Ok(cop(step))
            }
            _ => Err(StrategyError::Game(crate::game::GameError::WrongTurn { expected: state.turn })),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, GameVariant};
    use crate::strategies::StayRobber;

    #[test]
    fn adjacent_capture() {
        let g = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(trap_step(&g, 0, 1).unwrap(), CopAction::MoveTo(1));
    }

    #[test]
    fn push_then_walk() {
        let g = OrientedGraph::from_arcs(3, &[(1, 0), (1, 2)]).unwrap();
        let game = Game::new(&g, GameVariant::new(PushAbility::Weak, 1)).unwrap();
        let mut c = trap_capture(&g, 2, 0).unwrap();
        let mut r = StayRobber::at(0);
        let m = play_match(&game, &mut c, &mut r, None).unwrap();
        assert_eq!(m.capture_round(), Some(3));
        assert_eq!(c.pushes, vec![2]);
        m.trace.replay().unwrap();
    }

    #[test]
    fn untrapped_robber_is_rejected() {
        let g = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(trap_capture(&g, 0, 1), Err(StrategyError::RobberNotTrapped(1))));
    }
}
