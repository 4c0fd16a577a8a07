//! Cop play read straight off the solver.

use std::sync::Arc;

use crate::game::{Action, Game, GameState, GameVariant};
use crate::graph::OrientedGraph;
use crate::solver::{solve_game, SolveResult, Verdict};

use super::{Strategy, StrategyError};

#[derive(Debug, Clone)]
pub struct OracleCop {
    result: Arc<SolveResult>,
}

pub fn oracle_strategy(og: &OrientedGraph, variant: GameVariant) -> Result<OracleCop, StrategyError> {
    OracleCop::from_result(Arc::new(solve_game(og, variant)?))
}

impl OracleCop {
    /// Errors unless the start orientation of the solved game is a cop win.
    pub fn from_result(result: Arc<SolveResult>) -> Result<Self, StrategyError> {
        if result.verdict_for_class(result.game().start_class()) != Verdict::CopWin {
            return Err(StrategyError::NotCopWin);
        }
        Ok(OracleCop { result })
    }

    pub fn result(&self) -> &Arc<SolveResult> {
        &self.result
    }
}

impl Strategy for OracleCop {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        self.result.best_cop_action(game, state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, PushAbility};
    use crate::solver::optimal_robber;

    #[test]
    fn robber_win_is_rejected() {
        let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(oracle_strategy(&tri, GameVariant::new(PushAbility::None, 1)), Err(StrategyError::NotCopWin)));
    }

    #[test]
    fn capture_time_matches_solver() {
        let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut c = oracle_strategy(&tri, GameVariant::strong(1)).unwrap();
        let res = c.result().clone();
        let game = res.game().clone();
        let m = play_match(&game, &mut c, &mut optimal_robber(res.clone()), None).unwrap();
        assert_eq!(m.capture_round(), res.capture_rounds());
    }
}
