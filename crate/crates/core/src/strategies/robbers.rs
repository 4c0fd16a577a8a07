//! Simple robber policies. The optimal robber lives in the solver.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{Action, Game, GameState, RobberAction, Turn};

use super::{Strategy, StrategyError};

/// Uniformly random legal action, reproducible from the seed.
#[derive(Debug, Clone)]
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomRobber {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        let actions = game.legal_actions(state)?;
        actions.choose(&mut self.rng).cloned().ok_or_else(|| StrategyError::Input("no legal action".into()))
    }
}

/// Places once and never moves. Without a fixed vertex it takes the lowest
/// vertex free of cops.
#[derive(Debug, Clone, Default)]
pub struct StayRobber {
    place: Option<usize>,
}

impl StayRobber {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(v: usize) -> Self {
        StayRobber { place: Some(v) }
    }
}

impl Strategy for StayRobber {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        match state.turn {
            Turn::RobberPlacement => {
                let cops = state.cops.clone().unwrap_or_default();
                let v = self.place.or_else(|| (0..game.n()).find(|v| !cops.contains(v))).unwrap_or(0);
                Ok(Action::PlaceRobber(v))
            }
            Turn::RobberTurn => Ok(Action::Robber(RobberAction::Stay)),
            turn => Err(crate::game::GameError::WrongTurn { expected: turn }.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, GameVariant, PushAbility};
    use crate::graph::OrientedGraph;
    use crate::strategies::oracle_strategy;

    #[test]
    fn random_robber_is_reproducible() {
        let g = OrientedGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let v = GameVariant::new(PushAbility::None, 2);
        let game = Game::new(&g, v).unwrap();
        let run = |seed| {
            let mut c = oracle_strategy(&g, v).unwrap();
            play_match(&game, &mut c, &mut RandomRobber::new(seed), None).unwrap().trace
        };
        assert_eq!(run(7), run(7));
    }
}
