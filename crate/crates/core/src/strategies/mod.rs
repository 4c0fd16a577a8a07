//! Cop and robber policies playable through [`crate::game::play_match`].

use thiserror::Error;

use crate::game::{Action, CopAction, Game, GameError, GameState, PushAbility, Turn};
use crate::push_dag::PushDagError;
use crate::solver::SolverError;

pub mod dag;
pub mod four_regular;
pub mod manual;
pub mod oracle;
pub mod robbers;
pub mod trap;

pub use dag::{dag_chase, strong_push_dag_strategy, DagChase, StrongPushDag};
pub use four_regular::{four_regular_strategy, FourRegular, Phase};
pub use manual::Manual;
pub use oracle::{oracle_strategy, OracleCop};
pub use robbers::{RandomRobber, StayRobber};
pub use trap::{trap_capture, trap_step, TrapCapture};

/// A policy for one side. Called whenever that side is to move, including
/// placement.
pub trait Strategy {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError>;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        (**self).choose(game, state)
    }
}

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("robber at {0} is not trapped")]
    RobberNotTrapped(usize),
    #[error("orientation is not a DAG whose only source is the cop's vertex")]
    NotSingleSourceDag,
    #[error("robber at {robber} is not reachable from the cop at {cop}")]
    RobberUnreachable { cop: usize, robber: usize },
    #[error("no push set turns this orientation into a DAG")]
    NotPushableToDag,
    #[error("underlying graph is not 4-regular")]
    NotFourRegular,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("the cops do not win this game")]
    NotCopWin,
    #[error("solve result belongs to a different game")]
    QueriedOnWrongArena,
    #[error("unsupported game variant: {0}")]
    UnsupportedVariant(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    PushDag(#[from] PushDagError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Cop and robber positions of a single-cop play state.
pub(crate) fn single_cop_positions(state: &GameState) -> Result<(usize, usize), StrategyError> {
    match (&state.cops, state.robber) {
        (Some(c), Some(r)) if c.len() == 1 => Ok((c[0], r)),
        _ => Err(StrategyError::UnsupportedVariant("expected one placed cop and a placed robber".into())),
    }
}

pub(crate) fn require_single_cop(game: &Game, push: &[PushAbility]) -> Result<(), StrategyError> {
    let v = game.variant();
    if v.cops != 1 {
        return Err(StrategyError::UnsupportedVariant(format!("{} cops, this strategy plays one", v.cops)));
    }
    if !push.contains(&v.cop_push) {
        return Err(StrategyError::UnsupportedVariant(format!("push ability {}", v.cop_push)));
    }
    Ok(())
}

pub(crate) fn expect_turn(state: &GameState, turn: Turn) -> Result<(), StrategyError> {
    if state.turn == turn {
        Ok(())
    } else {
        Err(GameError::WrongTurn { expected: state.turn }.into())
    }
}

pub(crate) fn cop(a: CopAction) -> Action {
    Action::Cops(vec![a])
}
