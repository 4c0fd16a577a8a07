//! Cops and Robber on oriented graphs where cops may reverse every arc at a
//! vertex ("push") instead of moving.

pub mod format;
pub mod game;
pub mod generators;
pub mod graph;
pub mod push_dag;
pub mod solver;
pub mod strategies;
pub mod sweep;
pub mod verify;

pub use game::{Game, GameState, GameVariant, PushAbility};
pub use graph::{OrientedGraph, UnderlyingGraph, VertexSet};
pub use solver::{cop_number, solve_game, SolveResult, Verdict};
