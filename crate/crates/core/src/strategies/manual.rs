//! Text-driven play for either side.
//!
//! Placement lines list vertices (`0` or `0 3`). Move lines are `stay`,
//! `move V` or `push V`; with several cops, separate them by commas:
//! `push 2, move 4`.

use std::io::{BufRead, Write};

use crate::format::to_dot;
use crate::game::{Action, CopAction, Game, GameState, RobberAction, Turn};

use super::{Strategy, StrategyError};

pub struct Manual<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> Manual<R, W> {
    pub fn new(input: R, output: W) -> Self {
        Manual { input, output }
    }

    fn read_line(&mut self) -> Result<String, StrategyError> {
        let mut line = String::new();
        let read = self.input.read_line(&mut line).map_err(|e| StrategyError::Input(e.to_string()))?;
        if read == 0 {
            return Err(StrategyError::Input("input closed".into()));
        }
        Ok(line.trim().to_string())
    }
}

fn parse_vertex(tok: Option<&str>) -> Result<usize, String> {
    let tok = tok.ok_or("missing vertex")?;
    tok.parse().map_err(|_| format!("`{tok}` is not a vertex id"))
}

fn parse_move(text: &str) -> Result<(String, Option<usize>), String> {
    let mut toks = text.split_whitespace();
    let verb = toks.next().ok_or("empty action")?.to_ascii_lowercase();
    let vertex = match verb.as_str() {
        "stay" => None,
        "move" | "push" => Some(parse_vertex(toks.next())?),
        other => return Err(format!("unknown action `{other}`")),
    };
    if toks.next().is_some() {
        return Err("trailing input".into());
    }
    Ok((verb, vertex))
}

/// Parses one line of input for the given turn.
pub fn parse_action(turn: Turn, line: &str) -> Result<Action, String> {
    match turn {
        Turn::CopPlacement => {
            line.split_whitespace().map(|t| parse_vertex(Some(t))).collect::<Result<Vec<_>, _>>().map(Action::PlaceCops)
        }
        Turn::RobberPlacement => {
            let mut toks = line.split_whitespace();
            let v = parse_vertex(toks.next())?;
            if toks.next().is_some() {
                return Err("trailing input".into());
            }
            Ok(Action::PlaceRobber(v))
        }
        Turn::CopTurn => line
            .split(',')
            .map(|part| {
                Ok(match parse_move(part)? {
                    (_, None) => CopAction::Stay,
                    (verb, Some(v)) if verb == "move" => CopAction::MoveTo(v),
                    (_, Some(v)) => CopAction::Push(v),
                })
            })
            .collect::<Result<Vec<_>, String>>()
            .map(Action::Cops),
        Turn::RobberTurn => match parse_move(line)? {
            (_, None) => Ok(Action::Robber(RobberAction::Stay)),
            (verb, Some(v)) if verb == "move" => Ok(Action::Robber(RobberAction::MoveTo(v))),
            _ => Err("the robber cannot push".into()),
        },
    }
}

impl<R: BufRead, W: Write> Strategy for Manual<R, W> {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        let og = game.orientation(state);
        let io = |e: std::io::Error| StrategyError::Input(e.to_string());
        write!(
            self.output,
            "{}\n{:?} (class {}, cops {:?}, robber {:?})> ",
            to_dot(&og, state.cops.as_deref().unwrap_or_default(), state.robber),
            state.turn,
            state.class_index,
            state.cops,
            state.robber
        )
        .map_err(io)?;
        self.output.flush().map_err(io)?;
        loop {
            let line = self.read_line()?;
            match parse_action(state.turn, &line) {
                Ok(action) => match game.apply(state, &action) {
                    Ok(_) => return Ok(action),
                    Err(e) => writeln!(self.output, "illegal: {e}").map_err(io)?,
                },
                Err(e) => writeln!(self.output, "cannot parse: {e}").map_err(io)?,
            }
            write!(self.output, "> ").map_err(io)?;
            self.output.flush().map_err(io)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, GameVariant};
    use crate::graph::OrientedGraph;

    #[test]
    fn parses_each_turn() {
        assert_eq!(parse_action(Turn::CopPlacement, "0 2"), Ok(Action::PlaceCops(vec![0, 2])));
        assert_eq!(
            parse_action(Turn::CopTurn, "push 2, move 1"),
            Ok(Action::Cops(vec![CopAction::Push(2), CopAction::MoveTo(1)]))
        );
        assert_eq!(parse_action(Turn::RobberTurn, "stay"), Ok(Action::Robber(RobberAction::Stay)));
        assert!(parse_action(Turn::RobberTurn, "push 1").is_err());
        assert!(parse_action(Turn::CopTurn, "jump 1").is_err());
    }

    #[test]
    fn scripted_match_retries_illegal_lines() {
        let g = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        let game = Game::new(&g, GameVariant::strong(1)).unwrap();
        let mut c = Manual::new("0\nmove 0\nmove 1\n".as_bytes(), Vec::new());
        let mut r = Manual::new("1\n".as_bytes(), Vec::new());
        let m = play_match(&game, &mut c, &mut r, None).unwrap();
        assert_eq!(m.capture_round(), Some(1));
        assert!(String::from_utf8(c.output).unwrap().contains("illegal"));
    }
}
