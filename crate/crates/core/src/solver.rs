//! Exact retrograde solver over the whole game arena.
//!
//! One arena covers every orientation of the start orientation's push class,
//! so a single solve answers the game for all `2^(n-1)` class members.
//!
//! Play states are indexed mixed-radix as
//! `((class * ranks + rank) * n + robber) * 2 + turn`, where `rank` numbers
//! sorted cop multisets lexicographically and `turn` is 0 for cops to move.
//! After the play states come one robber-placement state per
//! `(class, multiset)` and one cop-placement root per class.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{multisets, Action, Game, GameError, GameState, GameVariant, PushAbility, Turn};
use crate::graph::{out_mask_with, push_parity, OrientedGraph, VertexSet};
use crate::strategies::{Strategy, StrategyError};

pub const MAX_COPS: usize = 8;
/// Cap on `2^(n-1) * n^(k+1)`.
pub const STATE_CAP: u128 = 100_000_000;
pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("arena too large: 2^(n-1) * n^(k+1) = {estimate} exceeds {STATE_CAP}")]
    TooLarge { estimate: u128 },
    #[error("{0} cops requested, at most {MAX_COPS} supported")]
    TooManyCops(usize),
    #[error("at least one cop is required")]
    NoCops,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CopWin,
    RobberWin,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CopWin => "cop-win",
            Verdict::RobberWin => "robber-win",
        })
    }
}

/// `2^(n-1) * n^(k+1)`, the quantity the state cap applies to.
pub fn arena_estimate(n: usize, k: usize) -> u128 {
    let mut v = 1u128 << (n - 1);
    for _ in 0..=k {
        v = v.saturating_mul(n as u128);
    }
    v
}

/// Implicit arena: states are indices, moves are generated on demand.
#[derive(Debug, Clone)]
pub struct Arena {
    game: Game,
    n: usize,
    k: usize,
    classes: usize,
    ranks: usize,
    /// `ranks * k` positions, one sorted multiset per rank.
    members: Vec<u8>,
    /// Vertex mask of each multiset.
    member_mask: Vec<u64>,
    /// Base-`n` tuple code (any order) to multiset rank.
    rank_lut: Vec<u32>,
    ref_out: Vec<u64>,
    nbr: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    Play { class: usize, rank: usize, robber: usize, robber_turn: bool },
    RobberPlacement { class: usize, rank: usize },
    Root { class: usize },
}

pub fn build_arena(og: &OrientedGraph, variant: GameVariant) -> Result<Arena, SolverError> {
    let n = og.n();
    let k = variant.cops;
    if k == 0 {
        return Err(SolverError::NoCops);
    }
    if k > MAX_COPS {
        return Err(SolverError::TooManyCops(k));
    }
    let estimate = arena_estimate(n, k);
    if estimate > STATE_CAP {
        return Err(SolverError::TooLarge { estimate });
    }
    let game = Game::new(og, variant).map_err(|_| SolverError::NoCops)?;
    let start = game.start().clone();

    let sets = multisets(n, k);
    let ranks = sets.len();
    let mut members = Vec::with_capacity(ranks * k);
    let mut member_mask = Vec::with_capacity(ranks);
    let mut by_code = HashMap::with_capacity(ranks);
    for (rank, set) in sets.iter().enumerate() {
        members.extend(set.iter().map(|&v| v as u8));
        member_mask.push(set.iter().fold(0u64, |m, &v| m | 1 << v));
        by_code.insert(tuple_code(n, set.iter().copied()), rank as u32);
    }
    let total = n.pow(k as u32);
    let mut rank_lut = vec![0u32; total];
    let mut digits = vec![0usize; k];
    for (code, slot) in rank_lut.iter_mut().enumerate() {
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % n;
            c /= n;
        }
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        *slot = by_code[&tuple_code(n, sorted.into_iter())];
    }

    Ok(Arena {
        n,
        k,
        classes: 1 << (n - 1),
        ranks,
        members,
        member_mask,
        rank_lut,
        ref_out: start.reference_out().to_vec(),
        nbr: start.graph().neighbor_masks().to_vec(),
        game,
    })
}

fn tuple_code(n: usize, it: impl Iterator<Item = usize>) -> usize {
    let mut code = 0;
    let mut scale = 1;
    for v in it {
        code += v * scale;
        scale *= n;
    }
    code
}

impl Arena {
    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn play_states(&self) -> usize {
        self.classes * self.ranks * self.n * 2
    }

    pub fn placement_states(&self) -> usize {
        self.classes * self.ranks + self.classes
    }

    pub fn total_states(&self) -> usize {
        self.play_states() + self.placement_states()
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn root_index(&self, class: usize) -> usize {
        self.play_states() + self.classes * self.ranks + class
    }

    fn rp_index(&self, class: usize, rank: usize) -> usize {
        self.play_states() + class * self.ranks + rank
    }

    #[inline]
    fn play_index(&self, class: usize, rank: usize, robber: usize, robber_turn: bool) -> usize {
        ((class * self.ranks + rank) * self.n + robber) * 2 + robber_turn as usize
    }

    pub fn kind(&self, idx: usize) -> StateKind {
        let p = self.play_states();
        if idx < p {
            let robber_turn = idx & 1 == 1;
            let rest = idx >> 1;
            let robber = rest % self.n;
            let rest = rest / self.n;
            StateKind::Play { class: rest / self.ranks, rank: rest % self.ranks, robber, robber_turn }
        } else if idx < p + self.classes * self.ranks {
            let i = idx - p;
            StateKind::RobberPlacement { class: i / self.ranks, rank: i % self.ranks }
        } else {
            StateKind::Root { class: idx - p - self.classes * self.ranks }
        }
    }

    fn members(&self, rank: usize) -> &[u8] {
        &self.members[rank * self.k..(rank + 1) * self.k]
    }

    #[inline]
    fn out_mask(&self, parity: u64, v: usize) -> u64 {
        out_mask_with(self.ref_out[v], self.nbr[v], parity, v)
    }

    #[inline]
    fn in_mask(&self, parity: u64, v: usize) -> u64 {
        self.nbr[v] & !self.out_mask(parity, v)
    }

    #[inline]
    fn rank_of(&self, tuple: &[u8]) -> usize {
        let mut code = 0;
        let mut scale = 1;
        for &v in tuple {
            code += v as usize * scale;
            scale *= self.n;
        }
        self.rank_lut[code] as usize
    }

    /// Arena index of an engine state of this arena's game.
    pub fn index_of(&self, state: &GameState) -> Option<usize> {
        let class = usize::try_from(state.class_index).ok().filter(|&c| c < self.classes)?;
        match state.turn {
            Turn::CopPlacement => Some(self.root_index(class)),
            Turn::RobberPlacement => {
                let cops = state.cops.as_ref()?;
                Some(self.rp_index(class, self.rank_checked(cops)?))
            }
            Turn::CopTurn | Turn::RobberTurn => {
                let cops = state.cops.as_ref()?;
                let r = state.robber.filter(|&r| r < self.n)?;
                let rank = self.rank_checked(cops)?;
                Some(self.play_index(class, rank, r, state.turn == Turn::RobberTurn))
            }
        }
    }

    fn rank_checked(&self, cops: &[usize]) -> Option<usize> {
        if cops.len() != self.k || cops.iter().any(|&c| c >= self.n) {
            return None;
        }
        let t: Vec<u8> = cops.iter().map(|&c| c as u8).collect();
        Some(self.rank_of(&t))
    }

    pub fn state_at(&self, idx: usize) -> GameState {
        let cops_of = |rank: usize| Some(self.members(rank).iter().map(|&v| v as usize).collect());
        match self.kind(idx) {
            StateKind::Play { class, rank, robber, robber_turn } => GameState {
                class_index: class as u64,
                cops: cops_of(rank),
                robber: Some(robber),
                turn: if robber_turn { Turn::RobberTurn } else { Turn::CopTurn },
            },
            StateKind::RobberPlacement { class, rank } => {
                GameState { class_index: class as u64, cops: cops_of(rank), robber: None, turn: Turn::RobberPlacement }
            }
            StateKind::Root { class } => {
                GameState { class_index: class as u64, cops: None, robber: None, turn: Turn::CopPlacement }
            }
        }
    }

    /// Play state with the robber on a cop.
    pub fn is_terminal(&self, idx: usize) -> bool {
        match self.kind(idx) {
            StateKind::Play { rank, robber, .. } => self.member_mask[rank] >> robber & 1 == 1,
            _ => false,
        }
    }

    /// Distinct successor indices, sorted. Terminal states have none.
    pub fn successors(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        match self.kind(idx) {
            StateKind::Root { class } => {
                out.extend((0..self.ranks).map(|rank| self.rp_index(class, rank)));
            }
            StateKind::RobberPlacement { class, rank } => {
                out.extend((0..self.n).map(|r| self.play_index(class, rank, r, false)));
            }
            StateKind::Play { class, rank, robber, robber_turn } => {
                if self.member_mask[rank] >> robber & 1 == 1 {
                    return out;
                }
                let parity = (class as u64) << 1;
                if robber_turn {
                    out.push(self.play_index(class, rank, robber, false));
                    for v in VertexSet(self.out_mask(parity, robber)).iter() {
                        out.push(self.play_index(class, rank, v, false));
                    }
                } else {
                    let mut t = [0u8; MAX_COPS];
                    t[..self.k].copy_from_slice(self.members(rank));
                    self.forward_cops(0, parity, &mut t, robber, &mut out);
                }
                out.sort_unstable();
                out.dedup();
            }
        }
        out
    }

    fn forward_cops(&self, j: usize, parity: u64, t: &mut [u8; MAX_COPS], r: usize, out: &mut Vec<usize>) {
        if j == self.k {
            let class = (parity >> 1) as usize;
            out.push(self.play_index(class, self.rank_of(&t[..self.k]), r, true));
            return;
        }
        let pos = t[j] as usize;
        self.forward_cops(j + 1, parity, t, r, out);
        for w in VertexSet(self.out_mask(parity, pos)).iter() {
            t[j] = w as u8;
            self.forward_cops(j + 1, parity, t, r, out);
        }
        t[j] = pos as u8;
        match self.game.variant().cop_push {
            PushAbility::None => {}
            PushAbility::Weak => {
                self.forward_cops(j + 1, push_parity(parity, pos, self.n), t, r, out);
            }
            PushAbility::Strong => {
                for w in 0..self.n {
                    self.forward_cops(j + 1, push_parity(parity, w, self.n), t, r, out);
                }
            }
        }
    }

    /// Distinct non-terminal play predecessors of a play state, sorted.
    pub fn predecessors(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut scratch = Scratch::new(self.k);
        self.predecessors_into(idx, &mut out, &mut scratch);
        out
    }

    fn predecessors_into(&self, idx: usize, out: &mut Vec<usize>, scratch: &mut Scratch) {
        out.clear();
        let StateKind::Play { class, rank, robber, robber_turn } = self.kind(idx) else {
            return;
        };
        let parity = (class as u64) << 1;
        if robber_turn {
            // Cops moved last: undo a cop turn.
            let finals = self.members(rank);
            scratch.perms.clear();
            distinct_permutations(finals, &mut scratch.perm, &mut scratch.used, &mut scratch.perms);
            let mut t = [0u8; MAX_COPS];
            for p in scratch.perms.chunks(self.k) {
                t[..self.k].copy_from_slice(p);
                self.reverse_cops(self.k, parity, &mut t, robber, out);
            }
            out.sort_unstable();
            out.dedup();
        } else {
            // Robber moved last: undo a robber move. All candidates are distinct.
            let cops = self.member_mask[rank];
            let cands = (1u64 << robber) | self.in_mask(parity, robber);
            for r in VertexSet(cands & !cops).iter() {
                out.push(self.play_index(class, rank, r, true));
            }
        }
    }

    /// Undoes cops `j-1, ..., 0`. `t[j..]` already hold original positions
    /// and `t[..j]` still hold final ones.
    fn reverse_cops(&self, j: usize, parity: u64, t: &mut [u8; MAX_COPS], r: usize, out: &mut Vec<usize>) {
        if j == 0 {
            let tuple = &t[..self.k];
            if tuple.iter().any(|&c| c as usize == r) {
                return;
            }
            let class = (parity >> 1) as usize;
            out.push(self.play_index(class, self.rank_of(tuple), r, false));
            return;
        }
        let c = j - 1;
        let fin = t[c];
        let bound = if j < self.k { t[j] } else { u8::MAX };
        let mut recurse = |prev: u8, p: u64, t: &mut [u8; MAX_COPS]| {
            if prev <= bound {
                t[c] = prev;
                self.reverse_cops(c, p, t, r, out);
                t[c] = fin;
            }
        };
        recurse(fin, parity, t);
        for a in VertexSet(self.in_mask(parity, fin as usize)).iter() {
            recurse(a as u8, parity, t);
        }
        match self.game.variant().cop_push {
            PushAbility::None => {}
            PushAbility::Weak => recurse(fin, push_parity(parity, fin as usize, self.n), t),
            PushAbility::Strong => {
                for w in 0..self.n {
                    recurse(fin, push_parity(parity, w, self.n), t);
                }
            }
        }
    }
}

struct Scratch {
    perm: Vec<u8>,
    used: Vec<bool>,
    perms: Vec<u8>,
}

impl Scratch {
    fn new(k: usize) -> Self {
        Scratch { perm: Vec::with_capacity(k), used: vec![false; k], perms: Vec::new() }
    }
}

/// Appends every distinct ordering of the sorted slice `items`.
fn distinct_permutations(items: &[u8], perm: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<u8>) {
    if perm.len() == items.len() {
        out.extend_from_slice(perm);
        return;
    }
    for i in 0..items.len() {
        if used[i] || (i > 0 && items[i] == items[i - 1] && !used[i - 1]) {
            continue;
        }
        used[i] = true;
        perm.push(items[i]);
        distinct_permutations(items, perm, used, out);
        perm.pop();
        used[i] = false;
    }
}

/// Levels for every arena state. A finite level is a cop win; it counts the
/// half-moves left under optimal play, placements included.
#[derive(Debug, Clone)]
pub struct SolveResult {
    arena: Arena,
    levels: Vec<u32>,
}

pub fn solve(arena: Arena) -> SolveResult {
    let p = arena.play_states();
    let mut levels = vec![UNREACHED; arena.total_states()];
    let mut counters = vec![0u8; p / 2];
    let mut queue: Vec<u32> = Vec::new();
    let n = arena.n;

    for class in 0..arena.classes {
        let parity = (class as u64) << 1;
        for rank in 0..arena.ranks {
            let cops = arena.member_mask[rank];
            for r in 0..n {
                if cops >> r & 1 == 1 {
                    for turn in [false, true] {
                        let i = arena.play_index(class, rank, r, turn);
                        levels[i] = 0;
                        queue.push(i as u32);
                    }
                } else {
                    let i = arena.play_index(class, rank, r, true);
                    counters[i >> 1] = 1 + arena.out_mask(parity, r).count_ones() as u8;
                }
            }
        }
    }

    let mut preds = Vec::new();
    let mut scratch = Scratch::new(arena.k);
    let mut head = 0;
    while head < queue.len() {
        let idx = queue[head] as usize;
        head += 1;
        let next = levels[idx] + 1;
        arena.predecessors_into(idx, &mut preds, &mut scratch);
        if idx & 1 == 1 {
            for &q in &preds {
                if levels[q] == UNREACHED {
                    levels[q] = next;
                    queue.push(q as u32);
                }
            }
        } else {
            for &q in &preds {
                if levels[q] == UNREACHED {
                    let c = &mut counters[q >> 1];
                    *c -= 1;
                    if *c == 0 {
                        levels[q] = next;
                        queue.push(q as u32);
                    }
                }
            }
        }
    }
    drop(queue);

    for class in 0..arena.classes {
        let mut best = UNREACHED;
        for rank in 0..arena.ranks {
            let worst = (0..n).map(|r| levels[arena.play_index(class, rank, r, false)]).max().unwrap_or(UNREACHED);
            let l = if worst == UNREACHED { UNREACHED } else { worst + 1 };
            levels[arena.rp_index(class, rank)] = l;
            best = best.min(l);
        }
        levels[arena.root_index(class)] = if best == UNREACHED { UNREACHED } else { best + 1 };
    }
    SolveResult { arena, levels }
}

/// Builds and solves the arena for `og`.
pub fn solve_game(og: &OrientedGraph, variant: GameVariant) -> Result<SolveResult, SolverError> {
    Ok(solve(build_arena(og, variant)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state {index} ({state:?}): stored level {stored}, recomputed {expected}")]
pub struct AuditError {
    pub index: usize,
    pub state: GameState,
    pub stored: u32,
    pub expected: u32,
}

impl SolveResult {
    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn game(&self) -> &Game {
        &self.arena.game
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn level_at(&self, idx: usize) -> Option<u32> {
        Some(self.levels[idx]).filter(|&l| l != UNREACHED)
    }

    pub fn level(&self, state: &GameState) -> Option<u32> {
        self.level_at(self.arena.index_of(state)?)
    }

    pub fn is_cop_win(&self, state: &GameState) -> bool {
        self.level(state).is_some()
    }

    /// Verdict with the start orientation.
    pub fn verdict(&self) -> Verdict {
        self.verdict_for_class(0)
    }

    pub fn verdict_for_class(&self, class: u64) -> Verdict {
        match self.root_level(class) {
            Some(_) => Verdict::CopWin,
            None => Verdict::RobberWin,
        }
    }

    pub fn root_level(&self, class: u64) -> Option<u32> {
        self.level_at(self.arena.root_index(class as usize))
    }

    /// Cop moves needed after placement under optimal play, start orientation.
    pub fn capture_rounds(&self) -> Option<u64> {
        self.capture_rounds_for_class(0)
    }

    pub fn capture_rounds_for_class(&self, class: u64) -> Option<u64> {
        self.root_level(class).map(|l| (u64::from(l) - 2).div_ceil(2))
    }

    pub fn state_count(&self) -> usize {
        self.arena.total_states()
    }

    /// Recomputes every level from its successors and reports the first
    /// state where the stored value disagrees.
    pub fn audit(&self) -> Result<(), AuditError> {
        for idx in 0..self.levels.len() {
            let expected = self.expected_level(idx);
            if expected != self.levels[idx] {
                return Err(AuditError {
                    index: idx,
                    state: self.arena.state_at(idx),
                    stored: self.levels[idx],
                    expected,
                });
            }
        }
        Ok(())
    }

    fn expected_level(&self, idx: usize) -> u32 {
        if self.arena.is_terminal(idx) {
            return 0;
        }
        let succ: Vec<u32> = self.arena.successors(idx).iter().map(|&s| self.levels[s]).collect();
        let cops_choose = match self.arena.kind(idx) {
            StateKind::Play { robber_turn, .. } => !robber_turn,
            StateKind::RobberPlacement { .. } => false,
            StateKind::Root { .. } => true,
        };
        let pick = if cops_choose { succ.iter().copied().min() } else { succ.iter().copied().max() };
        match pick {
            Some(l) if l != UNREACHED => l + 1,
            _ => UNREACHED,
        }
    }

    fn check_game(&self, game: &Game) -> Result<(), StrategyError> {
        if game.variant() == self.arena.game.variant() && game.start().same_arcs(self.arena.game.start()) {
            Ok(())
        } else {
            Err(StrategyError::QueriedOnWrongArena)
        }
    }

    fn scored_actions(&self, game: &Game, state: &GameState) -> Result<Vec<(Action, u32)>, StrategyError> {
        self.check_game(game)?;
        let actions = game.legal_actions(state).map_err(StrategyError::Game)?;
        actions
            .into_iter()
            .map(|a| {
                let next = game.apply(state, &a).map_err(StrategyError::Game)?;
                let idx = self.arena.index_of(&next).ok_or(StrategyError::QueriedOnWrongArena)?;
                Ok((a, self.levels[idx]))
            })
            .collect()
    }

    /// Lowest-level action, ties to the first legal action.
    pub fn best_cop_action(&self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        let scored = self.scored_actions(game, state)?;
        let mut best: Option<(Action, u32)> = None;
        for (a, l) in scored {
            if best.as_ref().is_none_or(|(_, b)| l < *b) {
                best = Some((a, l));
            }
        }
        best.map(|(a, _)| a).ok_or(StrategyError::Game(GameError::GameOver))
    }

    /// First escaping action if any, else the highest level.
    pub fn best_robber_action(&self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        let scored = self.scored_actions(game, state)?;
        let mut best: Option<(Action, u32)> = None;
        for (a, l) in scored {
            if best.as_ref().is_none_or(|(_, b)| l > *b) {
                best = Some((a, l));
            }
        }
        best.map(|(a, _)| a).ok_or(StrategyError::Game(GameError::GameOver))
    }
}

/// Positional cop policy read off a solve.
#[derive(Debug, Clone)]
pub struct OptimalCop {
    result: Arc<SolveResult>,
}

/// Positional robber policy read off a solve.
#[derive(Debug, Clone)]
pub struct OptimalRobber {
    result: Arc<SolveResult>,
}

pub fn optimal_cop(result: Arc<SolveResult>) -> OptimalCop {
    OptimalCop { result }
}

pub fn optimal_robber(result: Arc<SolveResult>) -> OptimalRobber {
    OptimalRobber { result }
}

impl Strategy for OptimalCop {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        self.result.best_cop_action(game, state)
    }
}

impl Strategy for OptimalRobber {
    fn choose(&mut self, game: &Game, state: &GameState) -> Result<Action, StrategyError> {
        self.result.best_robber_action(game, state)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CopNumber {
    Exactly(usize),
    Above(usize),
}

impl CopNumber {
    pub fn value(self) -> Option<usize> {
        match self {
            CopNumber::Exactly(k) => Some(k),
            CopNumber::Above(_) => None,
        }
    }
}

impl fmt::Display for CopNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopNumber::Exactly(k) => write!(f, "{k}"),
            CopNumber::Above(k) => write!(f, ">{k}"),
        }
    }
}

/// Smallest `k <= k_max` for which the cops win from `og`.
pub fn cop_number(og: &OrientedGraph, ability: PushAbility, k_max: usize) -> Result<CopNumber, SolverError> {
    Ok(cop_number_detail(og, ability, k_max)?.0)
}

/// Like [`cop_number`], also returning the winning solve and the total
/// number of states explored over all tried `k`.
pub fn cop_number_detail(
    og: &OrientedGraph,
    ability: PushAbility,
    k_max: usize,
) -> Result<(CopNumber, Option<SolveResult>, usize), SolverError> {
    let mut states = 0;
    for k in 1..=k_max {
        let result = solve_game(og, GameVariant::new(ability, k))?;
        states += result.state_count();
        if result.verdict() == Verdict::CopWin {
            return Ok((CopNumber::Exactly(k), Some(result), states));
        }
    }
    Ok((CopNumber::Above(k_max), None, states))
}

/// Verdicts for every member of the push class at once, by class index.
pub fn class_verdicts(og: &OrientedGraph, variant: GameVariant) -> Result<Vec<Verdict>, SolverError> {
    let result = solve_game(og, variant)?;
    Ok((0..result.arena.classes as u64).map(|c| result.verdict_for_class(c)).collect())
}
