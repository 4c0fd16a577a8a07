//! Cross-checks of the arena solver against a naive solver built only from
//! the engine's `legal_actions` and `apply`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use pushcops::game::{play_match, Action, Game, GameState, GameVariant, PushAbility, Turn};
use pushcops::generators::{
    complete_multipartite, enumerate_connected_graphs, enumerate_orientations, OrientationMode,
};
use pushcops::graph::OrientedGraph;
use pushcops::solver::{build_arena, optimal_cop, optimal_robber, solve, solve_game, StateKind, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: u64 = u64::MAX;

/// Rounds to capture under optimal play from every state with the cops to
/// move, by value iteration. Returns the root value per start class.
fn naive_capture_rounds(game: &Game) -> u64 {
    // Collect every cop-turn state reachable from any placement.
    let root = game.initial_state();
    let mut cop_states: Vec<GameState> = Vec::new();
    let mut seen: HashSet<GameState> = HashSet::new();
    let mut stack = Vec::new();
    for a in game.legal_actions(&root).unwrap() {
        let s = game.apply(&root, &a).unwrap();
        for b in game.legal_actions(&s).unwrap() {
            let t = game.apply(&s, &b).unwrap();
            if !t.is_captured() && seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    while let Some(s) = stack.pop() {
        cop_states.push(s.clone());
        for a in game.legal_actions(&s).unwrap() {
            let t = game.apply(&s, &a).unwrap();
            if t.is_captured() {
                continue;
            }
            for b in game.legal_actions(&t).unwrap() {
                let u = game.apply(&t, &b).unwrap();
                if !u.is_captured() && seen.insert(u.clone()) {
                    stack.push(u);
                }
            }
        }
    }
    // Precompute the two-ply successor structure.
    let index: HashMap<GameState, usize> = cop_states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    // For each cop action: None if it captures, else the list of robber
    // replies (None for a reply that walks into a cop).
    let moves: Vec<Vec<Option<Vec<Option<usize>>>>> = cop_states
        .iter()
        .map(|s| {
            game.legal_actions(s)
                .unwrap()
                .into_iter()
                .map(|a| {
                    let t = game.apply(s, &a).unwrap();
                    if t.is_captured() {
                        return None;
                    }
                    Some(
                        game.legal_actions(&t)
                            .unwrap()
                            .into_iter()
                            .map(|b| {
                                let u = game.apply(&t, &b).unwrap();
                                (!u.is_captured()).then(|| index[&u])
                            })
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    let mut value = vec![INF; cop_states.len()];
    loop {
        let mut changed = false;
        for i in 0..cop_states.len() {
            let best = moves[i]
                .iter()
                .map(|m| match m {
                    None => 1,
                    Some(replies) => {
                        let worst = replies.iter().map(|r| r.map_or(0, |j| value[j])).max().unwrap_or(0);
                        if worst == INF {
                            INF
                        } else {
                            1 + worst
                        }
                    }
                })
                .min()
                .unwrap();
            if best < value[i] {
                value[i] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    game.legal_actions(&root)
        .unwrap()
        .iter()
        .map(|a| {
            let s = game.apply(&root, a).unwrap();
            game.legal_actions(&s)
                .unwrap()
                .iter()
                .map(|b| {
                    let t = game.apply(&s, b).unwrap();
                    if t.is_captured() {
                        0
                    } else {
                        value[index[&t]]
                    }
                })
                .max()
                .unwrap()
        })
        .min()
        .unwrap()
}

fn variants() -> Vec<GameVariant> {
    let mut v = Vec::new();
    for p in [PushAbility::None, PushAbility::Weak, PushAbility::Strong] {
        for k in 1..=2 {
            v.push(GameVariant::new(p, k));
        }
    }
    v
}

#[test]
fn solver_matches_naive_value_iteration() {
    let mut checked = 0;
    for n in 1..=4 {
        for g in enumerate_connected_graphs(n, usize::MAX).unwrap() {
            let g = Arc::new(g);
            for rep in enumerate_orientations(g.clone(), OrientationMode::Classes).unwrap() {
                for variant in variants() {
                    let result = solve_game(&rep, variant).unwrap();
                    for class in 0..rep.push_class().size() {
                        let game = result.game().clone().with_start_class(class).unwrap();
                        let naive = naive_capture_rounds(&game);
                        let ours = result.capture_rounds_for_class(class);
                        assert_eq!(ours, (naive != INF).then_some(naive), "{rep:?} {variant:?} class {class}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn solver_matches_naive_on_random_five_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let g = Arc::new(pushcops::generators::random_connected_graph(5, rng.gen_range(0.2..0.8), rng.gen()).unwrap());
        let og = pushcops::generators::random_orientation(g, rng.gen());
        for variant in [GameVariant::strong(1), GameVariant::new(PushAbility::None, 2)] {
            let result = solve_game(&og, variant).unwrap();
            let naive = naive_capture_rounds(result.game());
            assert_eq!(result.capture_rounds(), (naive != INF).then_some(naive), "{og:?} {variant:?}");
        }
    }
}

/// Successor sets of the arena equal those generated by the engine.
#[test]
fn engine_and_arena_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sampled = 0;
    while sampled < 100_000 {
        let n = rng.gen_range(2..=6);
        let g = Arc::new(pushcops::generators::random_connected_graph(n, rng.gen_range(0.2..0.9), rng.gen()).unwrap());
        let og = pushcops::generators::random_orientation(g, rng.gen());
        let push = [PushAbility::None, PushAbility::Weak, PushAbility::Strong][rng.gen_range(0..3)];
        let k = rng.gen_range(1..=3);
        let arena = build_arena(&og, GameVariant::new(push, k)).unwrap();
        let game = arena.game().clone();
        for _ in 0..2000 {
            let idx = rng.gen_range(0..arena.total_states());
            let state = arena.state_at(idx);
            assert_eq!(arena.index_of(&state), Some(idx));
            if arena.is_terminal(idx) {
                assert!(state.is_captured());
                continue;
            }
            let mut from_engine: Vec<usize> = game
                .legal_actions(&state)
                .unwrap()
                .iter()
                .map(|a| arena.index_of(&game.apply(&state, a).unwrap()).unwrap())
                .collect();
            from_engine.sort_unstable();
            from_engine.dedup();
            let mut from_arena = arena.successors(idx);
            from_arena.sort_unstable();
            from_arena.dedup();
            assert_eq!(from_arena, from_engine, "{state:?} in {og:?} {push:?} k={k}");
            sampled += 1;
        }
    }
}

#[test]
fn levels_pass_the_audit() {
    for n in 2..=5 {
        for (i, g) in enumerate_connected_graphs(n, usize::MAX).unwrap().enumerate().step_by(37) {
            let og = OrientedGraph::ascending(Arc::new(g));
            for variant in variants() {
                let result = solve(build_arena(&og, variant).unwrap());
                result.audit().unwrap_or_else(|e| panic!("graph {i}: {e:?}"));
            }
        }
    }
}

#[test]
fn state_counts_follow_the_formula() {
    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for n in 1..=6 {
        let g = enumerate_connected_graphs(n, usize::MAX).unwrap().next().unwrap();
        let og = OrientedGraph::ascending(Arc::new(g));
        for k in 1..=3 {
            let arena = build_arena(&og, GameVariant::strong(k)).unwrap();
            let classes = 1usize << (n - 1);
            assert_eq!(arena.play_states(), classes * binom(n + k - 1, k) * n * 2);
            assert_eq!(arena.placement_states(), classes * binom(n + k - 1, k) + classes);
        }
    }
}

#[test]
fn frozen_solver_values() {
    let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let strong = solve_game(&tri, GameVariant::strong(1)).unwrap();
    assert_eq!(strong.verdict(), Verdict::CopWin);
    assert_eq!(strong.capture_rounds(), Some(2));
    assert_eq!(strong.arena().play_states(), 72);
    let none = solve_game(&tri, GameVariant::new(PushAbility::None, 1)).unwrap();
    assert_eq!(none.verdict(), Verdict::RobberWin);

    let c4 = OrientedGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let c = pushcops::solver::cop_number(&c4, PushAbility::None, 3).unwrap();
    let sp = pushcops::solver::cop_number(&c4, PushAbility::Strong, 3).unwrap();
    assert_eq!((c.value(), sp.value()), (Some(2), Some(1)));

    let arc = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
    assert_eq!(build_arena(&arc, GameVariant::new(PushAbility::None, 1)).unwrap().play_states(), 16);

    let single = OrientedGraph::from_arcs(1, &[]).unwrap();
    for k in 1..=3 {
        let r = solve_game(&single, GameVariant::strong(k)).unwrap();
        assert_eq!((r.verdict(), r.capture_rounds()), (Verdict::CopWin, Some(0)));
    }
}

#[test]
fn complete_bipartite_two_two_is_always_one_cop() {
    let g = Arc::new(complete_multipartite(&[2, 2]).unwrap());
    for og in enumerate_orientations(g, OrientationMode::All).unwrap() {
        assert_eq!(pushcops::solver::cop_number(&og, PushAbility::Strong, 2).unwrap().value(), Some(1));
    }
}

#[test]
fn dominating_vertex_gives_fast_capture() {
    for n in 2..=6 {
        let arcs: Vec<_> = (1..n).map(|v| (0, v)).collect();
        let star = OrientedGraph::from_arcs(n, &arcs).unwrap();
        for push in [PushAbility::None, PushAbility::Strong] {
            let r = solve_game(&star, GameVariant::new(push, 1)).unwrap();
            let root = r.arena().root_index(0);
            let place = r.arena().state_at(root);
            let cop_at_center = r.game().apply(&place, &Action::PlaceCops(vec![0])).unwrap();
            let idx = r.arena().index_of(&cop_at_center).unwrap();
            assert!(matches!(r.arena().kind(idx), StateKind::RobberPlacement { .. }));
            // Robber placement, then one capturing cop move: two half-moves.
            assert!(r.level_at(idx).unwrap() <= 2, "n = {n}");
            assert_eq!(r.capture_rounds(), Some(1));
        }
    }
}

#[test]
fn optimal_play_matches_levels_and_replays() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = Arc::new(pushcops::generators::random_connected_graph(n, rng.gen_range(0.2..0.8), rng.gen()).unwrap());
        let og = pushcops::generators::random_orientation(g, rng.gen());
        let variant = GameVariant::new(
            [PushAbility::None, PushAbility::Weak, PushAbility::Strong][rng.gen_range(0..3)],
            rng.gen_range(1..=2),
        );
        let r = Arc::new(solve_game(&og, variant).unwrap());
        let game = r.game().clone();
        let m = play_match(&game, &mut optimal_cop(r.clone()), &mut optimal_robber(r.clone()), None).unwrap();
        assert_eq!(m.capture_round(), r.capture_rounds(), "{og:?} {variant:?}");
        // Replay reproduces the final state, through JSON.
        let back = pushcops::game::Trace::from_json(&m.trace.to_json()).unwrap();
        assert_eq!(back, m.trace);
        assert_eq!(back.replay().unwrap(), m.final_state);
        // Class index after the trace is the start XOR every push.
        let mut expected = game.start().with_class_index(game.start_class());
        for step in &m.trace.rounds {
            if step.action.kind == pushcops::game::ActionKind::Push {
                expected = expected.push(step.action.vertex.unwrap()).unwrap();
            }
            assert!(step.class_index < game.start().push_class().size());
        }
        assert_eq!(expected.class_index(), m.final_state.class_index);
    }
}

#[test]
fn robber_wins_on_the_directed_triangle_without_push() {
    let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let r = Arc::new(solve_game(&tri, GameVariant::new(PushAbility::None, 1)).unwrap());
    let game = r.game().clone();
    let m = play_match(&game, &mut optimal_cop(r.clone()), &mut optimal_robber(r.clone()), Some(50)).unwrap();
    assert!(!m.captured());
    // The robber never steps into a cop-win state.
    let mut state = game.initial_state();
    for step in &m.trace.rounds {
        if step.actor == pushcops::game::Actor::Robber && step.action.kind != pushcops::game::ActionKind::Place {
            assert!(!r.is_cop_win(&state) || state.turn != Turn::RobberTurn);
        }
        state = GameState {
            class_index: step.class_index,
            cops: Some(step.cops.clone()),
            robber: step.robber,
            turn: state.turn,
        };
    }
}
