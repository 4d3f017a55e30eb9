//! Strategy soundness by simple-cycle enumeration.

use std::collections::BTreeSet;

use crate::game::{ParityGame, Player, Priority, Strategy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleViolation {
    /// A vertex of `player` in the region has no recorded move.
    MissingMove(usize),
    /// An edge of the restricted graph leaves the region.
    Escapes { from: usize, to: usize },
    /// A simple cycle whose top priority favours the opponent.
    BadCycle { cycle: Vec<usize>, top: Priority },
}

/// Checks that `strategy` wins for `player` on `region`.
///
/// In the graph keeping only the strategy's edge at `player`'s vertices and
/// every edge at the opponent's, the region must be closed and every simple
/// cycle must have a top priority of `player`'s parity. Returns the number
/// of simple cycles examined.
pub fn check_strategy_cycles(
    game: &ParityGame,
    region: &BTreeSet<usize>,
    strategy: &Strategy,
    player: Player,
) -> Result<usize, CycleViolation> {
    let n = game.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in region {
        let moves: Vec<usize> = if game.owner(v) == player {
            vec![*strategy.get(&v).ok_or(CycleViolation::MissingMove(v))?]
        } else {
            game.successors(v).to_vec()
        };
        for &w in &moves {
            if !region.contains(&w) {
                return Err(CycleViolation::Escapes { from: v, to: w });
            }
        }
        adj[v] = moves;
    }
    let mut count = 0;
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for &s in region {
        path.push(s);
        on_path[s] = true;
        cycles_from(game, &adj, s, s, &mut path, &mut on_path, player, &mut count)?;
        on_path[s] = false;
        path.pop();
    }
    Ok(count)
}

/// Extends `path` (starting at `s`, the least vertex of the cycles sought)
/// from `v`.
#[allow(clippy::too_many_arguments)]
fn cycles_from(
    game: &ParityGame,
    adj: &[Vec<usize>],
    s: usize,
    v: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    player: Player,
    count: &mut usize,
) -> Result<(), CycleViolation> {
    for &w in &adj[v] {
        if w == s {
            *count += 1;
            let top = path.iter().map(|&u| game.priority(u)).max().expect("nonempty path");
            if Player::of_priority(top) != player {
                return Err(CycleViolation::BadCycle { cycle: path.clone(), top });
            }
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            cycles_from(game, adj, s, w, path, on_path, player, count)?;
            path.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}
