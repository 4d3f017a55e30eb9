//! The recursive attractor-based solver.

use std::collections::{BTreeSet, VecDeque};

use crate::game::{ParityGame, Player, SolveResult, Strategy};

/// A subgame given by membership flags over the vertices of a game.
type Region = Vec<bool>;

struct Partial {
    wins: [Vec<usize>; 2],
    strategy: [Strategy; 2],
}

fn index(p: Player) -> usize {
    match p {
        Player::Even => 0,
        Player::Odd => 1,
    }
}

/// `player`'s attractor to `target` inside `region`, with an attracting
/// move for each of `player`'s vertices added along the way.
pub fn attractor(
    game: &ParityGame,
    region: &[bool],
    target: &[usize],
    player: Player,
) -> (Region, Strategy) {
    let n = game.len();
    let mut attr = vec![false; n];
    let mut strategy = Strategy::new();
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| game.successors(v).iter().filter(|&&w| region[w]).count())
        .collect();
    let mut queue = VecDeque::new();
    for &t in target {
        if region[t] && !attr[t] {
            attr[t] = true;
            queue.push_back(t);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &u in game.predecessors(w) {
            if !region[u] || attr[u] {
                continue;
            }
            let joins = if game.owner(u) == player {
                strategy.insert(u, w);
                true
            } else {
                remaining[u] -= 1;
                remaining[u] == 0
            };
            if joins {
                attr[u] = true;
                queue.push_back(u);
            }
        }
    }
    (attr, strategy)
}

fn any_successor_in(game: &ParityGame, region: &[bool], v: usize) -> usize {
    *game
        .successors(v)
        .iter()
        .find(|&&w| region[w])
        .expect("subgames are closed under some move")
}

fn solve_region(game: &ParityGame, region: &Region) -> Partial {
    let members: Vec<usize> = (0..game.len()).filter(|&v| region[v]).collect();
    let Some(top) = members.iter().map(|&v| game.priority(v)).max() else {
        return Partial {
            wins: [Vec::new(), Vec::new()],
            strategy: [Strategy::new(), Strategy::new()],
        };
    };
    let alpha = Player::of_priority(top);
    let beta = alpha.opponent();
    let (a, b) = (index(alpha), index(beta));
    let heads: Vec<usize> = members.iter().copied().filter(|&v| game.priority(v) == top).collect();
    let (attr_a, to_heads) = attractor(game, region, &heads, alpha);
    let rest: Region = (0..game.len()).map(|v| region[v] && !attr_a[v]).collect();
    let sub = solve_region(game, &rest);

    if sub.wins[b].is_empty() {
        let mut strategy = sub.strategy;
        strategy[a].extend(to_heads);
        for &v in &heads {
            if game.owner(v) == alpha {
                strategy[a].insert(v, any_successor_in(game, region, v));
            }
        }
        strategy[b].clear();
        return Partial {
            wins: if a == 0 { [members, Vec::new()] } else { [Vec::new(), members] },
            strategy,
        };
    }

    let (attr_b, to_sub) = attractor(game, region, &sub.wins[b], beta);
    let rest: Region = (0..game.len()).map(|v| region[v] && !attr_b[v]).collect();
    let mut inner = solve_region(game, &rest);
    let mut wins_b: Vec<usize> = (0..game.len()).filter(|&v| attr_b[v]).collect();
    wins_b.extend(inner.wins[b].iter().copied());
    let mut strategy_b = std::mem::take(&mut inner.strategy[b]);
    strategy_b.extend(to_sub);
    for &v in &sub.wins[b] {
        if let Some(&w) = sub.strategy[b].get(&v) {
            strategy_b.insert(v, w);
        }
    }
    let mut partial = Partial {
        wins: [Vec::new(), Vec::new()],
        strategy: [Strategy::new(), Strategy::new()],
    };
    partial.wins[a] = inner.wins[a].clone();
    partial.wins[b] = wins_b;
    partial.strategy[a] = std::mem::take(&mut inner.strategy[a]);
    partial.strategy[b] = strategy_b;
    partial
}

/// Solves `game` by recursive attractor decomposition, returning positional
/// strategies for both players.
pub fn attractor_solve(game: &ParityGame) -> SolveResult {
    let partial = solve_region(game, &vec![true; game.len()]);
    let [even, odd] = partial.wins;
    let [se, so] = partial.strategy;
    let even_wins: BTreeSet<usize> = even.into_iter().collect();
    let odd_wins: BTreeSet<usize> = odd.into_iter().collect();
    let keep = |s: Strategy, region: &BTreeSet<usize>, p: Player| -> Strategy {
        s.into_iter()
            .filter(|(v, _)| region.contains(v) && game.owner(*v) == p)
            .collect()
    };
    SolveResult {
        even_strategy: Some(keep(se, &even_wins, Player::Even)),
        odd_strategy: Some(keep(so, &odd_wins, Player::Odd)),
        even_wins,
        odd_wins,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::{Even, Odd};

    #[test]
    fn self_loops() {
        let g = ParityGame::from_triples([(2, Odd, vec![0])]).unwrap();
        assert_eq!(attractor_solve(&g).even_wins, [0].into());
        let g = ParityGame::from_triples([(1, Even, vec![0])]).unwrap();
        assert_eq!(attractor_solve(&g).odd_wins, [0].into());
    }

    #[test]
    fn escape_to_even_loop() {
        let g = ParityGame::from_triples([(1, Even, vec![0, 1]), (2, Even, vec![1])]).unwrap();
        let r = attractor_solve(&g);
        assert_eq!(r.even_wins, [0, 1].into());
        assert_eq!(r.even_strategy.unwrap()[&0], 1);
    }

    #[test]
    fn odd_forces_into_its_cycle() {
        // v0 (Odd, 0) chooses between v1 (priority 3 self-loop) and v2 (priority 2 self-loop).
        let g = ParityGame::from_triples([
            (0, Odd, vec![1, 2]),
            (3, Even, vec![1]),
            (2, Even, vec![2]),
        ])
        .unwrap();
        let r = attractor_solve(&g);
        assert_eq!(r.odd_wins, [0, 1].into());
        assert!(r.is_consistent(&g));
        assert_eq!(r.odd_strategy.unwrap()[&0], 1);
    }
}
