//! Ground truth by playing every pair of positional strategies.

use std::collections::BTreeSet;

use super::OracleError;
use crate::game::{ParityGame, Player, SolveResult, Strategy};

/// Largest game accepted by [`exhaustive_solve`].
pub const EXHAUSTIVE_MAX_VERTICES: usize = 10;
/// Largest number of strategy pairs accepted by [`exhaustive_solve`].
pub const EXHAUSTIVE_MAX_PAIRS: u64 = 1 << 22;

/// All positional strategies of `player`, as mixed-radix choice vectors.
struct StrategySpace {
    owned: Vec<usize>,
    radix: Vec<usize>,
    count: u64,
}

impl StrategySpace {
    fn new(game: &ParityGame, player: Player) -> Self {
        let owned: Vec<usize> = game.vertices().filter(|&v| game.owner(v) == player).collect();
        let radix: Vec<usize> = owned.iter().map(|&v| game.successors(v).len()).collect();
        let count = radix
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
            .unwrap_or(u64::MAX);
        StrategySpace { owned, radix, count }
    }

    /// Writes strategy number `k` into `next`.
    fn apply(&self, game: &ParityGame, mut k: u64, next: &mut [usize]) {
        for (&v, &r) in self.owned.iter().zip(&self.radix) {
            next[v] = game.successors(v)[(k % r as u64) as usize];
            k /= r as u64;
        }
    }

    fn decode(&self, game: &ParityGame, k: u64) -> Strategy {
        let mut next = vec![0; game.len()];
        self.apply(game, k, &mut next);
        self.owned.iter().map(|&v| (v, next[v])).collect()
    }
}

/// The set of start vertices from which the play of a fully determined
/// successor function ends in an even-topped cycle, as a bitmask.
fn even_starts(game: &ParityGame, next: &[usize], state: &mut [u8], wins: &mut [bool]) -> u64 {
    const FRESH: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    state.fill(FRESH);
    let mut path = Vec::with_capacity(game.len());
    for start in game.vertices() {
        if state[start] != FRESH {
            continue;
        }
        path.clear();
        let mut v = start;
        while state[v] == FRESH {
            state[v] = ON_PATH;
            path.push(v);
            v = next[v];
        }
        let outcome = if state[v] == ON_PATH {
            let at = path.iter().position(|&u| u == v).expect("on the current path");
            let top = path[at..].iter().map(|&u| game.priority(u)).max().expect("nonempty cycle");
            top % 2 == 0
        } else {
            wins[v]
        };
        for &u in &path {
            state[u] = DONE;
            wins[u] = outcome;
        }
    }
    wins.iter().enumerate().fold(0, |m, (v, &w)| if w { m | 1 << v } else { m })
}

/// Solves `game` by enumerating every pair of positional strategies.
///
/// Even wins `v` when one of its strategies wins from `v` against every Odd
/// strategy, and dually for Odd. The returned strategies are uniform: each
/// wins from every vertex of its player's region at once. A game where the
/// regions fail to partition the vertices, or where no uniform strategy
/// exists, yields [`OracleError::Undetermined`].
pub fn exhaustive_solve(game: &ParityGame) -> Result<SolveResult, OracleError> {
    let n = game.len();
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(OracleError::TooManyVertices { n, max: EXHAUSTIVE_MAX_VERTICES });
    }
    let even = StrategySpace::new(game, Player::Even);
    let odd = StrategySpace::new(game, Player::Odd);
    let pairs = even.count.saturating_mul(odd.count);
    if pairs > EXHAUSTIVE_MAX_PAIRS {
        return Err(OracleError::TooManyStrategies { pairs, max: EXHAUSTIVE_MAX_PAIRS });
    }
    let all = (1u64 << n) - 1;
    let mut next = vec![0; n];
    let mut state = vec![0u8; n];
    let mut wins = vec![false; n];
    let mut good_even = vec![all; even.count as usize];
    let mut good_odd = vec![all; odd.count as usize];
    for e in 0..even.count {
        even.apply(game, e, &mut next);
        for o in 0..odd.count {
            odd.apply(game, o, &mut next);
            let mask = even_starts(game, &next, &mut state, &mut wins);
            good_even[e as usize] &= mask;
            good_odd[o as usize] &= !mask & all;
        }
    }
    let even_region = good_even.iter().fold(0, |a, &m| a | m);
    let odd_region = good_odd.iter().fold(0, |a, &m| a | m);
    if even_region & odd_region != 0 || even_region | odd_region != all {
        return Err(OracleError::Undetermined);
    }
    let uniform = |good: &[u64], region: u64| good.iter().position(|&m| m == region);
    let (Some(se), Some(so)) = (uniform(&good_even, even_region), uniform(&good_odd, odd_region))
    else {
        return Err(OracleError::Undetermined);
    };
    let members = |mask: u64| -> BTreeSet<usize> { (0..n).filter(|&v| mask >> v & 1 == 1).collect() };
    let even_wins = members(even_region);
    let odd_wins = members(odd_region);
    let restrict = |s: Strategy, region: &BTreeSet<usize>| -> Strategy {
        s.into_iter().filter(|(v, _)| region.contains(v)).collect()
    };
    Ok(SolveResult {
        even_strategy: Some(restrict(even.decode(game, se as u64), &even_wins)),
        odd_strategy: Some(restrict(odd.decode(game, so as u64), &odd_wins)),
        even_wins,
        odd_wins,
    })
}
