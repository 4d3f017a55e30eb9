//! Independent reference solvers and game generators.
//!
//! [`attractor_solve`] and [`exhaustive_solve`] share no code with the
//! lifting solver, so agreement between the three is meaningful.

mod cycles;
mod exhaustive;
mod generate;
mod zielonka;

pub use cycles::{check_strategy_cycles, CycleViolation};
pub use exhaustive::{exhaustive_solve, EXHAUSTIVE_MAX_PAIRS, EXHAUSTIVE_MAX_VERTICES};
pub use generate::{generate, GeneratorConfig};
pub use zielonka::{attractor, attractor_solve};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("exhaustive search supports at most {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("exhaustive search supports at most {max} strategy pairs, got {pairs}")]
    TooManyStrategies { pairs: u64, max: u64 },
    #[error("no uniform positional strategies found")]
    Undetermined,
    #[error("invalid generator config: {0}")]
    BadConfig(String),
}

/// Every game on `n ≤ 2` vertices with priorities in `0..=max_priority`:
/// all owner, priority and nonempty successor-set combinations.
pub fn all_small_games(n: usize, max_priority: u32) -> Vec<crate::game::ParityGame> {
    use crate::game::{ParityGame, Player, VertexRecord};
    let succ_sets: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|m| (0..n).filter(|&w| m >> w & 1 == 1).collect())
        .collect();
    let mut per_vertex = Vec::new();
    for p in 0..=max_priority {
        for owner in [Player::Even, Player::Odd] {
            for s in &succ_sets {
                per_vertex.push(VertexRecord { priority: p, owner, successors: s.clone() });
            }
        }
    }
    let mut games = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let records = idx.iter().map(|&i| per_vertex[i].clone()).collect();
        games.push(ParityGame::new(records).expect("well formed"));
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < per_vertex.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return games;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_game_counts() {
        // 1 vertex: 4 priorities × 2 owners × 1 successor set.
        assert_eq!(all_small_games(1, 3).len(), 8);
        // 2 vertices: (4 × 2 × 3)^2.
        assert_eq!(all_small_games(2, 3).len(), 576);
    }

    #[test]
    fn oracles_agree_on_small_games() {
        for n in 1..=2 {
            for g in all_small_games(n, 3) {
                let a = attractor_solve(&g);
                let e = exhaustive_solve(&g).unwrap();
                assert!(a.same_partition(&e), "{g:?}");
                assert!(a.is_consistent(&g) && e.is_consistent(&g));
            }
        }
    }

    #[test]
    fn oracles_agree_on_random_games() {
        for seed in 0..300 {
            let c = GeneratorConfig { min_degree: 1, max_degree: 3, ..GeneratorConfig::new(6, 6, seed) };
            let g = generate(&c).unwrap();
            let a = attractor_solve(&g);
            let e = exhaustive_solve(&g).unwrap();
            assert!(a.same_partition(&e), "seed {seed}");
            for r in [&a, &e] {
                for p in [crate::game::Player::Even, crate::game::Player::Odd] {
                    check_strategy_cycles(&g, r.region(p), r.strategy(p).unwrap(), p)
                        .unwrap_or_else(|v| panic!("seed {seed}: {v:?}"));
                }
            }
        }
    }
}
