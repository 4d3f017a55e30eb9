//! Seeded random games.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::game::{ParityGame, Player, Priority, VertexRecord};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub vertices: usize,
    /// Priorities are drawn uniformly from `1..=max_priority`.
    pub max_priority: Priority,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Probability that a vertex is owned by Even.
    pub even_bias: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(vertices: usize, max_priority: Priority, seed: u64) -> Self {
        GeneratorConfig {
            vertices,
            max_priority,
            min_degree: 1,
            max_degree: 3.min(vertices.max(1)),
            even_bias: 0.5,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let bad = |why: &str| Err(OracleError::BadConfig(why.to_string()));
        if self.vertices == 0 {
            return bad("at least one vertex is required");
        }
        if self.max_priority == 0 {
            return bad("max priority must be at least 1");
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree {
            return bad("degrees must satisfy 1 <= min <= max");
        }
        if self.max_degree > self.vertices {
            return bad("max degree exceeds the vertex count");
        }
        if !(0.0..=1.0).contains(&self.even_bias) {
            return bad("even bias must lie in [0, 1]");
        }
        Ok(())
    }
}

/// A pseudo-random game determined by `config`.
///
/// When `max_priority ≥ 2` and there are at least two vertices, at least
/// one priority of each parity occurs.
pub fn generate(config: &GeneratorConfig) -> Result<ParityGame, OracleError> {
    config.validate()?;
    let n = config.vertices;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records: Vec<VertexRecord> = (0..n)
        .map(|_| {
            let priority = rng.gen_range(1..=config.max_priority);
            let owner = if rng.gen_bool(config.even_bias) { Player::Even } else { Player::Odd };
            let degree = rng.gen_range(config.min_degree..=config.max_degree);
            let mut successors = sample(&mut rng, n, degree).into_vec();
            successors.sort_unstable();
            VertexRecord { priority, owner, successors }
        })
        .collect();
    if config.max_priority >= 2 && n >= 2 {
        for parity in [1, 0] {
            if records.iter().all(|r| r.priority % 2 != parity) {
                let v = rng.gen_range(0..n);
                let choices = (1..=config.max_priority).filter(|p| p % 2 == parity);
                let choices: Vec<Priority> = choices.collect();
                records[v].priority = choices[rng.gen_range(0..choices.len())];
            }
        }
    }
    Ok(ParityGame::new(records).expect("generated games are well formed"))
}
