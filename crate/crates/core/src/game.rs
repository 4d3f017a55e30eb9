//! Parity game graphs, their derived statistics, and the dual game.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex priority. Zero is representable; higher is more important.
pub type Priority = u32;

/// The two players of a parity game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a priority of this parity.
    pub fn of_priority(p: Priority) -> Player {
        if p % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Even => write!(f, "even"),
            Player::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("vertex {0} has no successors")]
    NoSuccessors(usize),
    #[error("vertex {vertex} has successor {successor}, but the game has only {n} vertices")]
    DanglingSuccessor {
        vertex: usize,
        successor: usize,
        n: usize,
    },
    #[error("vertex {0} has priority 0 and cannot be dualized")]
    PriorityZero(usize),
}

/// One vertex: its priority, owner and successor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub priority: Priority,
    pub owner: Player,
    pub successors: Vec<usize>,
}

/// A finite parity game over dense vertex indices `0..n`.
///
/// Successor lists are sorted and free of duplicates; every vertex has at
/// least one successor. The value is immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    vertices: Vec<VertexRecord>,
    predecessors: Vec<Vec<usize>>,
    edge_count: usize,
}

/// `(n, m, d, η)`: vertex count, edge count, the least even bound on all
/// priorities, and the number of odd-priority vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameStats {
    pub n: usize,
    pub m: usize,
    pub d: Priority,
    pub eta: usize,
}

impl ParityGame {
    pub fn new(mut vertices: Vec<VertexRecord>) -> Result<Self, GameError> {
        let n = vertices.len();
        for (v, rec) in vertices.iter_mut().enumerate() {
            rec.successors.sort_unstable();
            rec.successors.dedup();
            if rec.successors.is_empty() {
                return Err(GameError::NoSuccessors(v));
            }
            if let Some(&w) = rec.successors.iter().find(|&&w| w >= n) {
                return Err(GameError::DanglingSuccessor {
                    vertex: v,
                    successor: w,
                    n,
                });
            }
        }
        let mut predecessors = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (v, rec) in vertices.iter().enumerate() {
            edge_count += rec.successors.len();
            for &w in &rec.successors {
                predecessors[w].push(v);
            }
        }
        Ok(ParityGame {
            vertices,
            predecessors,
            edge_count,
        })
    }

    /// Builds a game from `(priority, owner, successors)` triples.
    pub fn from_triples<I, S>(triples: I) -> Result<Self, GameError>
    where
        I: IntoIterator<Item = (Priority, Player, S)>,
        S: IntoIterator<Item = usize>,
    {
        Self::new(
            triples
                .into_iter()
                .map(|(priority, owner, succ)| VertexRecord {
                    priority,
                    owner,
                    successors: succ.into_iter().collect(),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &VertexRecord {
        &self.vertices[v]
    }

    pub fn priority(&self, v: usize) -> Priority {
        self.vertices[v].priority
    }

    pub fn owner(&self, v: usize) -> Player {
        self.vertices[v].owner
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.vertices[v].successors
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.predecessors[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(v, rec)| rec.successors.iter().map(move |&w| (v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn max_priority(&self) -> Priority {
        self.vertices.iter().map(|r| r.priority).max().unwrap_or(0)
    }

    /// The smallest even number not below any priority.
    pub fn d(&self) -> Priority {
        let p = self.max_priority();
        p + p % 2
    }

    /// Number of vertices with an odd priority.
    pub fn eta(&self) -> usize {
        self.vertices.iter().filter(|r| r.priority % 2 == 1).count()
    }

    pub fn stats(&self) -> GameStats {
        GameStats {
            n: self.len(),
            m: self.edge_count,
            d: self.d(),
            eta: self.eta(),
        }
    }

    pub fn has_priority_zero(&self) -> bool {
        self.vertices.iter().any(|r| r.priority == 0)
    }

    /// Number of vertices carrying exactly priority `p`.
    pub fn priority_count(&self, p: Priority) -> usize {
        self.vertices.iter().filter(|r| r.priority == p).count()
    }

    /// Decrements every priority and swaps the owners. Even wins a vertex of
    /// the dual exactly where Odd wins it in `self`.
    pub fn dualize(&self) -> Result<ParityGame, GameError> {
        if let Some(v) = self.vertices.iter().position(|r| r.priority == 0) {
            return Err(GameError::PriorityZero(v));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|r| VertexRecord {
                priority: r.priority - 1,
                owner: r.owner.opponent(),
                successors: r.successors.clone(),
            })
            .collect();
        Ok(ParityGame {
            vertices,
            predecessors: self.predecessors.clone(),
            edge_count: self.edge_count,
        })
    }

    /// Renumbers nothing; returns the game with every priority shifted up by
    /// one and owners swapped, undoing [`ParityGame::dualize`].
    pub fn undualize(&self) -> ParityGame {
        let vertices = self
            .vertices
            .iter()
            .map(|r| VertexRecord {
                priority: r.priority + 1,
                owner: r.owner.opponent(),
                successors: r.successors.clone(),
            })
            .collect();
        ParityGame {
            vertices,
            predecessors: self.predecessors.clone(),
            edge_count: self.edge_count,
        }
    }
}

/// A positional strategy restricted to some vertices: vertex → chosen successor.
pub type Strategy = BTreeMap<usize, usize>;

/// Winning regions and (where computed) positional strategies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveResult {
    pub even_wins: BTreeSet<usize>,
    pub odd_wins: BTreeSet<usize>,
    /// Choices for Even-owned vertices of `even_wins`.
    pub even_strategy: Option<Strategy>,
    /// Choices for Odd-owned vertices of `odd_wins`.
    pub odd_strategy: Option<Strategy>,
}

impl SolveResult {
    /// Builds a result from a per-vertex winner vector, with no strategies.
    pub fn from_winners(winners: &[Player]) -> Self {
        let mut r = SolveResult::default();
        for (v, &p) in winners.iter().enumerate() {
            match p {
                Player::Even => r.even_wins.insert(v),
                Player::Odd => r.odd_wins.insert(v),
            };
        }
        r
    }

    pub fn winner(&self, v: usize) -> Option<Player> {
        if self.even_wins.contains(&v) {
            Some(Player::Even)
        } else if self.odd_wins.contains(&v) {
            Some(Player::Odd)
        } else {
            None
        }
    }

    pub fn region(&self, player: Player) -> &BTreeSet<usize> {
        match player {
            Player::Even => &self.even_wins,
            Player::Odd => &self.odd_wins,
        }
    }

    pub fn strategy(&self, player: Player) -> Option<&Strategy> {
        match player {
            Player::Even => self.even_strategy.as_ref(),
            Player::Odd => self.odd_strategy.as_ref(),
        }
    }

    /// Exchanges the roles of the players; maps a result on the dual game
    /// back to the original.
    pub fn swap_players(self) -> SolveResult {
        SolveResult {
            even_wins: self.odd_wins,
            odd_wins: self.even_wins,
            even_strategy: self.odd_strategy,
            odd_strategy: self.even_strategy,
        }
    }

    pub fn same_partition(&self, other: &SolveResult) -> bool {
        self.even_wins == other.even_wins && self.odd_wins == other.odd_wins
    }

    /// Checks that the regions partition `0..n` and that every recorded
    /// strategy edge is an edge of `game` staying inside its region.
    pub fn is_consistent(&self, game: &ParityGame) -> bool {
        let n = game.len();
        let partition = self.even_wins.is_disjoint(&self.odd_wins)
            && self.even_wins.len() + self.odd_wins.len() == n
            && self.even_wins.iter().chain(&self.odd_wins).all(|&v| v < n);
        if !partition {
            return false;
        }
        [Player::Even, Player::Odd].into_iter().all(|player| {
            let Some(strategy) = self.strategy(player) else {
                return true;
            };
            let region = self.region(player);
            region
                .iter()
                .filter(|&&v| game.owner(v) == player)
                .all(|v| {
                    strategy.get(v).is_some_and(|w| {
                        game.successors(*v).contains(w) && region.contains(w)
                    })
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::{Even, Odd};

    #[test]
    fn dualize_single_vertex() {
        let g = ParityGame::from_triples([(2, Even, vec![0])]).unwrap();
        let dual = g.dualize().unwrap();
        assert_eq!(dual.priority(0), 1);
        assert_eq!(dual.owner(0), Odd);
        assert_eq!(dual.successors(0), &[0]);
    }

    #[test]
    fn dualize_three_vertices() {
        let g = ParityGame::from_triples([
            (1, Even, vec![1]),
            (2, Odd, vec![2]),
            (3, Even, vec![0]),
        ])
        .unwrap();
        let dual = g.dualize().unwrap();
        let prios: Vec<_> = dual.vertices().map(|v| dual.priority(v)).collect();
        let owners: Vec<_> = dual.vertices().map(|v| dual.owner(v)).collect();
        assert_eq!(prios, vec![0, 1, 2]);
        assert_eq!(owners, vec![Odd, Even, Odd]);
        assert_eq!(dual.undualize(), g);
    }

    #[test]
    fn dualize_rejects_priority_zero() {
        let g = ParityGame::from_triples([(0, Even, vec![0])]).unwrap();
        assert_eq!(g.dualize(), Err(GameError::PriorityZero(0)));
    }

    #[test]
    fn stats_examples() {
        let g = ParityGame::from_triples([(2, Even, vec![0])]).unwrap();
        assert_eq!(g.stats(), GameStats { n: 1, m: 1, d: 2, eta: 0 });

        let g = ParityGame::from_triples([(1, Even, vec![0, 1]), (2, Odd, vec![0])]).unwrap();
        assert_eq!(g.stats(), GameStats { n: 2, m: 3, d: 2, eta: 1 });

        let g = ParityGame::from_triples([(5, Odd, vec![0])]).unwrap();
        assert_eq!(g.d(), 6);
    }

    #[test]
    fn dual_eta_counts_even_priorities_at_least_two() {
        let g = ParityGame::from_triples([
            (1, Even, vec![1]),
            (2, Odd, vec![2]),
            (4, Even, vec![3]),
            (3, Odd, vec![0]),
        ])
        .unwrap();
        assert_eq!(g.dualize().unwrap().eta(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            ParityGame::from_triples([(1, Even, vec![])]),
            Err(GameError::NoSuccessors(0))
        );
        assert_eq!(
            ParityGame::from_triples([(1, Even, vec![3])]),
            Err(GameError::DanglingSuccessor { vertex: 0, successor: 3, n: 1 })
        );
    }

    #[test]
    fn duplicate_successors_are_merged() {
        let g = ParityGame::from_triples([(1, Even, vec![0, 0, 0])]).unwrap();
        assert_eq!(g.successors(0), &[0]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn swap_players_exchanges_everything() {
        let mut r = SolveResult::from_winners(&[Even, Odd]);
        r.even_strategy = Some([(0, 0)].into());
        let s = r.clone().swap_players();
        assert_eq!(s.even_wins, r.odd_wins);
        assert_eq!(s.odd_strategy, r.even_strategy);
        assert_eq!(s.swap_players(), r);
    }
}
