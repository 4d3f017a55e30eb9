use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::lift::lift_value;
use super::measure::Measure;
use crate::counters::{count_exact, CounterSpace, ExtendedCounter, SentinelMode};
use crate::game::{ParityGame, Player, SolveResult, Strategy};

/// Order in which pending vertices are lifted. Every policy reaches the
/// same least fixpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WorkListPolicy {
    /// Queue seeded with all vertices; predecessors of a changed vertex are
    /// appended.
    #[default]
    Fifo,
    /// Pending vertices drawn uniformly at random from a seeded generator.
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub policy: WorkListPolicy,
    /// Solve the dual game when more than half the vertices are odd.
    pub normalize: bool,
    /// Record every value-changing lift.
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            policy: WorkListPolicy::Fifo,
            normalize: true,
            trace: false,
        }
    }
}

/// How the game handed to the lifting loop relates to the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Direct,
    Dualized,
    /// `η > n/2` but a priority-0 vertex prevents dualizing.
    SkippedPriorityZero,
}

/// One successful lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftEvent {
    pub vertex: usize,
    pub old: ExtendedCounter,
    pub new: ExtendedCounter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftStats {
    pub normalization: Normalization,
    /// Budget `g` and bound `d` of the space actually lifted over.
    pub budget: usize,
    pub d: u32,
    /// Value-changing lifts, per vertex.
    pub lifts: Vec<u64>,
    /// `Lift_v` evaluations, changing or not.
    pub evaluations: u64,
    /// Most bits held by any finite counter during the run.
    pub max_bits_used: usize,
    pub measure_bits: usize,
}

impl LiftStats {
    pub fn total_lifts(&self) -> u64 {
        self.lifts.iter().sum()
    }

    pub fn max_lifts(&self) -> u64 {
        self.lifts.iter().copied().max().unwrap_or(0)
    }

    /// `|S| + 1` for the lifted space, saturating at `u64::MAX`.
    pub fn lift_bound(&self) -> u64 {
        let size = count_exact(self.budget, self.d);
        u64::try_from(size).map_or(u64::MAX, |s| s.saturating_add(1))
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub result: SolveResult,
    /// The least fixpoint, over the dual game when `stats.normalization`
    /// says so.
    pub measure: Measure,
    pub stats: LiftStats,
    pub trace: Vec<LiftEvent>,
}

/// `lift(μ, v, w)`: the least `σ ≥ μ(v)` making `(v, w)` progressive in
/// `μ[v ↦ σ]`.
pub fn lift_edge(game: &ParityGame, measure: &Measure, v: usize, w: usize) -> ExtendedCounter {
    let p = game.priority(v);
    let current = measure.get(v);
    if v == w {
        // The edge compares σ with itself.
        return if p % 2 == 1 { ExtendedCounter::Top } else { current };
    }
    lift_value(measure.space(), &current, &measure.get(w), p)
}

/// `Lift_v(μ)(v)`: the minimum of the edge lifts for Even, the maximum for Odd.
pub fn lift_vertex(game: &ParityGame, measure: &Measure, v: usize) -> ExtendedCounter {
    let lifts = game.successors(v).iter().map(|&w| lift_edge(game, measure, v, w));
    match game.owner(v) {
        Player::Even => lifts.min(),
        Player::Odd => lifts.max(),
    }
    .expect("every vertex has a successor")
}

pub fn is_progressive_edge(game: &ParityGame, measure: &Measure, v: usize, w: usize) -> bool {
    measure.space().is_progressive_pair(
        &measure.get(v),
        &measure.get(w),
        game.priority(v),
        SentinelMode::Lifting,
    )
}

/// Whether `measure` is a succinct progress measure: some outgoing edge of
/// each Even vertex and every outgoing edge of each Odd vertex is
/// progressive.
pub fn check_progress_measure(game: &ParityGame, measure: &Measure) -> bool {
    game.vertices().all(|v| {
        let mut edges = game.successors(v).iter();
        match game.owner(v) {
            Player::Even => edges.any(|&w| is_progressive_edge(game, measure, v, w)),
            Player::Odd => edges.all(|&w| is_progressive_edge(game, measure, v, w)),
        }
    })
}

/// The counter space for lifting `game` directly.
pub fn space_for(game: &ParityGame) -> CounterSpace {
    CounterSpace::for_eta(game.eta(), game.d())
}

/// Solves `game` with default options.
pub fn solve(game: &ParityGame) -> SolveResult {
    solve_with(game, &SolveOptions::default()).result
}

pub fn solve_with(game: &ParityGame, options: &SolveOptions) -> Solution {
    let wants_dual = options.normalize && 2 * game.eta() > game.len();
    if wants_dual {
        if let Ok(dual) = game.dualize() {
            let mut solution = lift_to_fixpoint(&dual, options);
            solution.result = solution.result.swap_players();
            solution.stats.normalization = Normalization::Dualized;
            return solution;
        }
    }
    let mut solution = lift_to_fixpoint(game, options);
    if wants_dual {
        solution.stats.normalization = Normalization::SkippedPriorityZero;
    }
    solution
}

enum Pending {
    Fifo(VecDeque<usize>),
    Random(Vec<usize>, ChaCha8Rng),
}

impl Pending {
    fn new(policy: WorkListPolicy, n: usize) -> Self {
        match policy {
            WorkListPolicy::Fifo => Pending::Fifo((0..n).collect()),
            WorkListPolicy::Random { seed } => {
                Pending::Random((0..n).collect(), ChaCha8Rng::seed_from_u64(seed))
            }
        }
    }

    fn pop(&mut self) -> Option<usize> {
        match self {
            Pending::Fifo(q) => q.pop_front(),
            Pending::Random(items, rng) => {
                if items.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..items.len());
                    Some(items.swap_remove(i))
                }
            }
        }
    }

    fn push(&mut self, v: usize) {
        match self {
            Pending::Fifo(q) => q.push_back(v),
            Pending::Random(items, _) => items.push(v),
        }
    }
}

fn lift_to_fixpoint(game: &ParityGame, options: &SolveOptions) -> Solution {
    let n = game.len();
    let space = space_for(game);
    let mut measure = Measure::bottom(space, n);
    let mut lifts = vec![0u64; n];
    let mut evaluations = 0u64;
    let mut max_bits_used = 0usize;
    let mut trace = Vec::new();

    let mut pending = Pending::new(options.policy, n);
    let mut queued = vec![true; n];
    while let Some(v) = pending.pop() {
        queued[v] = false;
        let old = measure.get(v);
        if old.is_top() {
            continue;
        }
        evaluations += 1;
        let new = lift_vertex(game, &measure, v);
        if new == old {
            continue;
        }
        debug_assert!(new > old, "Lift_v is inflationary");
        lifts[v] += 1;
        max_bits_used = max_bits_used.max(new.used_bits());
        measure.set(v, &new);
        if options.trace {
            trace.push(LiftEvent { vertex: v, old, new });
        }
        for &u in game.predecessors(v) {
            if !queued[u] {
                queued[u] = true;
                pending.push(u);
            }
        }
    }

    let result = extract_result(game, &measure);
    let stats = LiftStats {
        normalization: Normalization::Direct,
        budget: space.budget(),
        d: space.d(),
        lifts,
        evaluations,
        max_bits_used,
        measure_bits: measure.storage_bits(),
    };
    Solution {
        result,
        measure,
        stats,
        trace,
    }
}

/// Winning regions from a fixpoint, with Even's strategy choosing the
/// lowest-indexed progressive successor.
fn extract_result(game: &ParityGame, measure: &Measure) -> SolveResult {
    let mut even_wins = BTreeSet::new();
    let mut odd_wins = BTreeSet::new();
    let mut strategy: Strategy = BTreeMap::new();
    for v in game.vertices() {
        if measure.get(v).is_top() {
            odd_wins.insert(v);
            continue;
        }
        even_wins.insert(v);
        if game.owner(v) == Player::Even {
            let w = game
                .successors(v)
                .iter()
                .copied()
                .find(|&w| is_progressive_edge(game, measure, v, w))
                .expect("a fixpoint has a progressive edge at every Even vertex");
            strategy.insert(v, w);
        }
    }
    SolveResult {
        even_wins,
        odd_wins,
        even_strategy: Some(strategy),
        odd_strategy: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player::{Even, Odd};

    fn direct() -> SolveOptions {
        SolveOptions {
            normalize: false,
            ..SolveOptions::default()
        }
    }

    #[test]
    fn even_self_loop_stays_at_bottom() {
        for owner in [Even, Odd] {
            let g = ParityGame::from_triples([(2, owner, vec![0])]).unwrap();
            let s = solve_with(&g, &direct());
            assert_eq!(s.result.even_wins, [0].into());
            assert_eq!(s.measure.get(0), ExtendedCounter::empty());
        }
    }

    #[test]
    fn odd_self_loop_reaches_top() {
        let g = ParityGame::from_triples([(1, Even, vec![0])]).unwrap();
        let s = solve_with(&g, &direct());
        assert_eq!(s.result.odd_wins, [0].into());
        assert!(s.measure.get(0).is_top());
        // The default options dualize this game; the answer must agree.
        assert!(solve(&g).same_partition(&s.result));
    }

    #[test]
    fn escape_to_even_loop() {
        let g = ParityGame::from_triples([(1, Even, vec![0, 1]), (2, Even, vec![1])]).unwrap();
        let s = solve_with(&g, &direct());
        assert_eq!(s.result.even_wins, [0, 1].into());
        assert_eq!(s.result.even_strategy.unwrap()[&0], 1);
    }

    #[test]
    fn lift_vertex_min_and_max() {
        // v0 (priority 3) has successors v1 = (e) and v2 = T in g = 1, d = 4.
        let space = CounterSpace::new(1, 4).unwrap();
        for (owner, expected) in [(Even, "(1)"), (Odd, "T")] {
            let g = ParityGame::from_triples([
                (3, owner, vec![1, 2]),
                (2, Even, vec![1]),
                (2, Even, vec![2]),
            ])
            .unwrap();
            let m = Measure::from_values(
                space,
                &[ExtendedCounter::empty(), "(e)".parse().unwrap(), ExtendedCounter::Top],
            );
            assert_eq!(lift_vertex(&g, &m, 0), expected.parse().unwrap());
        }
    }

    #[test]
    fn lift_vertex_at_fixpoint_is_identity() {
        let g = ParityGame::from_triples([(1, Even, vec![0, 1]), (2, Odd, vec![1])]).unwrap();
        let s = solve_with(&g, &direct());
        for v in g.vertices() {
            assert_eq!(lift_vertex(&g, &s.measure, v), s.measure.get(v));
        }
        assert!(check_progress_measure(&g, &s.measure));
    }

    #[test]
    fn progress_measure_checks() {
        let g = ParityGame::from_triples([(1, Even, vec![0])]).unwrap();
        let space = space_for(&g);
        assert!(!check_progress_measure(&g, &Measure::bottom(space, 1)));
        assert!(check_progress_measure(&g, &Measure::from_values(space, &[ExtendedCounter::Top])));
    }

    #[test]
    fn trace_records_each_change() {
        let g = ParityGame::from_triples([(1, Odd, vec![1]), (1, Odd, vec![0]), (2, Even, vec![2])])
            .unwrap();
        let s = solve_with(&g, &SolveOptions { trace: true, ..direct() });
        assert_eq!(s.trace.len() as u64, s.stats.total_lifts());
        assert!(s.trace.iter().all(|e| e.new > e.old));
        assert_eq!(s.result.odd_wins, [0, 1].into());
    }

    #[test]
    fn priority_zero_blocks_dualization() {
        let g = ParityGame::from_triples([(1, Even, vec![0]), (1, Even, vec![1]), (0, Odd, vec![2])])
            .unwrap();
        let s = solve_with(&g, &SolveOptions::default());
        assert_eq!(s.stats.normalization, Normalization::SkippedPriorityZero);
        assert_eq!(s.result.even_wins, [2].into());
    }
}
