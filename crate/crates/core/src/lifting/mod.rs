//! The succinct progress-measure lifting algorithm.
//!
//! Starting from the all-`()` measure, vertices are lifted until
//! `μ = Lift_v(μ)` for every `v`. Even wins exactly the vertices whose value
//! stays below `⊤`.

mod lift;
mod measure;
mod solver;

pub use lift::{lift_value, successor_above};
pub use measure::Measure;
pub use solver::{
    check_progress_measure, is_progressive_edge, lift_edge, lift_vertex, solve, solve_with,
    space_for, LiftEvent, LiftStats, Normalization, Solution, SolveOptions, WorkListPolicy,
};

#[cfg(test)]
mod brute_force {
    use super::*;
    use crate::counters::{enumerate, CounterSpace, ExtendedCounter, SentinelMode};

    /// The least candidate `≥ current` in the listed space making the edge
    /// progressive, by scanning the whole space.
    fn scan(
        space: &CounterSpace,
        all: &[ExtendedCounter],
        current: &ExtendedCounter,
        target: &ExtendedCounter,
        p: u32,
    ) -> ExtendedCounter {
        all.iter()
            .filter(|s| *s >= current)
            .find(|s| space.is_progressive_pair(s, target, p, SentinelMode::Lifting))
            .cloned()
            .unwrap_or(ExtendedCounter::Top)
    }

    #[test]
    fn lift_value_matches_scan() {
        for (g, d) in [(0, 2), (0, 4), (1, 2), (1, 4), (2, 4), (2, 6), (3, 4), (3, 6)] {
            let space = CounterSpace::new(g, d).unwrap();
            let mut all: Vec<ExtendedCounter> =
                enumerate(g, d).unwrap().into_iter().map(Into::into).collect();
            all.push(ExtendedCounter::Top);
            for p in 1..=d {
                for cur in &all {
                    for tgt in &all {
                        assert_eq!(
                            lift_value(&space, cur, tgt, p),
                            scan(&space, &all, cur, tgt, p),
                            "g={g} d={d} p={p} cur={cur} tgt={tgt}"
                        );
                    }
                }
            }
        }
    }
}
