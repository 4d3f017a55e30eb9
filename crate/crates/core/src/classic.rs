//! Integer-tuple progress measures, the least such measure, and trimming.
//!
//! A value is either `⊤` or a tuple `(r_{d−1}, r_{d−3}, …)` whose component
//! for odd priority `q` is at most the number of vertices of priority `q`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::game::{ParityGame, Player, Priority};
use crate::tree::OrderedTree;

/// A classic measure value. Tuples compare lexicographically, a proper
/// prefix being strictly smaller, and all lie below `Top`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntegerMeasureTuple {
    Tuple(Vec<u64>),
    Top,
}

impl IntegerMeasureTuple {
    pub fn is_top(&self) -> bool {
        matches!(self, IntegerMeasureTuple::Top)
    }

    pub fn as_tuple(&self) -> Option<&[u64]> {
        match self {
            IntegerMeasureTuple::Tuple(t) => Some(t),
            IntegerMeasureTuple::Top => None,
        }
    }

    /// `x|_p` for bound `d`: keeps the components of odd priorities `≥ p`.
    /// Tuples already shorter than that are unchanged.
    pub fn truncate(&self, p: Priority, d: Priority) -> IntegerMeasureTuple {
        match self {
            IntegerMeasureTuple::Tuple(t) => {
                let kept = if p > d { 0 } else { ((d + 1 - p) / 2) as usize };
                IntegerMeasureTuple::Tuple(t[..kept.min(t.len())].to_vec())
            }
            IntegerMeasureTuple::Top => IntegerMeasureTuple::Top,
        }
    }
}

impl fmt::Display for IntegerMeasureTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerMeasureTuple::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            IntegerMeasureTuple::Top => write!(f, "T"),
        }
    }
}

/// Component bounds for `game`: entry `j` counts the vertices of priority
/// `d − 1 − 2j`.
pub fn component_bounds(game: &ParityGame) -> Vec<u64> {
    let d = game.d();
    (0..d / 2).map(|j| game.priority_count(d - 1 - 2 * j) as u64).collect()
}

/// The least full-length value whose `p`-truncation is `≥ target|_p`,
/// strictly when `p` is odd.
fn prog(target: &IntegerMeasureTuple, p: Priority, d: Priority, bounds: &[u64]) -> IntegerMeasureTuple {
    let IntegerMeasureTuple::Tuple(t) = target else {
        return IntegerMeasureTuple::Top;
    };
    let h = bounds.len();
    let kept = if p > d { 0 } else { ((d + 1 - p) / 2) as usize }.min(h);
    let mut x = t[..kept].to_vec();
    if p % 2 == 1 {
        let mut i = kept;
        loop {
            if i == 0 {
                return IntegerMeasureTuple::Top;
            }
            i -= 1;
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
    x.resize(h, 0);
    IntegerMeasureTuple::Tuple(x)
}

/// The least classic progress measure and Even's winning region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicSolution {
    pub measure: Vec<IntegerMeasureTuple>,
    pub even_wins: BTreeSet<usize>,
}

/// Computes the least progress measure by lifting from all zeros.
pub fn classic_solve(game: &ParityGame) -> ClassicSolution {
    let d = game.d();
    let bounds = component_bounds(game);
    let n = game.len();
    let mut measure = vec![IntegerMeasureTuple::Tuple(vec![0; bounds.len()]); n];
    let mut queue: VecDeque<usize> = game.vertices().collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if measure[v].is_top() {
            continue;
        }
        let p = game.priority(v);
        let options = game.successors(v).iter().map(|&w| prog(&measure[w], p, d, &bounds));
        let best = match game.owner(v) {
            Player::Even => options.min(),
            Player::Odd => options.max(),
        }
        .expect("every vertex has a successor");
        if best > measure[v] {
            measure[v] = best;
            for &u in game.predecessors(v) {
                if !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let even_wins = game.vertices().filter(|&v| !measure[v].is_top()).collect();
    ClassicSolution { measure, even_wins }
}

/// `μ↓(v)`: the longest prefix of `μ(v)` ending in a nonzero component.
pub fn trim(measure: &[IntegerMeasureTuple]) -> Vec<IntegerMeasureTuple> {
    measure
        .iter()
        .map(|x| match x {
            IntegerMeasureTuple::Tuple(t) => {
                let keep = t.iter().rposition(|&r| r != 0).map_or(0, |i| i + 1);
                IntegerMeasureTuple::Tuple(t[..keep].to_vec())
            }
            IntegerMeasureTuple::Top => IntegerMeasureTuple::Top,
        })
        .collect()
}

/// `μ↑(v)`: `μ(v)` padded with zeros to length `d/2`.
pub fn untrim(measure: &[IntegerMeasureTuple], d: Priority) -> Vec<IntegerMeasureTuple> {
    let h = (d / 2) as usize;
    measure
        .iter()
        .map(|x| match x {
            IntegerMeasureTuple::Tuple(t) => {
                let mut t = t.clone();
                t.resize(h.max(t.len()), 0);
                IntegerMeasureTuple::Tuple(t)
            }
            IntegerMeasureTuple::Top => IntegerMeasureTuple::Top,
        })
        .collect()
}

/// Whether the edge `(v, w)` is progressive under `measure`, comparing
/// tuples of any length with the prefix rule.
pub fn is_progressive_classic(game: &ParityGame, measure: &[IntegerMeasureTuple], v: usize, w: usize) -> bool {
    let p = game.priority(v);
    let d = game.d();
    let (a, b) = (measure[v].truncate(p, d), measure[w].truncate(p, d));
    if p % 2 == 0 {
        a >= b
    } else {
        a > b || (a.is_top() && b.is_top())
    }
}

/// Whether every Even vertex has a progressive edge and every edge of every
/// Odd vertex is progressive. `⊤`-labelled vertices satisfy this trivially
/// against `⊤` successors.
pub fn is_progress_measure_classic(game: &ParityGame, measure: &[IntegerMeasureTuple]) -> bool {
    game.vertices().all(|v| {
        let mut edges = game.successors(v).iter();
        match game.owner(v) {
            Player::Even => edges.any(|&w| is_progressive_classic(game, measure, v, w)),
            Player::Odd => edges.all(|&w| is_progressive_classic(game, measure, v, w)),
        }
    })
}

/// The ordered tree formed by the non-`⊤` values of `trimmed`, or `None`
/// when every value is `⊤`.
pub fn image_tree(trimmed: &[IntegerMeasureTuple]) -> Option<OrderedTree<u64>> {
    OrderedTree::from_paths(trimmed.iter().filter_map(|x| x.as_tuple().map(<[u64]>::to_vec))).ok()
}

/// The number of leaves of the image tree of the trimmed least progress
/// measure; zero when Odd wins everywhere.
pub fn leaf_count_of_trimmed(game: &ParityGame) -> usize {
    let solution = classic_solve(game);
    image_tree(&trim(&solution.measure)).map_or(0, |t| t.leaf_count())
}
