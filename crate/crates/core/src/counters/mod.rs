//! Bounded adaptive multi-counters.
//!
//! A `g`-bounded adaptive `i`-counter is an `i`-tuple of binary strings of
//! total length at most `g`. For a game with priority bound `d` the
//! measure space is the union of these over `0 ≤ i ≤ d/2`, ordered
//! lexicographically with [`BitString`]'s order on each component.

mod bitstring;
mod counter;
mod enumerate;

pub use bitstring::{compare_strings, strings_up_to, BitString, MAX_BITS};
pub use counter::{compare_counters, Components, ExtendedCounter, MultiCounter};
pub use enumerate::{binomial, count_bound, count_exact, enumerate, ENUMERATION_LIMIT};

use crate::game::Priority;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CounterError {
    #[error("enumeration of S(g={g}, d={d}) exceeds the desk-scale guard (g ≤ 16, d/2 ≤ 16)")]
    TooLarge { g: usize, d: Priority },
    #[error("bit budget {0} exceeds the supported maximum of {MAX_BITS}")]
    BudgetTooLarge(usize),
    #[error("priority bound {0} is odd")]
    OddBound(Priority),
    #[error("{0}")]
    Syntax(String),
}

/// `⌈lg x⌉`, with `⌈lg 0⌉ = ⌈lg 1⌉ = 0`.
pub fn ceil_lg(x: u64) -> usize {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as usize
    }
}

/// Which sentinel may satisfy a strict inequality by equality: `⊤` when
/// lifting measures, `⊥` in the separating automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SentinelMode {
    Lifting,
    Separator,
}

/// The counter context: bit budget `g` and even priority bound `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterSpace {
    budget: usize,
    d: Priority,
}

impl CounterSpace {
    pub fn new(budget: usize, d: Priority) -> Result<Self, CounterError> {
        if budget > MAX_BITS {
            return Err(CounterError::BudgetTooLarge(budget));
        }
        if d % 2 == 1 {
            return Err(CounterError::OddBound(d));
        }
        Ok(CounterSpace { budget, d })
    }

    /// The space for `eta` odd vertices: budget `⌈lg η⌉`.
    pub fn for_eta(eta: usize, d: Priority) -> Self {
        Self::new(ceil_lg(eta as u64), d).expect("⌈lg η⌉ always fits")
    }

    /// `g`, the bit budget.
    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn d(&self) -> Priority {
        self.d
    }

    /// `d/2`, the maximal number of components.
    pub fn height(&self) -> usize {
        (self.d / 2) as usize
    }

    /// How many components survive truncation at `p`: those for odd
    /// priorities `≥ p`.
    pub fn kept(&self, p: Priority) -> usize {
        if p > self.d {
            0
        } else {
            (((self.d + 1 - p) / 2) as usize).min(self.height())
        }
    }

    pub fn contains(&self, c: &MultiCounter) -> bool {
        c.len() <= self.height() && c.used_bits() <= self.budget
    }

    pub fn contains_extended(&self, c: &ExtendedCounter) -> bool {
        c.as_finite().is_none_or(|c| self.contains(c))
    }

    /// `c|_p`: drops the components of odd priorities below `p`.
    pub fn truncate_counter(&self, c: &MultiCounter, p: Priority) -> MultiCounter {
        c.prefix(self.kept(p))
    }

    /// `c|_p`, with `⊤|_p = ⊤` and `⊥|_p = ⊥`.
    pub fn truncate(&self, c: &ExtendedCounter, p: Priority) -> ExtendedCounter {
        match c {
            ExtendedCounter::Finite(c) => ExtendedCounter::Finite(self.truncate_counter(c, p)),
            sentinel => sentinel.clone(),
        }
    }

    /// `σ|_p ≥ τ|_p`, strictly when `p` is odd unless `σ` and `τ` are both
    /// the sentinel named by `mode`.
    pub fn is_progressive_pair(
        &self,
        sigma: &ExtendedCounter,
        tau: &ExtendedCounter,
        p: Priority,
        mode: SentinelMode,
    ) -> bool {
        let (s, t) = (self.truncate(sigma, p), self.truncate(tau, p));
        if p % 2 == 0 {
            return s >= t;
        }
        let both_sentinel = match mode {
            SentinelMode::Lifting => sigma.is_top() && tau.is_top(),
            SentinelMode::Separator => sigma.is_bottom() && tau.is_bottom(),
        };
        s > t || both_sentinel
    }

    /// The greatest element, `(1^g, ε, …, ε)` of length `d/2`.
    pub fn maximum(&self) -> MultiCounter {
        let h = self.height();
        if h == 0 {
            return MultiCounter::empty();
        }
        let mut c = MultiCounter::from_components([BitString::ones(self.budget)]);
        for _ in 1..h {
            c.push(BitString::EMPTY);
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: &str) -> ExtendedCounter {
        x.parse().unwrap()
    }

    #[test]
    fn ceil_lg_values() {
        let got: Vec<_> = [0, 1, 2, 3, 4, 5, 8, 9].iter().map(|&x| ceil_lg(x)).collect();
        assert_eq!(got, [0, 0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn truncation_matches_integer_tuple_examples() {
        let space = CounterSpace::new(3, 8).unwrap();
        assert_eq!(space.kept(8), 0);
        assert_eq!(space.kept(5), 2);
        assert_eq!(space.kept(2), 3);
        assert_eq!(space.kept(1), 4);
        let x = c("(0,1,e,e)");
        assert_eq!(space.truncate(&x, 5), c("(0,1)"));
        assert_eq!(space.truncate(&ExtendedCounter::Top, 3), ExtendedCounter::Top);
        assert_eq!(space.truncate(&ExtendedCounter::Bottom, 3), ExtendedCounter::Bottom);
        let one = CounterSpace::new(1, 2).unwrap();
        assert_eq!(one.truncate(&c("(1)"), 2), c("()"));
    }

    #[test]
    fn progressive_pairs() {
        let space = CounterSpace::new(1, 4).unwrap();
        assert!(space.is_progressive_pair(&c("(1)"), &c("(e)"), 3, SentinelMode::Lifting));
        let top = ExtendedCounter::Top;
        assert!(space.is_progressive_pair(&top, &top, 3, SentinelMode::Lifting));
        assert!(!space.is_progressive_pair(&top, &top, 3, SentinelMode::Separator));
        assert!(!space.is_progressive_pair(&c("(e)"), &c("(e)"), 3, SentinelMode::Lifting));
        assert!(space.is_progressive_pair(&c("(e)"), &c("(e)"), 2, SentinelMode::Lifting));
        let bot = ExtendedCounter::Bottom;
        assert!(space.is_progressive_pair(&bot, &bot, 1, SentinelMode::Separator));
        assert!(space.is_progressive_pair(&c("()"), &bot, 1, SentinelMode::Separator));
    }

    #[test]
    fn membership() {
        let space = CounterSpace::new(3, 8).unwrap();
        let inside: MultiCounter = "(0,e,1,0)".parse().unwrap();
        let too_long: MultiCounter = "(10,e,01,e)".parse().unwrap();
        let too_many: MultiCounter = "(0,1,e,e,0)".parse().unwrap();
        assert!(space.contains(&inside));
        assert!(space.contains(&"(e,1,e,0)".parse().unwrap()));
        assert!(!space.contains(&too_long));
        assert!(!space.contains(&too_many));
    }

    #[test]
    fn maximum_element() {
        assert_eq!(CounterSpace::new(2, 6).unwrap().maximum().to_string(), "(11,e,e)");
        assert_eq!(CounterSpace::new(0, 0).unwrap().maximum(), MultiCounter::empty());
    }
}
