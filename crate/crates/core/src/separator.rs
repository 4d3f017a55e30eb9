//! The deterministic separating safety automaton over multi-counters and
//! the safety game it forms with a parity game.
//!
//! States are the multi-counters of the game's space plus `⊥`. Reading a
//! vertex of priority `p` moves from `σ` to the greatest `τ` such that
//! `(σ, τ)` is progressive with respect to `p`. The automaton accepts every
//! word in which all cycles are even and rejects every word whose highest
//! priority seen infinitely often is odd.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::RwLock;

use thiserror::Error;

use crate::counters::{BitString, CounterSpace, ExtendedCounter, MultiCounter};
use crate::game::{ParityGame, Player, Priority, SolveResult};

/// Default cap on the number of product states.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("the product exceeds {limit} states")]
    StateLimit { limit: usize },
    #[error("a lasso needs a nonempty loop")]
    EmptyLoop,
    #[error("letter {letter} is not a vertex of the alphabet (size {size})")]
    UnknownLetter { letter: usize, size: usize },
}

/// The greatest string `t < s` of length at most `max_len`, if any.
fn predecessor(s: BitString, max_len: usize) -> Option<BitString> {
    if s.len() < max_len {
        return Some(s.push(false).concat(BitString::ones(max_len - s.len() - 1)));
    }
    if s.is_all_zeros() {
        return None;
    }
    // s = s' 1 0^k
    Some(s.drop_last(s.trailing_zeros() + 1))
}

/// Pads `c` to `h` components with the largest suffix its spare bits allow.
fn fill_maximally(mut c: MultiCounter, g: usize, h: usize) -> MultiCounter {
    if c.len() < h {
        c.push(BitString::ones(g - c.used_bits()));
    }
    while c.len() < h {
        c.push(BitString::EMPTY);
    }
    c
}

/// The greatest `τ ∈ S ∪ {⊥}` such that `(σ, τ)` is progressive with
/// respect to `p`.
pub fn greatest_successor(space: &CounterSpace, sigma: &ExtendedCounter, p: Priority) -> ExtendedCounter {
    let sigma = match sigma {
        ExtendedCounter::Finite(c) => c,
        ExtendedCounter::Bottom => return ExtendedCounter::Bottom,
        ExtendedCounter::Top => panic!("⊤ is not a separator state"),
    };
    let (g, h) = (space.budget(), space.height());
    let kept = space.kept(p);
    let x = sigma.prefix(kept);
    if p % 2 == 0 {
        if x.len() < kept {
            return sigma.clone().into();
        }
        return fill_maximally(x, g, h).into();
    }
    let Some(last) = x.last() else {
        return ExtendedCounter::Bottom;
    };
    let m = x.len();
    let head = x.prefix(m - 1);
    match predecessor(last, g - head.used_bits()) {
        Some(t) => fill_maximally(head.with_pushed(t), g, h).into(),
        None => head.into(),
    }
}

/// The automaton for an alphabet of vertices with priorities.
pub struct SeparatorAutomaton {
    space: CounterSpace,
    priorities: Vec<Priority>,
    memo: RwLock<HashMap<(ExtendedCounter, Priority), ExtendedCounter>>,
}

impl SeparatorAutomaton {
    pub fn new(space: CounterSpace, priorities: Vec<Priority>) -> Self {
        SeparatorAutomaton {
            space,
            priorities,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn space(&self) -> &CounterSpace {
        &self.space
    }

    pub fn alphabet_size(&self) -> usize {
        self.priorities.len()
    }

    pub fn priority(&self, letter: usize) -> Priority {
        self.priorities[letter]
    }

    /// `(1^g, ε, …, ε)`.
    pub fn initial(&self) -> ExtendedCounter {
        self.space.maximum().into()
    }

    /// The state after reading `letter` from `state`.
    pub fn transition(&self, state: &ExtendedCounter, letter: usize) -> ExtendedCounter {
        let key = (state.clone(), self.priorities[letter]);
        if let Some(next) = self.memo.read().expect("memo lock").get(&key) {
            return next.clone();
        }
        let next = greatest_successor(&self.space, state, key.1);
        self.memo.write().expect("memo lock").entry(key).or_insert(next).clone()
    }

    /// Number of memoized transitions.
    pub fn memo_size(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Runs on `prefix · loop^ω`.
    pub fn run_on_lasso(&self, prefix: &[usize], cycle: &[usize]) -> Result<LassoOutcome, SeparatorError> {
        if cycle.is_empty() {
            return Err(SeparatorError::EmptyLoop);
        }
        let size = self.alphabet_size();
        if let Some(&letter) = prefix.iter().chain(cycle).find(|&&l| l >= size) {
            return Err(SeparatorError::UnknownLetter { letter, size });
        }
        let mut state = self.initial();
        let mut seen_states = BTreeSet::from([state.clone()]);
        let mut step = 0;
        for &letter in prefix {
            state = self.transition(&state, letter);
            step += 1;
            if state.is_bottom() {
                return Ok(LassoOutcome::Reject { step });
            }
            seen_states.insert(state.clone());
        }
        let mut loop_starts = BTreeSet::new();
        while loop_starts.insert(state.clone()) {
            for &letter in cycle {
                state = self.transition(&state, letter);
                step += 1;
                if state.is_bottom() {
                    return Ok(LassoOutcome::Reject { step });
                }
                seen_states.insert(state.clone());
            }
        }
        Ok(LassoOutcome::Accept { states: seen_states.len() })
    }
}

/// The automaton over the vertices of `game`, with budget `⌈lg η⌉`.
pub fn build_separator(game: &ParityGame) -> SeparatorAutomaton {
    let space = CounterSpace::for_eta(game.eta(), game.d());
    SeparatorAutomaton::new(space, game.vertices().map(|v| game.priority(v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LassoOutcome {
    /// The run is safe; `states` distinct states were visited.
    Accept { states: usize },
    /// `⊥` was entered after reading `step` letters.
    Reject { step: usize },
}

impl LassoOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self, LassoOutcome::Accept { .. })
    }
}

/// Whether every cycle of `prefix · loop^ω` is even, a cycle being an infix
/// whose first and last letters agree.
pub fn lasso_all_cycles_even(priorities: &[Priority], prefix: &[usize], cycle: &[usize]) -> bool {
    // Every infix of the infinite word starts, up to a shift by whole
    // loops, before the end of the first loop copy, and an infix spanning a
    // whole loop has the same priorities as one ending within the next two.
    let word: Vec<usize> = prefix.iter().chain(cycle).chain(cycle).chain(cycle).copied().collect();
    let starts = prefix.len() + cycle.len();
    (0..starts).all(|i| {
        let mut top = priorities[word[i]];
        (i + 1..(i + 2 * cycle.len() + 1).min(word.len())).all(|j| {
            top = top.max(priorities[word[j]]);
            word[j] != word[i] || top % 2 == 0
        })
    })
}

/// The synchronous product of a game with its separator, as a safety game.
#[derive(Clone, Debug)]
pub struct SafetyGame {
    /// `(vertex, state)` per product vertex; `⊥` states are merged into a
    /// single unsafe sink at index 0.
    pub states: Vec<(usize, ExtendedCounter)>,
    pub owners: Vec<Player>,
    pub successors: Vec<Vec<usize>>,
    /// Product index of `(v, initial)` for each game vertex `v`.
    pub initial: Vec<usize>,
}

impl SafetyGame {
    pub const UNSAFE: usize = 0;

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The vertices from which Odd can force a visit to the unsafe sink.
    pub fn odd_attractor(&self) -> Vec<bool> {
        let k = self.len();
        let mut preds = vec![Vec::new(); k];
        for (u, succ) in self.successors.iter().enumerate() {
            for &w in succ {
                preds[w].push(u);
            }
        }
        let mut remaining: Vec<usize> = self.successors.iter().map(Vec::len).collect();
        let mut attr = vec![false; k];
        attr[Self::UNSAFE] = true;
        let mut queue = VecDeque::from([Self::UNSAFE]);
        while let Some(w) = queue.pop_front() {
            for &u in &preds[w] {
                if attr[u] {
                    continue;
                }
                remaining[u] -= 1;
                if self.owners[u] == Player::Odd || remaining[u] == 0 {
                    attr[u] = true;
                    queue.push_back(u);
                }
            }
        }
        attr
    }
}

/// Builds the product reachable from every `(v, initial)`. On the edge
/// `(v, w)` the automaton reads `v`: `(v, σ)` moves to `(w, δ(σ, π(v)))`.
pub fn build_product(
    game: &ParityGame,
    automaton: &SeparatorAutomaton,
    limit: usize,
) -> Result<SafetyGame, SeparatorError> {
    let mut index: HashMap<(usize, ExtendedCounter), usize> = HashMap::new();
    let mut product = SafetyGame {
        states: vec![(usize::MAX, ExtendedCounter::Bottom)],
        owners: vec![Player::Odd],
        successors: vec![vec![SafetyGame::UNSAFE]],
        initial: Vec::new(),
    };
    let mut queue = VecDeque::new();
    let mut intern = |key: (usize, ExtendedCounter), product: &mut SafetyGame, queue: &mut VecDeque<usize>| {
        if key.1.is_bottom() {
            return Ok(SafetyGame::UNSAFE);
        }
        if let Some(&i) = index.get(&key) {
            return Ok(i);
        }
        if product.len() >= limit {
            return Err(SeparatorError::StateLimit { limit });
        }
        let i = product.len();
        index.insert(key.clone(), i);
        product.owners.push(game.owner(key.0));
        product.states.push(key);
        product.successors.push(Vec::new());
        queue.push_back(i);
        Ok(i)
    };
    let init = automaton.initial();
    for v in game.vertices() {
        let i = intern((v, init.clone()), &mut product, &mut queue)?;
        product.initial.push(i);
    }
    while let Some(i) = queue.pop_front() {
        let (v, sigma) = product.states[i].clone();
        let next = automaton.transition(&sigma, v);
        let mut succ = Vec::with_capacity(game.successors(v).len());
        for &w in game.successors(v) {
            succ.push(intern((w, next.clone()), &mut product, &mut queue)?);
        }
        succ.sort_unstable();
        succ.dedup();
        product.successors[i] = succ;
    }
    Ok(product)
}

/// Winning regions from the product safety game, with the product size.
#[derive(Clone, Debug)]
pub struct ProductSolution {
    pub result: SolveResult,
    pub product_states: usize,
    pub automaton_space: CounterSpace,
}

/// Solves `game` through the safety game formed with its separator. Even
/// wins `v` when `(v, initial)` lies outside Odd's attractor to `⊥`.
/// Strategies are not projected back to the game.
pub fn product_and_solve(game: &ParityGame, limit: usize) -> Result<ProductSolution, SeparatorError> {
    let automaton = build_separator(game);
    let product = build_product(game, &automaton, limit)?;
    let attr = product.odd_attractor();
    let mut result = SolveResult::default();
    for (v, &i) in product.initial.iter().enumerate() {
        if attr[i] {
            result.odd_wins.insert(v);
        } else {
            result.even_wins.insert(v);
        }
    }
    Ok(ProductSolution {
        result,
        product_states: product.len(),
        automaton_space: *automaton.space(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::{enumerate, SentinelMode};
    use Player::{Even, Odd};

    fn c(x: &str) -> ExtendedCounter {
        x.parse().unwrap()
    }

    /// Scans `S ∪ {⊥}` from the top for the first progressive successor.
    fn scan(space: &CounterSpace, states: &[ExtendedCounter], sigma: &ExtendedCounter, p: Priority) -> ExtendedCounter {
        states
            .iter()
            .rev()
            .find(|t| space.is_progressive_pair(sigma, t, p, SentinelMode::Separator))
            .cloned()
            .expect("⊥ is always below")
    }

    #[test]
    fn matches_brute_force() {
        for g in 0..=3 {
            for d in [0, 2, 4, 6] {
                let space = CounterSpace::new(g, d).unwrap();
                let mut states = vec![ExtendedCounter::Bottom];
                states.extend(enumerate(g, d).unwrap().into_iter().map(ExtendedCounter::from));
                for sigma in &states {
                    for p in 1..=d.max(1) {
                        assert_eq!(
                            greatest_successor(&space, sigma, p),
                            scan(&space, &states, sigma, p),
                            "g={g} d={d} σ={sigma} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn underflow_chain() {
        let space = CounterSpace::new(1, 2).unwrap();
        let mut state = ExtendedCounter::from(space.maximum());
        let mut chain = vec![state.to_string()];
        while !state.is_bottom() {
            state = greatest_successor(&space, &state, 1);
            chain.push(state.to_string());
        }
        assert_eq!(chain, ["(1)", "(e)", "(0)", "()", "_"]);
    }

    #[test]
    fn even_letters_keep_or_refill() {
        let space = CounterSpace::new(2, 4).unwrap();
        assert_eq!(greatest_successor(&space, &c("(0,1)"), 2), c("(0,1)"));
        assert_eq!(greatest_successor(&space, &c("(0,e)"), 2), c("(0,1)"));
        assert_eq!(greatest_successor(&space, &c("(0)"), 4), c("(11,e)"));
        assert_eq!(greatest_successor(&space, &c("(e)"), 2), c("(e,11)"));
        assert_eq!(greatest_successor(&space, &c("()"), 2), c("()"));
        assert!(greatest_successor(&space, &ExtendedCounter::Bottom, 2).is_bottom());
    }

    #[test]
    fn lassos() {
        let g = ParityGame::from_triples([(2, Even, vec![0])]).unwrap();
        let a = build_separator(&g);
        assert!(a.run_on_lasso(&[], &[0]).unwrap().accepted());
        let g = ParityGame::from_triples([(1, Even, vec![0])]).unwrap();
        let a = build_separator(&g);
        assert_eq!(a.run_on_lasso(&[], &[0]).unwrap(), LassoOutcome::Reject { step: 2 });
        assert_eq!(a.run_on_lasso(&[], &[]), Err(SeparatorError::EmptyLoop));
        assert!(matches!(a.run_on_lasso(&[3], &[0]), Err(SeparatorError::UnknownLetter { .. })));
    }

    #[test]
    fn lasso_cycle_check() {
        let pri = [1, 2, 3];
        assert!(lasso_all_cycles_even(&pri, &[], &[0, 1]));
        assert!(!lasso_all_cycles_even(&pri, &[], &[0]));
        assert!(!lasso_all_cycles_even(&pri, &[1, 2, 1], &[1]));
        assert!(lasso_all_cycles_even(&pri, &[2, 0], &[1]));
    }

    #[test]
    fn products() {
        let g = ParityGame::from_triples([(2, Odd, vec![0])]).unwrap();
        assert_eq!(product_and_solve(&g, DEFAULT_STATE_LIMIT).unwrap().result.even_wins, [0].into());
        let g = ParityGame::from_triples([(1, Even, vec![0])]).unwrap();
        assert_eq!(product_and_solve(&g, DEFAULT_STATE_LIMIT).unwrap().result.odd_wins, [0].into());
        let g = ParityGame::from_triples([(1, Even, vec![0, 1]), (2, Even, vec![1])]).unwrap();
        let s = product_and_solve(&g, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(s.result.even_wins, [0, 1].into());
        assert_eq!(product_and_solve(&g, 2).unwrap_err(), SeparatorError::StateLimit { limit: 2 });
    }
}
