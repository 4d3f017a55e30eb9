use num_bigint::BigUint;

use super::bitstring::{strings_up_to, BitString};
use super::counter::MultiCounter;
use super::CounterError;
use crate::game::Priority;

/// Largest `g` and `d/2` accepted by [`enumerate`].
pub const ENUMERATION_LIMIT: usize = 16;

/// Every multi-counter with at most `d/2` components and at most `g` bits,
/// in ascending order.
///
/// The walk is a preorder over the tree of tuples: a tuple is emitted
/// before its extensions, and extensions are visited in string order, which
/// is exactly the lexicographic order with shorter prefixes first.
pub fn enumerate(g: usize, d: Priority) -> Result<Vec<MultiCounter>, CounterError> {
    if d % 2 == 1 {
        return Err(CounterError::OddBound(d));
    }
    let h = (d / 2) as usize;
    if g > ENUMERATION_LIMIT || h > ENUMERATION_LIMIT {
        return Err(CounterError::TooLarge { g, d });
    }
    let strings: Vec<Vec<BitString>> = (0..=g).map(strings_up_to).collect();
    let mut out = Vec::new();
    let mut current = MultiCounter::empty();
    walk(&mut current, g, h, &strings, &mut out);
    Ok(out)
}

fn walk(
    current: &mut MultiCounter,
    remaining: usize,
    h: usize,
    strings: &[Vec<BitString>],
    out: &mut Vec<MultiCounter>,
) {
    out.push(current.clone());
    if current.len() == h {
        return;
    }
    for &s in &strings[remaining] {
        current.push(s);
        walk(current, remaining - s.len(), h, strings, out);
        current.pop();
    }
}

/// `|S|` for budget `g` and bound `d`, by counting rather than listing.
///
/// `f(i, r)`, the number of `i`-tuples with at most `r` bits, satisfies
/// `f(0, r) = 1` and `f(i, r) = Σ_{l ≤ r} 2^l · f(i − 1, r − l)`.
pub fn count_exact(g: usize, d: Priority) -> BigUint {
    let h = (d / 2) as usize;
    let mut row: Vec<BigUint> = vec![BigUint::from(1u32); g + 1];
    let mut total = row[g].clone();
    for _ in 0..h {
        let next: Vec<BigUint> = (0..=g)
            .map(|r| {
                (0..=r)
                    .map(|l| (BigUint::from(1u32) << l) * &row[r - l])
                    .sum()
            })
            .collect();
        row = next;
        total += &row[g];
    }
    total
}

/// `C(n, k)` in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `2^g · C(g + d/2 + 1, d/2)`, an upper bound on `|S|`.
pub fn count_bound(g: usize, d: Priority) -> BigUint {
    let h = (d / 2) as u64;
    (BigUint::from(1u32) << g) * binomial(g as u64 + h + 1, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(v: &[MultiCounter]) -> Vec<String> {
        v.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn small_spaces() {
        assert_eq!(render(&enumerate(1, 2).unwrap()), ["()", "(0)", "(e)", "(1)"]);
        assert_eq!(enumerate(1, 4).unwrap().len(), 9);
        assert_eq!(enumerate(0, 0).unwrap().len(), 1);
        assert_eq!(render(&enumerate(0, 4).unwrap()), ["()", "(e)", "(e,e)"]);
    }

    #[test]
    fn guard() {
        assert_eq!(enumerate(17, 2), Err(CounterError::TooLarge { g: 17, d: 2 }));
        assert_eq!(enumerate(1, 34), Err(CounterError::TooLarge { g: 1, d: 34 }));
        assert_eq!(enumerate(1, 3), Err(CounterError::OddBound(3)));
    }

    #[test]
    fn bounds_and_identity() {
        assert_eq!(count_bound(1, 4), BigUint::from(12u32));
        assert_eq!(count_bound(0, 0), BigUint::from(1u32));
        let lhs: BigUint = (0..=2).map(|i| binomial(1 + i, i)).sum();
        assert_eq!(lhs, BigUint::from(6u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(count_exact(1, 4), BigUint::from(9u32));
        assert_eq!(count_exact(3, 6), BigUint::from(176u32));
    }
}
