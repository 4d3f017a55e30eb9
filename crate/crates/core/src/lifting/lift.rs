//! The single-edge lift on counter values.

use crate::counters::{BitString, CounterSpace, ExtendedCounter, MultiCounter};
use crate::game::Priority;

/// `lift` on values: the least `σ ≥ current` such that an edge from a vertex
/// of priority `p` labelled `σ` to a distinct vertex labelled `target` is
/// progressive.
///
/// Neither argument may be `⊥`.
pub fn lift_value(
    space: &CounterSpace,
    current: &ExtendedCounter,
    target: &ExtendedCounter,
    p: Priority,
) -> ExtendedCounter {
    let (cur, tgt) = match (current, target) {
        (ExtendedCounter::Finite(c), ExtendedCounter::Finite(t)) => (c, t),
        (ExtendedCounter::Bottom, _) | (_, ExtendedCounter::Bottom) => {
            panic!("⊥ is not a measure value")
        }
        _ => return ExtendedCounter::Top,
    };
    let kept = space.kept(p);
    let bound = tgt.prefix(kept);
    if p % 2 == 0 {
        // `bound` is its own truncation, so it is the least value reaching it.
        return ExtendedCounter::Finite(cur.max(&bound).clone());
    }
    if cur.prefix(kept) > bound {
        return current.clone();
    }
    successor_above(space, tgt, p)
}

/// The least `σ` with `σ|_p > target|_p`, for odd `p`.
///
/// Writing `target = (s_{d−1}, …, s_k)`:
/// 1. `k > p`: append one component of zeros filling the budget;
/// 2. bits left over in `target|_p`: replace `s_p` by `s_p 1 0…0`;
/// 3. budget full, `s_j = s' 0 1…1` the last nonempty kept component:
///    cut back to `(…, s_{j+2}, s')`;
/// 4. budget full, `s_j = 1…1` with `j < d − 1`: cut back to
///    `(…, s_{j+4}, s_{j+2} 1 0…0)`, reusing the `|s_j|` freed bits;
/// 5. otherwise `⊤`.
pub fn successor_above(space: &CounterSpace, target: &MultiCounter, p: Priority) -> ExtendedCounter {
    debug_assert!(p % 2 == 1);
    let g = space.budget();
    let kept = space.kept(p);
    if target.len() < kept {
        let fill = BitString::zeros(g - target.used_bits());
        return target.clone().with_pushed(fill).into();
    }
    let y = target.prefix(kept);
    let used = y.used_bits();
    if used < g {
        let last = y.last().expect("odd p keeps at least one component");
        let next = last.push(true).concat(BitString::zeros(g - used - 1));
        return y.with_last(next).into();
    }
    let Some(j) = y.component_lengths().iter().rposition(|&l| l > 0) else {
        return ExtendedCounter::Top;
    };
    let s = y.component(j);
    let ones = s.trailing_ones();
    if ones < s.len() {
        // s = s' 0 1^ones
        let shorter = s.drop_last(ones + 1);
        return y.prefix(j).with_pushed(shorter).into();
    }
    if j == 0 {
        return ExtendedCounter::Top;
    }
    let prev = y.component(j - 1);
    let next = prev.push(true).concat(BitString::zeros(ones - 1));
    y.prefix(j - 1).with_pushed(next).into()
}
