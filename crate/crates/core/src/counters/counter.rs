use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use super::bitstring::{low_mask, BitString, MAX_BITS};
use super::CounterError;

/// A tuple of binary strings packed into one bit vector.
///
/// Component `j` (from 0) belongs to odd priority `d − 1 − 2j`. The
/// concatenation of all components is held in `payload`, first component
/// in the most significant position, and `lens` records where each one ends.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiCounter {
    payload: u64,
    used: u8,
    lens: SmallVec<[u8; 8]>,
}

impl MultiCounter {
    /// The empty tuple `()`.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_components<I: IntoIterator<Item = BitString>>(components: I) -> Self {
        let mut c = Self::empty();
        for s in components {
            c.push(s);
        }
        c
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.lens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lens.is_empty()
    }

    /// Total number of bits over all components.
    pub fn used_bits(&self) -> usize {
        self.used as usize
    }

    pub fn component_lengths(&self) -> &[u8] {
        &self.lens
    }

    pub fn components(&self) -> Components<'_> {
        Components {
            counter: self,
            index: 0,
            offset: 0,
        }
    }

    pub fn component(&self, j: usize) -> BitString {
        let offset: usize = self.lens[..j].iter().map(|&l| l as usize).sum();
        self.extract(offset, self.lens[j] as usize)
    }

    pub fn last(&self) -> Option<BitString> {
        let len = *self.lens.last()? as usize;
        Some(BitString::from_raw(self.payload, len))
    }

    fn extract(&self, offset: usize, len: usize) -> BitString {
        let shift = self.used as usize - offset - len;
        BitString::from_raw(self.payload >> shift, len)
    }

    pub fn push(&mut self, s: BitString) {
        let used = self.used as usize + s.len();
        assert!(used <= MAX_BITS, "multi-counter longer than {MAX_BITS} bits");
        self.payload = if s.is_empty() {
            self.payload
        } else {
            (self.payload << s.len()) | s.raw()
        };
        self.used = used as u8;
        self.lens.push(s.len() as u8);
    }

    pub fn pop(&mut self) -> Option<BitString> {
        let last = self.last()?;
        self.lens.pop();
        self.payload = if last.is_empty() {
            self.payload
        } else {
            self.payload >> last.len()
        };
        self.used -= last.len() as u8;
        Some(last)
    }

    pub fn with_pushed(mut self, s: BitString) -> Self {
        self.push(s);
        self
    }

    /// Keeps the first `k` components (all, if there are fewer).
    pub fn prefix(&self, k: usize) -> MultiCounter {
        if k >= self.len() {
            return self.clone();
        }
        let dropped: usize = self.lens[k..].iter().map(|&l| l as usize).sum();
        MultiCounter {
            payload: if dropped >= 64 { 0 } else { self.payload >> dropped },
            used: self.used - dropped as u8,
            lens: self.lens[..k].iter().copied().collect(),
        }
        .canonical()
    }

    /// Replaces the last component.
    pub fn with_last(&self, s: BitString) -> MultiCounter {
        let mut c = self.clone();
        c.pop();
        c.push(s);
        c
    }

    fn canonical(mut self) -> Self {
        self.payload &= low_mask(self.used as usize);
        self
    }
}

pub struct Components<'a> {
    counter: &'a MultiCounter,
    index: usize,
    offset: usize,
}

impl Iterator for Components<'_> {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let len = *self.counter.lens.get(self.index)? as usize;
        let s = self.counter.extract(self.offset, len);
        self.index += 1;
        self.offset += len;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.counter.len() - self.index;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Components<'_> {}

/// Lexicographic by component; a proper prefix is strictly smaller.
impl Ord for MultiCounter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.components().cmp(other.components())
    }
}

impl PartialOrd for MultiCounter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.components().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A multi-counter or one of the two sentinels `⊥ < every counter < ⊤`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedCounter {
    Bottom,
    Finite(MultiCounter),
    Top,
}

impl ExtendedCounter {
    pub fn empty() -> Self {
        ExtendedCounter::Finite(MultiCounter::empty())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, ExtendedCounter::Top)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ExtendedCounter::Bottom)
    }

    pub fn as_finite(&self) -> Option<&MultiCounter> {
        match self {
            ExtendedCounter::Finite(c) => Some(c),
            _ => None,
        }
    }

    pub fn used_bits(&self) -> usize {
        self.as_finite().map_or(0, MultiCounter::used_bits)
    }
}

impl From<MultiCounter> for ExtendedCounter {
    fn from(c: MultiCounter) -> Self {
        ExtendedCounter::Finite(c)
    }
}

/// Counters render as `(01,e,1)`; `⊤` as `T` and `⊥` as `_`.
impl fmt::Display for ExtendedCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCounter::Bottom => f.write_str("_"),
            ExtendedCounter::Top => f.write_str("T"),
            ExtendedCounter::Finite(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for ExtendedCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiCounter {
    type Err = CounterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| CounterError::Syntax(format!("expected a parenthesised tuple, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(MultiCounter::empty());
        }
        let parts = inner
            .split(',')
            .map(str::parse::<BitString>)
            .collect::<Result<Vec<_>, _>>()?;
        let total: usize = parts.iter().map(BitString::len).sum();
        if total > MAX_BITS {
            return Err(CounterError::Syntax(format!("counter of {total} bits is too long")));
        }
        Ok(MultiCounter::from_components(parts))
    }
}

impl FromStr for ExtendedCounter {
    type Err = CounterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "T" | "⊤" => Ok(ExtendedCounter::Top),
            "_" | "⊥" => Ok(ExtendedCounter::Bottom),
            other => other.parse().map(ExtendedCounter::Finite),
        }
    }
}

/// Compares two (possibly sentinel) counters.
pub fn compare_counters(a: &ExtendedCounter, b: &ExtendedCounter) -> Ordering {
    a.cmp(b)
}
