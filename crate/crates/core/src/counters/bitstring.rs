use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::CounterError;

/// Longest binary string any counter may hold.
pub const MAX_BITS: usize = 63;

/// A finite binary string of at most [`MAX_BITS`] bits.
///
/// Strings are ordered by `0s < ε < 1s` and `bs < bs'` iff `s < s'`, which
/// is the order of the rationals `Σ (−1)^(b_i + 1) · 2^(−i)`. Reading a
/// string left to right, a `0` steps down and a `1` steps up.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    // The first bit of the string is the most significant of the low `len` bits.
    bits: u64,
    len: u8,
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitString {
    pub const EMPTY: BitString = BitString { bits: 0, len: 0 };

    /// Takes the low `len` bits of `bits`, most significant first.
    pub fn from_raw(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_BITS, "binary string longer than {MAX_BITS} bits");
        BitString {
            bits: bits & low_mask(len),
            len: len as u8,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        bits.into_iter().fold(Self::EMPTY, |s, b| s.push(b))
    }

    pub fn zeros(len: usize) -> Self {
        Self::from_raw(0, len)
    }

    pub fn ones(len: usize) -> Self {
        Self::from_raw(u64::MAX, len)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn raw(&self) -> u64 {
        self.bits
    }

    /// The `i`-th bit, counting from the start of the string.
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> (self.len() - 1 - i)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }

    pub fn push(self, b: bool) -> Self {
        assert!(self.len() < MAX_BITS, "binary string longer than {MAX_BITS} bits");
        BitString {
            bits: (self.bits << 1) | b as u64,
            len: self.len + 1,
        }
    }

    pub fn concat(self, other: BitString) -> Self {
        let len = self.len() + other.len();
        assert!(len <= MAX_BITS, "binary string longer than {MAX_BITS} bits");
        BitString {
            bits: (self.bits << other.len) | other.bits,
            len: len as u8,
        }
    }

    /// `b · self`.
    pub fn prepend(self, b: bool) -> Self {
        assert!(self.len() < MAX_BITS, "binary string longer than {MAX_BITS} bits");
        BitString {
            bits: self.bits | ((b as u64) << self.len),
            len: self.len + 1,
        }
    }

    /// Drops the last `k` bits.
    pub fn drop_last(self, k: usize) -> Self {
        debug_assert!(k <= self.len());
        BitString {
            bits: self.bits >> k,
            len: self.len - k as u8,
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits == low_mask(self.len())
    }

    pub fn is_all_zeros(&self) -> bool {
        self.bits == 0
    }

    /// Length of the maximal run of `1`s at the end of the string.
    pub fn trailing_ones(&self) -> usize {
        (self.bits.trailing_ones() as usize).min(self.len())
    }

    /// Length of the maximal run of `0`s at the end of the string.
    pub fn trailing_zeros(&self) -> usize {
        (self.bits.trailing_zeros() as usize).min(self.len())
    }

    /// The string's rational value `Σ (−1)^(b_i + 1) · 2^(−i)`, scaled by
    /// `2^MAX_BITS` so that it is an exact integer.
    pub fn valuation_scaled(&self) -> i128 {
        self.iter()
            .enumerate()
            .map(|(i, b)| {
                let w = 1i128 << (MAX_BITS - 1 - i);
                if b {
                    w
                } else {
                    -w
                }
            })
            .sum()
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        let (la, lb) = (self.len(), other.len());
        let k = la.min(lb);
        // Equal-length prefixes compare like unsigned integers.
        let a = self.bits >> (la - k);
        let b = other.bits >> (lb - k);
        if a != b {
            return a.cmp(&b);
        }
        match la.cmp(&lb) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => {
                if self.bit(k) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Ordering::Less => {
                if other.bit(k) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two binary strings in the counter order.
pub fn compare_strings(a: &BitString, b: &BitString) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = CounterError;

    /// Accepts `e`, `ε` or the empty string for ε, otherwise digits `0`/`1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Self::EMPTY);
        }
        if s.len() > MAX_BITS {
            return Err(CounterError::Syntax(format!("string of {} bits is too long", s.len())));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CounterError::Syntax(format!("unexpected character {c:?} in bit string"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString::from_bits)
    }
}

/// All strings of length at most `max_len`, ascending.
pub fn strings_up_to(max_len: usize) -> Vec<BitString> {
    if max_len == 0 {
        return vec![BitString::EMPTY];
    }
    let shorter = strings_up_to(max_len - 1);
    let mut out = Vec::with_capacity(2 * shorter.len() + 1);
    out.extend(shorter.iter().map(|s| s.prepend(false)));
    out.push(BitString::EMPTY);
    out.extend(shorter.iter().map(|s| s.prepend(true)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> BitString {
        x.parse().unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(compare_strings(&s("00"), &s("0")), Ordering::Less);
        assert_eq!(compare_strings(&s("011"), &s("e")), Ordering::Less);
        assert_eq!(compare_strings(&s("e"), &s("e")), Ordering::Equal);
        assert_eq!(compare_strings(&s("e"), &s("10")), Ordering::Less);
        assert!(s("0") < s("01"));
        assert!(s("01") < s("e"));
        assert!(s("1") < s("11"));
        assert!(s("10") < s("1"));
    }

    #[test]
    fn sorted_strings_of_length_two() {
        let got: Vec<String> = strings_up_to(2).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["00", "0", "01", "e", "10", "1", "11"]);
    }

    #[test]
    fn edits() {
        assert_eq!(s("01").prepend(true), s("101"));
        assert_eq!(s("01").push(false), s("010"));
        assert_eq!(s("0111").trailing_ones(), 3);
        assert_eq!(s("111").trailing_ones(), 3);
        assert_eq!(s("100").trailing_zeros(), 2);
        assert_eq!(s("0110").drop_last(2), s("01"));
        assert_eq!(s("01").concat(s("10")), s("0110"));
        assert!(BitString::ones(4).is_all_ones());
        assert!(BitString::EMPTY.is_all_ones() && BitString::EMPTY.is_all_zeros());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("012".parse::<BitString>().is_err());
        assert_eq!("ε".parse::<BitString>().unwrap(), BitString::EMPTY);
    }
}
