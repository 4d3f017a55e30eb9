//! Bit-packed storage for a measure `V → S^⊤`.
//!
//! Each entry occupies one fixed-width slot:
//!
//! ```text
//! [top: 1] [components: ⌈lg(d/2 + 1)⌉] [bits used: ⌈lg(g + 1)⌉] g × ([bit: 1] [component: ⌈lg(d/2)⌉])
//! ```
//!
//! The `g` cells carry every payload bit tagged with the number of the
//! component it belongs to, so the cells take `g · ⌈lg d⌉` bits per vertex.
//! The three header fields are the per-entry index overhead.

use bitvec::prelude::*;

use crate::counters::{ceil_lg, BitString, CounterSpace, ExtendedCounter, MultiCounter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Layout {
    len_bits: usize,
    used_bits: usize,
    tag_bits: usize,
    budget: usize,
}

impl Layout {
    fn new(space: &CounterSpace) -> Self {
        let h = space.height();
        Layout {
            len_bits: ceil_lg(h as u64 + 1),
            used_bits: ceil_lg(space.budget() as u64 + 1),
            tag_bits: ceil_lg(h as u64),
            budget: space.budget(),
        }
    }

    fn header(&self) -> usize {
        1 + self.len_bits + self.used_bits
    }

    fn cells(&self) -> usize {
        self.budget * (1 + self.tag_bits)
    }

    fn slot(&self) -> usize {
        self.header() + self.cells()
    }
}

/// A total map from vertices to `S^⊤`, stored in `n` fixed-width slots.
#[derive(Clone, PartialEq, Eq)]
pub struct Measure {
    space: CounterSpace,
    layout: Layout,
    n: usize,
    bits: BitVec<u64, Msb0>,
}

fn store(bits: &mut BitSlice<u64, Msb0>, value: usize) {
    if !bits.is_empty() {
        bits.store_be::<u64>(value as u64);
    }
}

fn load(bits: &BitSlice<u64, Msb0>) -> usize {
    if bits.is_empty() {
        0
    } else {
        bits.load_be::<u64>() as usize
    }
}

impl Measure {
    /// Every vertex mapped to the empty tuple, the least element of `S^⊤`.
    pub fn bottom(space: CounterSpace, n: usize) -> Self {
        let layout = Layout::new(&space);
        Measure {
            space,
            layout,
            n,
            bits: bitvec![u64, Msb0; 0; n * layout.slot()],
        }
    }

    pub fn from_values(space: CounterSpace, values: &[ExtendedCounter]) -> Self {
        let mut m = Self::bottom(space, values.len());
        for (v, value) in values.iter().enumerate() {
            m.set(v, value);
        }
        m
    }

    pub fn space(&self) -> &CounterSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn slot(&self, v: usize) -> &BitSlice<u64, Msb0> {
        let w = self.layout.slot();
        &self.bits[v * w..(v + 1) * w]
    }

    pub fn get(&self, v: usize) -> ExtendedCounter {
        let l = &self.layout;
        let slot = self.slot(v);
        if slot[0] {
            return ExtendedCounter::Top;
        }
        let len = load(&slot[1..1 + l.len_bits]);
        let used = load(&slot[1 + l.len_bits..l.header()]);
        let mut comps = vec![BitString::EMPTY; len];
        let cells = &slot[l.header()..];
        for cell in cells.chunks_exact(1 + l.tag_bits).take(used) {
            let j = load(&cell[1..]);
            comps[j] = comps[j].push(cell[0]);
        }
        ExtendedCounter::Finite(MultiCounter::from_components(comps))
    }

    /// Stores `value`, which must be `⊤` or a member of the space.
    pub fn set(&mut self, v: usize, value: &ExtendedCounter) {
        assert!(
            self.space.contains_extended(value) && !value.is_bottom(),
            "{value} is not a measure value for this space"
        );
        let l = self.layout;
        let w = l.slot();
        let slot = &mut self.bits[v * w..(v + 1) * w];
        slot.fill(false);
        let ExtendedCounter::Finite(c) = value else {
            slot.set(0, true);
            return;
        };
        store(&mut slot[1..1 + l.len_bits], c.len());
        store(&mut slot[1 + l.len_bits..l.header()], c.used_bits());
        let cell = 1 + l.tag_bits;
        let mut at = l.header();
        for (j, s) in c.components().enumerate() {
            for b in s.iter() {
                slot.set(at, b);
                store(&mut slot[at + 1..at + cell], j);
                at += cell;
            }
        }
    }

    pub fn values(&self) -> Vec<ExtendedCounter> {
        (0..self.n).map(|v| self.get(v)).collect()
    }

    /// Bits spent on tagged payload cells, `n · g · ⌈lg d⌉` when `d ≥ 2`.
    pub fn cell_bits(&self) -> usize {
        self.n * self.layout.cells()
    }

    /// Bits spent on per-entry headers.
    pub fn header_bits(&self) -> usize {
        self.n * self.layout.header()
    }

    /// Total size of the table in bits.
    pub fn storage_bits(&self) -> usize {
        self.bits.len()
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Measure) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.get(v) <= other.get(v))
    }
}

impl std::fmt::Debug for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.values()).finish()
    }
}
