//! Index-mask sets over a family's universe.
//!
//! Universes of up to 64 elements live in a single inline word; larger
//! universes spill into extra 64-bit blocks. Trailing zero blocks are always
//! trimmed so that equality, hashing and ordering never depend on how a set
//! was built.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ESet {
    blocks: SmallVec<[u64; 1]>,
}

impl ESet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_word(word: u64) -> Self {
        let mut s = ESet {
            blocks: SmallVec::from_buf([word]),
        };
        s.trim();
        s
    }

    pub fn singleton(index: usize) -> Self {
        let mut s = Self::empty();
        s.insert(index);
        s
    }

    /// `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = Self::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        while self.blocks.last() == Some(&0) {
            self.blocks.pop();
        }
    }

    pub fn insert(&mut self, index: usize) {
        let (b, bit) = (index / WORD, index % WORD);
        if self.blocks.len() <= b {
            self.blocks.resize(b + 1, 0);
        }
        self.blocks[b] |= 1 << bit;
    }

    pub fn remove(&mut self, index: usize) {
        let (b, bit) = (index / WORD, index % WORD);
        if let Some(w) = self.blocks.get_mut(b) {
            *w &= !(1 << bit);
            self.trim();
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.blocks
            .get(index / WORD)
            .is_some_and(|w| w >> (index % WORD) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of 64-bit blocks in use (1 for any nonempty set over <= 64 elements).
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The lowest block, i.e. the whole mask when the universe fits in 64 bits.
    pub fn low_word(&self) -> u64 {
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn union(&self, other: &ESet) -> ESet {
        let (long, short) = if self.blocks.len() >= other.blocks.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.clone();
        for (w, o) in out.blocks.iter_mut().zip(short.blocks.iter()) {
            *w |= o;
        }
        out
    }

    pub fn intersection(&self, other: &ESet) -> ESet {
        let mut out = ESet {
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &ESet) -> ESet {
        let mut out = self.clone();
        for (w, o) in out.blocks.iter_mut().zip(other.blocks.iter()) {
            *w &= !o;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &ESet) -> bool {
        if self.blocks.len() > other.blocks.len() {
            return false;
        }
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &ESet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &ESet) -> bool {
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(b, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(b * WORD + tz)
            })
        })
    }

    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Compare masks as unsigned integers (most significant block first).
    pub fn cmp_mask(&self, other: &ESet) -> Ordering {
        self.blocks.len().cmp(&other.blocks.len()).then_with(|| {
            for (a, b) in self.blocks.iter().rev().zip(other.blocks.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

/// Canonical order: cardinality first, then mask value.
impl Ord for ESet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_mask(other))
    }
}

impl PartialOrd for ESet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ESet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ESet::from_indices(iter)
    }
}
