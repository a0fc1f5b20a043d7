//! Fixed-width bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A set of indices in `0..len`, stored as packed 64-bit words.
///
/// Bits at positions `>= len` in the last word are always zero, so derived
/// equality and hashing agree with set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Universe size, not cardinality.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] & (1u64 << (i % WORD_BITS)) != 0
    }

    /// Panics if `i` is outside the universe.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} outside universe of size {}", self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Cardinality first, then lexicographic comparison of the ascending
    /// member lists.
    pub fn canonical_cmp(&self, other: &BitSet) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`BitSet`].
pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_trims_trailing_bits() {
        let s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.is_full());
        assert_eq!(s, BitSet::from_indices(70, 0..70));
    }

    #[test]
    fn zero_universe() {
        let s = BitSet::full(0);
        assert!(s.is_empty());
        assert!(s.is_full());
        assert_eq!(s.iter().count(), 0);
    }

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let a = BitSet::from_indices(4, [0, 3]);
        let b = BitSet::from_indices(4, [1, 2]);
        let c = BitSet::from_indices(4, [2]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
        assert_eq!(b.canonical_cmp(&b), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn iter_matches_membership(
            len in 1usize..200,
            raw in proptest::collection::vec(0usize..200, 0..40),
        ) {
            let idx: Vec<usize> = raw.into_iter().filter(|&i| i < len).collect();
            let set = BitSet::from_indices(len, idx.iter().copied());
            let mut expected = idx.clone();
            expected.sort_unstable();
            expected.dedup();
            prop_assert_eq!(set.iter().collect::<Vec<_>>(), expected.clone());
            prop_assert_eq!(set.count(), expected.len());
            for i in 0..len {
                prop_assert_eq!(set.contains(i), expected.binary_search(&i).is_ok());
            }
        }

        #[test]
        fn subset_agrees_with_union(
            a in proptest::collection::vec(0usize..90, 0..30),
            b in proptest::collection::vec(0usize..90, 0..30),
        ) {
            let a = BitSet::from_indices(90, a);
            let b = BitSet::from_indices(90, b);
            prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
            prop_assert!(a.intersection(&b).is_subset(&a));
        }
    }
}
