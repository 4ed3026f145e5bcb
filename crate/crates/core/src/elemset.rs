//! Fixed-capacity bitsets over a carrier `{0, .., n-1}`.

use std::cmp::Ordering;
use std::fmt;

use crate::hoop::Elem;

const WORD: usize = 64;

/// A subset of a finite carrier, stored as a bitset.
///
/// Sets compare as binary numbers with element `i` at bit `i`, so the order is
/// total and independent of insertion history.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    n: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        ElemSet {
            n,
            words: vec![0; n.div_ceil(WORD).max(1)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for x in 0..n {
            s.insert(x);
        }
        s
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(n);
        for x in elems {
            s.insert(x);
        }
        s
    }

    /// Carrier size this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.n && self.words[x / WORD] >> (x % WORD) & 1 == 1
    }

    pub fn insert(&mut self, x: Elem) -> bool {
        assert!(x < self.n, "element {x} outside carrier of size {}", self.n);
        let fresh = !self.contains(x);
        self.words[x / WORD] |= 1 << (x % WORD);
        fresh
    }

    pub fn remove(&mut self, x: Elem) {
        if x < self.n {
            self.words[x / WORD] &= !(1 << (x % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        ElemSet { n: self.n, words }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        ElemSet { n: self.n, words }
    }

    pub fn complement(&self) -> ElemSet {
        ElemSet::from_elems(self.n, (0..self.n).filter(|&x| !self.contains(x)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_numeric() {
        let a = ElemSet::from_elems(5, [4]);
        let b = ElemSet::from_elems(5, [0, 1, 2, 3]);
        assert!(b < a);
        let c = ElemSet::from_elems(5, [0, 4]);
        assert!(a < c);
    }

    #[test]
    fn wide_carrier() {
        let mut s = ElemSet::empty(130);
        s.insert(129);
        s.insert(3);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().len(), 128);
        assert!(ElemSet::from_elems(130, [3]).is_subset(&s));
    }
}
