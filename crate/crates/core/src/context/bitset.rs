use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

const WORD_BITS: usize = u64::BITS as usize;

/// Fixed-domain subset of `0..domain`.
///
/// Domains of up to 64 elements live in a single inline word; larger
/// domains spill to the heap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    domain: usize,
    words: SmallVec<[u64; 1]>,
}

/// Subset of a context's objects.
pub type ObjectSet = BitSet;
/// Subset of a context's attributes.
pub type AttributeSet = BitSet;

#[inline]
fn location(bit: usize) -> (usize, u64) {
    (bit / WORD_BITS, 1u64 << (bit % WORD_BITS))
}

impl BitSet {
    pub fn empty(domain: usize) -> Self {
        Self {
            domain,
            words: smallvec![0; domain.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut set = Self {
            domain,
            words: smallvec![u64::MAX; domain.div_ceil(WORD_BITS)],
        };
        set.trim();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(domain: usize, indices: I) -> Self {
        let mut set = Self::empty(domain);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    fn trim(&mut self) {
        let rem = self.domain % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the ground set this subset lives in.
    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn contains(&self, bit: usize) -> bool {
        assert!(
            bit < self.domain,
            "bit {bit} outside domain {}",
            self.domain
        );
        let (i, mask) = location(bit);
        self.words[i] & mask != 0
    }

    pub fn insert(&mut self, bit: usize) -> bool {
        assert!(
            bit < self.domain,
            "bit {bit} outside domain {}",
            self.domain
        );
        let (i, mask) = location(bit);
        let fresh = self.words[i] & mask == 0;
        self.words[i] |= mask;
        fresh
    }

    pub fn remove(&mut self, bit: usize) -> bool {
        assert!(
            bit < self.domain,
            "bit {bit} outside domain {}",
            self.domain
        );
        let (i, mask) = location(bit);
        let present = self.words[i] & mask != 0;
        self.words[i] &= !mask;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.domain
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.domain, other.domain);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.domain, other.domain);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Neither set contains the other.
    pub fn is_incomparable(&self, other: &Self) -> bool {
        !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.domain, other.domain);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.domain, other.domain);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        debug_assert_eq!(self.domain, other.domain);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = Self {
            domain: self.domain,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    /// Keeps only the elements with index strictly greater than `bit`.
    pub(crate) fn retain_above(&mut self, bit: usize) {
        let (word, _) = location(bit);
        for w in &mut self.words[..word] {
            *w = 0;
        }
        let shift = bit % WORD_BITS;
        self.words[word] &= if shift == WORD_BITS - 1 {
            0
        } else {
            u64::MAX << (shift + 1)
        };
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// Lectic order with the first element as least significant position:
/// sets compare as binary numbers.
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain.cmp(&other.domain).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD_BITS + tz)
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Ones<'a>;

    fn into_iter(self) -> Ones<'a> {
        self.iter()
    }
}
