//! Fixed-width bit sets over `{0..len-1}`.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = BitSet::new(len);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = BitSet::new(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Width of the ground set, not the number of members.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Returns true when `i` was not yet present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Keeps only the members strictly below `bound`.
    pub fn truncate_below(&mut self, bound: usize) {
        for (wi, w) in self.words.iter_mut().enumerate() {
            let lo = wi * WORD;
            if lo >= bound {
                *w = 0;
            } else if bound - lo < WORD {
                *w &= (1u64 << (bound - lo)) - 1;
            }
        }
    }

    /// True when `self` and `other` hold the same members below `bound`.
    pub fn agrees_below(&self, other: &BitSet, bound: usize) -> bool {
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let lo = wi * WORD;
            if lo >= bound {
                break;
            }
            let diff = a ^ b;
            let masked = if bound - lo < WORD {
                diff & ((1u64 << (bound - lo)) - 1)
            } else {
                diff
            };
            if masked != 0 {
                return false;
            }
        }
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Lectic order: compare characteristic vectors with element 0 as the
    /// most significant position.
    pub fn lectic_cmp(&self, other: &BitSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
