//! Binary relations on `{0..n-1}`, partitions, Bell numbers and closed-set
//! enumeration.

mod closed_sets;
mod partition;

pub use closed_sets::{
    collect_closed_sets, collect_closed_sets_sequential, count_closed_sets, count_closed_sets_sequential,
    enumerate_closed_sets,
    NextClosure,
};
#[cfg(feature = "parallel")]
pub use closed_sets::count_closed_sets_parallel;
pub use partition::{bell, enumerate_partitions, reflexive_count, Partition, Partitions, BELL_CAP};

use crate::bitset::BitSet;
use std::fmt;

/// A relation on `{0..size-1}` stored as a `size x size` bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    size: usize,
    bits: BitSet,
}

impl BinaryRelation {
    pub fn empty(size: usize) -> Self {
        BinaryRelation {
            size,
            bits: BitSet::new(size * size),
        }
    }

    pub fn diagonal(size: usize) -> Self {
        let mut rel = Self::empty(size);
        for i in 0..size {
            rel.insert(i, i);
        }
        rel
    }

    pub fn full(size: usize) -> Self {
        BinaryRelation {
            size,
            bits: BitSet::full(size * size),
        }
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rel = Self::empty(size);
        for (i, j) in pairs {
            rel.insert(i, j);
        }
        rel
    }

    /// Builds a relation from a membership matrix; every row must have
    /// length `matrix.len()`.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> crate::Result<Self> {
        let n = matrix.len();
        let mut rel = Self::empty(n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(crate::Error::Shape(format!(
                    "row {i} has length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if m {
                    rel.insert(i, j);
                }
            }
        }
        Ok(rel)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits.contains(i * self.size + j)
    }

    /// Returns true when the pair is new.
    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        self.bits.insert(i * self.size + j)
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.bits.remove(i * self.size + j)
    }

    /// Number of pairs in the relation.
    pub fn pair_count(&self) -> usize {
        self.bits.count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        self.bits.iter().map(move |k| (k / n, k % n))
    }

    pub fn is_subset(&self, other: &BinaryRelation) -> bool {
        self.size == other.size && self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &BinaryRelation) -> BinaryRelation {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn inverse(&self) -> BinaryRelation {
        BinaryRelation::from_pairs(self.size, self.pairs().map(|(i, j)| (j, i)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size;
        for (i, j) in self.pairs() {
            for k in 0..n {
                if self.contains(j, k) && !self.contains(i, k) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Smallest equivalence relation containing `self`.
    pub fn equivalence_closure(&self) -> BinaryRelation {
        let mut uf = UnionFind::new(self.size);
        for (i, j) in self.pairs() {
            uf.union(i, j);
        }
        uf.into_relation()
    }

    /// The blocks of an equivalence relation.
    pub fn to_partition(&self) -> crate::Result<Partition> {
        Partition::from_equivalence(self)
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel{}", self.size)?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so class representatives are stable
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub(crate) fn into_relation(mut self) -> BinaryRelation {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        let mut rel = BinaryRelation::empty(n);
        for i in 0..n {
            for j in 0..n {
                if roots[i] == roots[j] {
                    rel.insert(i, j);
                }
            }
        }
        rel
    }
}
