//! Finite semigroups by Cayley table, brute-force enumeration of congruences
//! and diagonal subsemigroups, and the DSC coefficient.
//!
//! Relations are enumerated as closed sets over the `n^2 - n` off-diagonal
//! pairs; the diagonal is always present and never enumerated.

use crate::bitset::BitSet;
use crate::groups::{associativity_witness, validate_square, FiniteGroup};
use crate::relations::{
    collect_closed_sets, count_closed_sets, enumerate_closed_sets, enumerate_partitions,
    BinaryRelation, UnionFind,
};
use crate::{Error, ExactRational, Limits, Result};
use num_bigint::BigUint;

/// Order up to which congruences are also counted by partition filtering.
pub const PARTITION_ORACLE_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates a Cayley table, checking associativity on every triple.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let flat = validate_square(table)?;
        let n = table.len();
        if let Some((x, y, z)) = associativity_witness(n, &flat) {
            return Err(Error::Validation(format!(
                "not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
            )));
        }
        Ok(FiniteSemigroup { order: n, table: flat })
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(associativity_witness(order, &table).is_none());
        FiniteSemigroup { order, table }
    }

    pub fn from_group(group: &FiniteGroup) -> Self {
        FiniteSemigroup {
            order: group.order(),
            table: (0..group.order() * group.order())
                .map(|k| group.mul(k / group.order(), k % group.order()))
                .collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn identity(&self) -> Option<usize> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Whether the table is a group table.
    pub fn is_group(&self) -> bool {
        let Some(e) = self.identity() else {
            return false;
        };
        (0..self.order).all(|x| (0..self.order).any(|y| self.mul(x, y) == e && self.mul(y, x) == e))
    }

    fn check_size(&self, rel: &BinaryRelation) -> Result<()> {
        if rel.size() != self.order {
            return Err(Error::Shape(format!(
                "relation on {} points, semigroup of order {}",
                rel.size(),
                self.order
            )));
        }
        Ok(())
    }

    fn compatible(&self, rel: &BinaryRelation) -> bool {
        let pairs: Vec<(usize, usize)> = rel.pairs().collect();
        pairs.iter().all(|&(x, y)| {
            pairs
                .iter()
                .all(|&(z, t)| rel.contains(self.mul(x, z), self.mul(y, t)))
        })
    }

    /// Reflexive and compatible with multiplication.
    pub fn is_diagonal_subsemigroup(&self, rel: &BinaryRelation) -> Result<bool> {
        self.check_size(rel)?;
        Ok(rel.is_reflexive() && self.compatible(rel))
    }

    pub fn is_congruence(&self, rel: &BinaryRelation) -> Result<bool> {
        self.check_size(rel)?;
        Ok(rel.is_equivalence() && self.compatible(rel))
    }

    /// Least diagonal subsemigroup containing `seed`.
    pub fn diagonal_closure(&self, seed: &BinaryRelation) -> Result<BinaryRelation> {
        self.check_size(seed)?;
        let mut rel = BinaryRelation::diagonal(self.order).union(seed);
        let mut list: Vec<(usize, usize)> = rel.pairs().collect();
        // every pair at index < done has been multiplied with every pair at
        // index <= its own, in both orders
        let mut done = 0;
        while done < list.len() {
            let (x, y) = list[done];
            for k in 0..=done {
                let (z, t) = list[k];
                for (a, b) in [(self.mul(x, z), self.mul(y, t)), (self.mul(z, x), self.mul(t, y))] {
                    if rel.insert(a, b) {
                        list.push((a, b));
                    }
                }
            }
            done += 1;
        }
        Ok(rel)
    }

    /// Least congruence containing `seed`.
    pub fn congruence_closure(&self, seed: &BinaryRelation) -> Result<BinaryRelation> {
        self.check_size(seed)?;
        let n = self.order;
        let mut uf = UnionFind::new(n);
        let mut queue: Vec<(usize, usize)> = seed.pairs().collect();
        while let Some((a, b)) = queue.pop() {
            if uf.union(a, b) {
                for s in 0..n {
                    queue.push((self.mul(s, a), self.mul(s, b)));
                    queue.push((self.mul(a, s), self.mul(b, s)));
                }
            }
        }
        Ok(uf.into_relation())
    }

    fn check_brute_force(&self, limits: &Limits) -> Result<()> {
        if self.order > limits.brute_force_order {
            return Err(Error::Cap {
                what: "semigroup order for brute-force enumeration",
                size: self.order,
                cap: limits.brute_force_order,
                hint: "; use the Rees matrix or Clifford structural paths instead",
            });
        }
        Ok(())
    }

    fn universe(&self) -> OffDiagonal {
        OffDiagonal { n: self.order }
    }

    fn closure_kind(&self, kind: RelationKind) -> impl Fn(&BitSet) -> BitSet + Sync + '_ {
        let universe = self.universe();
        move |set: &BitSet| {
            let seed = universe.to_relation(set);
            let closed = match kind {
                RelationKind::Diagonal => self.diagonal_closure(&seed),
                RelationKind::Congruence => self.congruence_closure(&seed),
            }
            .expect("seed sized by construction");
            universe.from_relation(&closed)
        }
    }

    fn stream(
        &self,
        kind: RelationKind,
        limits: &Limits,
    ) -> Result<impl Iterator<Item = BinaryRelation> + '_> {
        self.check_brute_force(limits)?;
        let universe = self.universe();
        Ok(enumerate_closed_sets(universe.len(), self.closure_kind(kind))
            .map(move |s| universe.to_relation(&s)))
    }

    fn count(&self, kind: RelationKind, limits: &Limits) -> Result<BigUint> {
        self.check_brute_force(limits)?;
        Ok(count_closed_sets(self.universe().len(), self.closure_kind(kind)).into())
    }

    fn collect(&self, kind: RelationKind, limits: &Limits) -> Result<Vec<BinaryRelation>> {
        self.check_brute_force(limits)?;
        let universe = self.universe();
        Ok(collect_closed_sets(universe.len(), self.closure_kind(kind))
            .iter()
            .map(|s| universe.to_relation(s))
            .collect())
    }

    /// Streams every diagonal subsemigroup once, in lectic order of the
    /// off-diagonal pairs.
    pub fn diagonal_subsemigroups(
        &self,
        limits: &Limits,
    ) -> Result<impl Iterator<Item = BinaryRelation> + '_> {
        self.stream(RelationKind::Diagonal, limits)
    }

    pub fn congruences(&self, limits: &Limits) -> Result<impl Iterator<Item = BinaryRelation> + '_> {
        self.stream(RelationKind::Congruence, limits)
    }

    pub fn collect_diagonal_subsemigroups(&self, limits: &Limits) -> Result<Vec<BinaryRelation>> {
        self.collect(RelationKind::Diagonal, limits)
    }

    pub fn collect_congruences(&self, limits: &Limits) -> Result<Vec<BinaryRelation>> {
        self.collect(RelationKind::Congruence, limits)
    }

    pub fn count_diagonal_subsemigroups(&self, limits: &Limits) -> Result<BigUint> {
        self.count(RelationKind::Diagonal, limits)
    }

    pub fn count_congruences(&self, limits: &Limits) -> Result<BigUint> {
        self.count(RelationKind::Congruence, limits)
    }

    /// Congruence count by filtering all partitions of the carrier; an
    /// independent route for orders up to [`PARTITION_ORACLE_CAP`].
    pub fn count_congruences_by_partitions(&self) -> Result<u64> {
        if self.order > PARTITION_ORACLE_CAP {
            return Err(Error::cap(
                "semigroup order for the partition oracle",
                self.order,
                PARTITION_ORACLE_CAP,
            ));
        }
        let mut count = 0;
        for p in enumerate_partitions(self.order)? {
            if self.compatible(&p.to_relation()) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Exact `|Cong(S)| / |Diag(S)|` by brute-force enumeration.
    pub fn dsc_coefficient(&self, limits: &Limits) -> Result<DscReport> {
        let congruences = self.count_congruences(limits)?;
        let diagonals = self.count_diagonal_subsemigroups(limits)?;
        DscReport::new(congruences, diagonals)
    }
}

#[derive(Clone, Copy, Debug)]
enum RelationKind {
    Diagonal,
    Congruence,
}

/// Indexes the off-diagonal pairs `(i, j)`, `i != j`, in row-major order.
#[derive(Clone, Copy, Debug)]
struct OffDiagonal {
    n: usize,
}

impl OffDiagonal {
    fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1)
    }

    #[inline]
    fn pair(&self, u: usize) -> (usize, usize) {
        let i = u / (self.n - 1);
        let jj = u % (self.n - 1);
        (i, if jj >= i { jj + 1 } else { jj })
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    fn to_relation(&self, set: &BitSet) -> BinaryRelation {
        let mut rel = BinaryRelation::diagonal(self.n);
        for u in set.iter() {
            let (i, j) = self.pair(u);
            rel.insert(i, j);
        }
        rel
    }

    fn from_relation(&self, rel: &BinaryRelation) -> BitSet {
        BitSet::from_indices(
            self.len(),
            rel.pairs().filter(|(i, j)| i != j).map(|(i, j)| self.index(i, j)),
        )
    }
}

/// Congruence and diagonal-subsemigroup counts with their exact ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DscReport {
    pub congruence_count: BigUint,
    pub diagonal_count: BigUint,
    pub chi: ExactRational,
}

impl DscReport {
    pub fn new(congruence_count: BigUint, diagonal_count: BigUint) -> Result<Self> {
        if diagonal_count < congruence_count || congruence_count == BigUint::default() {
            return Err(Error::Internal(format!(
                "inconsistent counts: {congruence_count} congruences, {diagonal_count} diagonal subsemigroups"
            )));
        }
        let chi = ExactRational::from_counts(&congruence_count, &diagonal_count)?;
        Ok(DscReport {
            congruence_count,
            diagonal_count,
            chi,
        })
    }
}
