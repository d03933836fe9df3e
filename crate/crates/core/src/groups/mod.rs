//! Finite groups given by Cayley tables, and a symbolic model of the cyclic
//! groups `Z_{p^k}`.

mod cyclic;

pub use cyclic::{NormalChain, PadicInt, SymbolicCyclicGroup};
pub(crate) use cyclic::checked_pow;

use crate::bitset::BitSet;
use crate::relations::collect_closed_sets;
use crate::{Error, Result};

/// Largest group order accepted by [`FiniteGroup::normal_subgroups`].
pub const GROUP_CAP: usize = 64;

/// A finite group with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Checks a square table of indices and returns it flattened.
pub(crate) fn validate_square(table: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Validation("empty table".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Validation(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if x >= n {
                return Err(Error::Validation(format!(
                    "entry ({i},{j}) = {x} is out of range for order {n}"
                )));
            }
            flat.push(x);
        }
    }
    Ok(flat)
}

/// First triple violating `(xy)z = x(yz)`, if any.
pub(crate) fn associativity_witness(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            let xy = table[x * n + y];
            for z in 0..n {
                if table[xy * n + z] != table[x * n + table[y * n + z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

impl FiniteGroup {
    /// Validates the group axioms on a Cayley table.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let flat = validate_square(table)?;
        let n = table.len();
        if let Some((x, y, z)) = associativity_witness(n, &flat) {
            return Err(Error::Validation(format!(
                "not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
            )));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| Error::Validation("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| flat[x * n + y] == identity && flat[y * n + x] == identity)
                .ok_or_else(|| Error::Validation(format!("element {x} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    /// The cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table: Vec<usize> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverse: (0..n).map(|x| (n - x) % n).collect(),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        set.contains(self.identity)
            && set
                .iter()
                .all(|x| set.contains(self.inv(x)) && set.iter().all(|y| set.contains(self.mul(x, y))))
    }

    pub fn is_normal_subgroup(&self, set: &BitSet) -> bool {
        self.is_subgroup(set)
            && set
                .iter()
                .all(|x| (0..self.order).all(|g| set.contains(self.conjugate(x, g))))
    }

    /// Subgroup generated by `set`, closing under products only (enough in a
    /// finite group).
    pub fn generated_subgroup(&self, set: &BitSet) -> BitSet {
        let mut out = set.clone();
        out.insert(self.identity);
        let mut frontier: Vec<usize> = out.iter().collect();
        while let Some(x) = frontier.pop() {
            let members: Vec<usize> = out.iter().collect();
            for y in members {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if out.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        out
    }

    /// Conjugacy classes ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// All normal subgroups, largest first: `G` leads and `{1}` comes last.
    /// Equal-size subgroups are ordered by their sorted element lists.
    pub fn normal_subgroups(&self) -> Result<Vec<NormalSubgroup>> {
        if self.order > GROUP_CAP {
            return Err(Error::cap("group order", self.order, GROUP_CAP));
        }
        let n = self.order;
        let classes = self.conjugacy_classes();
        let class_of = {
            let mut v = vec![0; n];
            for (c, class) in classes.iter().enumerate() {
                for &x in class {
                    v[x] = c;
                }
            }
            v
        };
        // a union of classes generates a normal subgroup, which is again a
        // union of classes; closed sets over classes are the normal subgroups
        let close = |chosen: &BitSet| {
            let seed = BitSet::from_indices(n, chosen.iter().flat_map(|c| classes[c].iter().copied()));
            let sub = self.generated_subgroup(&seed);
            BitSet::from_indices(classes.len(), sub.iter().map(|x| class_of[x]))
        };
        let mut subs: Vec<NormalSubgroup> = collect_closed_sets(classes.len(), close)
            .into_iter()
            .map(|cs| NormalSubgroup {
                elements: BitSet::from_indices(n, cs.iter().flat_map(|c| classes[c].iter().copied())),
            })
            .collect();
        subs.sort_by(|a, b| {
            b.size()
                .cmp(&a.size())
                .then_with(|| a.elements().cmp(&b.elements()))
        });
        Ok(subs)
    }
}

/// A normal subgroup, stored as its element set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    elements: BitSet,
}

impl NormalSubgroup {
    /// Checks closure under products, inverses and conjugation.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = BitSet::from_indices(group.order(), elements);
        if !group.is_normal_subgroup(&set) {
            return Err(Error::Validation(format!(
                "{:?} is not a normal subgroup",
                set.iter().collect::<Vec<_>>()
            )));
        }
        Ok(NormalSubgroup { elements: set })
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        NormalSubgroup {
            elements: BitSet::full(group.order()),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        NormalSubgroup {
            elements: BitSet::from_indices(group.order(), [group.identity()]),
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn size(&self) -> usize {
        self.elements.count()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.elements.iter().collect()
    }

    pub fn is_subset(&self, other: &NormalSubgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }
}

impl std::fmt::Debug for NormalSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N{:?}", self.elements())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn from_table_examples() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.identity(), 0);
        let err = FiniteGroup::from_table(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("no identity"), "{err}");
    }

    #[test]
    fn from_table_rejects_bad_shapes() {
        assert!(FiniteGroup::from_table(&[]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).is_err());
        // identity exists, 1 has no inverse
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("inverse"), "{err}");
    }

    #[test]
    fn normal_subgroup_examples() {
        let triv = FiniteGroup::trivial();
        assert_eq!(triv.normal_subgroups().unwrap().len(), 1);

        let z2 = FiniteGroup::cyclic(2);
        let subs = z2.normal_subgroups().unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0], NormalSubgroup::whole(&z2));
        assert_eq!(subs[1], NormalSubgroup::trivial(&z2));

        let s3 = corpus::symmetric_group_3();
        let subs = s3.normal_subgroups().unwrap();
        assert_eq!(subs.iter().map(NormalSubgroup::size).collect::<Vec<_>>(), vec![6, 3, 1]);
    }

    #[test]
    fn normal_subgroups_match_subset_filter() {
        for (name, g) in corpus::stored_groups() {
            let n = g.order();
            let mut brute: Vec<Vec<usize>> = (0u32..1 << n)
                .map(|m| BitSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
                .filter(|s| g.is_normal_subgroup(s))
                .map(|s| s.iter().collect())
                .collect();
            brute.sort();
            let mut found: Vec<Vec<usize>> =
                g.normal_subgroups().unwrap().iter().map(|s| s.elements()).collect();
            for s in &g.normal_subgroups().unwrap() {
                assert!(g.is_normal_subgroup(&BitSet::from_indices(n, s.elements())));
            }
            found.sort();
            assert_eq!(found, brute, "{name}");
        }
    }

    #[test]
    fn cap_enforced() {
        let g = FiniteGroup::cyclic(GROUP_CAP + 1);
        assert!(matches!(g.normal_subgroups(), Err(Error::Cap { .. })));
        assert_eq!(FiniteGroup::cyclic(GROUP_CAP).normal_subgroups().unwrap().len(), 7);
    }
}
