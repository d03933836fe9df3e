//! Rees matrix semigroups `M[G; I, Λ; P]` with sandwich entries from `G`.
//!
//! Diagonal subsemigroups of a finite Rees matrix semigroup correspond one to
//! one with linked reflexive triples `(N, S, T)`, and congruences with linked
//! equivalence triples. [`ReesSpec::relation_to_triple`] and
//! [`ReesSpec::triple_to_relation`] implement the two directions; the census
//! in [`census`] counts triples from partition block sizes alone.

mod census;
mod symbolic;

pub use census::{CensusRow, SubgroupLabel, TripleCensus};
pub use symbolic::SymbolicCyclicReesSpec;

use crate::groups::{FiniteGroup, NormalSubgroup};
use crate::relations::{BinaryRelation, Partition};
use crate::semigroup::{DscReport, FiniteSemigroup};
use crate::{Error, Limits, Result};

/// A Rees matrix semigroup over a concrete finite group. The sandwich matrix
/// is `b x a`, rows indexed by `Λ` and columns by `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSpec {
    group: FiniteGroup,
    a: usize,
    b: usize,
    entries: Vec<usize>,
}

/// Whether a triple's relations are only reflexive or also equivalences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleKind {
    Equivalence,
    Reflexive,
}

/// A triple `(N, S, T)` with `S` on `I` and `T` on `Λ`. Construct through
/// [`ReesSpec::linked_triple`] to have linkage checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkedTriple {
    pub normal: NormalSubgroup,
    pub on_i: BinaryRelation,
    pub on_lambda: BinaryRelation,
    pub kind: TripleKind,
}

impl ReesSpec {
    pub fn new(group: FiniteGroup, a: usize, b: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Validation("index sets must be nonempty".into()));
        }
        if rows.len() != b {
            return Err(Error::Validation(format!(
                "sandwich matrix has {} rows, expected |Λ| = {b}",
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(a * b);
        for (l, row) in rows.iter().enumerate() {
            if row.len() != a {
                return Err(Error::Validation(format!(
                    "row {l} has {} entries, expected |I| = {a}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= group.order() {
                    return Err(Error::Validation(format!(
                        "entry {x} is not an element of a group of order {}",
                        group.order()
                    )));
                }
                entries.push(x);
            }
        }
        Ok(ReesSpec { group, a, b, entries })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `|I|`
    pub fn a(&self) -> usize {
        self.a
    }

    /// `|Λ|`
    pub fn b(&self) -> usize {
        self.b
    }

    /// `p_{λ i}`
    #[inline]
    pub fn entry(&self, lambda: usize, i: usize) -> usize {
        self.entries[lambda * self.a + i]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.a).map(<[usize]>::to_vec).collect()
    }

    pub fn materialized_order(&self) -> usize {
        self.a * self.group.order() * self.b
    }

    /// Index of `(i, g, λ)` in the materialized table.
    #[inline]
    pub fn element(&self, i: usize, g: usize, lambda: usize) -> usize {
        (i * self.group.order() + g) * self.b + lambda
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize, usize) {
        let lambda = x % self.b;
        let rest = x / self.b;
        (rest / self.group.order(), rest % self.group.order(), lambda)
    }

    /// `q_{λμij} = p_{λi} p_{μi}^-1 p_{μj} p_{λj}^-1`, unchecked.
    #[inline]
    fn q(&self, lambda: usize, mu: usize, i: usize, j: usize) -> usize {
        let g = &self.group;
        let left = g.mul(self.entry(lambda, i), g.inv(self.entry(mu, i)));
        let right = g.mul(self.entry(mu, j), g.inv(self.entry(lambda, j)));
        g.mul(left, right)
    }

    pub fn extract(&self, lambda: usize, mu: usize, i: usize, j: usize) -> Result<usize> {
        if i >= self.a || j >= self.a || lambda >= self.b || mu >= self.b {
            return Err(Error::Domain(format!(
                "extract index ({lambda},{mu},{i},{j}) out of range for {}x{} matrix",
                self.b, self.a
            )));
        }
        Ok(self.q(lambda, mu, i, j))
    }

    fn check_shapes(&self, on_i: &BinaryRelation, on_lambda: &BinaryRelation) -> Result<()> {
        if on_i.size() != self.a || on_lambda.size() != self.b {
            return Err(Error::Shape(format!(
                "relations on {} and {} points, index sets of size {} and {}",
                on_i.size(),
                on_lambda.size(),
                self.a,
                self.b
            )));
        }
        Ok(())
    }

    pub fn is_linked(
        &self,
        normal: &NormalSubgroup,
        on_i: &BinaryRelation,
        on_lambda: &BinaryRelation,
    ) -> Result<bool> {
        self.check_shapes(on_i, on_lambda)?;
        let all_lm = |i: usize, j: usize| {
            (0..self.b).all(|l| (0..self.b).all(|m| normal.contains(self.q(l, m, i, j))))
        };
        let all_ij = |l: usize, m: usize| {
            (0..self.a).all(|i| (0..self.a).all(|j| normal.contains(self.q(l, m, i, j))))
        };
        Ok(on_i.pairs().all(|(i, j)| all_lm(i, j)) && on_lambda.pairs().all(|(l, m)| all_ij(l, m)))
    }

    /// Builds a triple after checking reflexivity and linkage; the kind is
    /// `Equivalence` exactly when both relations are equivalences.
    pub fn linked_triple(
        &self,
        normal: NormalSubgroup,
        on_i: BinaryRelation,
        on_lambda: BinaryRelation,
    ) -> Result<LinkedTriple> {
        if !on_i.is_reflexive() || !on_lambda.is_reflexive() {
            return Err(Error::Contract("triple relations must be reflexive".into()));
        }
        if !self.is_linked(&normal, &on_i, &on_lambda)? {
            return Err(Error::Contract("triple is not linked".into()));
        }
        let kind = if on_i.is_equivalence() && on_lambda.is_equivalence() {
            TripleKind::Equivalence
        } else {
            TripleKind::Reflexive
        };
        Ok(LinkedTriple {
            normal,
            on_i,
            on_lambda,
            kind,
        })
    }

    fn check_materialize(&self, limits: &Limits) -> Result<()> {
        if self.materialized_order() > limits.materialize_order {
            return Err(Error::cap(
                "Rees matrix semigroup order",
                self.materialized_order(),
                limits.materialize_order,
            ));
        }
        Ok(())
    }

    /// Cayley table over triples `(i, g, λ)` in lexicographic order.
    pub fn materialize(&self, limits: &Limits) -> Result<FiniteSemigroup> {
        self.check_materialize(limits)?;
        let n = self.materialized_order();
        let g = &self.group;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (i, gx, l) = self.decode(x);
            for y in 0..n {
                let (j, hy, m) = self.decode(y);
                table.push(self.element(i, g.mul(g.mul(gx, self.entry(l, j)), hy), m));
            }
        }
        Ok(FiniteSemigroup::from_flat_unchecked(n, table))
    }

    /// The relation `ρ_{N,S,T}` on the materialized semigroup.
    pub fn triple_to_relation(&self, triple: &LinkedTriple, limits: &Limits) -> Result<BinaryRelation> {
        self.check_materialize(limits)?;
        self.check_shapes(&triple.on_i, &triple.on_lambda)?;
        if !triple.on_i.is_reflexive()
            || !triple.on_lambda.is_reflexive()
            || !self.is_linked(&triple.normal, &triple.on_i, &triple.on_lambda)?
        {
            return Err(Error::Contract("triple is not a linked reflexive triple".into()));
        }
        let n = self.materialized_order();
        let g = &self.group;
        let n_sub = &triple.normal;
        let mut rel = BinaryRelation::empty(n);
        for x in 0..n {
            let (i, gx, l) = self.decode(x);
            for y in 0..n {
                let (j, hy, m) = self.decode(y);
                if !triple.on_i.contains(i, j) || !triple.on_lambda.contains(l, m) {
                    continue;
                }
                let h_inv = g.inv(hy);
                let related = (0..self.a).all(|k| {
                    // g p_{λk} p_{μk}^-1 h^-1
                    let core = g.mul(
                        g.mul(gx, self.entry(l, k)),
                        g.mul(g.inv(self.entry(m, k)), h_inv),
                    );
                    (0..self.b).all(|nu| {
                        let w = g.mul(g.mul(self.entry(nu, i), core), g.inv(self.entry(nu, j)));
                        n_sub.contains(w)
                    })
                });
                if related {
                    rel.insert(x, y);
                }
            }
        }
        Ok(rel)
    }

    /// The triple `(N_ρ, ρ_I, ρ_Λ)` of a diagonal subsemigroup.
    pub fn relation_to_triple(&self, rel: &BinaryRelation, limits: &Limits) -> Result<LinkedTriple> {
        let semigroup = self.materialize(limits)?;
        if !semigroup.is_diagonal_subsemigroup(rel)? {
            return Err(Error::Contract(
                "relation is not a diagonal subsemigroup of the Rees matrix semigroup".into(),
            ));
        }
        Ok(self.relation_to_triple_unchecked(rel))
    }

    fn relation_to_triple_unchecked(&self, rel: &BinaryRelation) -> LinkedTriple {
        let g = &self.group;
        let one = g.identity();
        let elements = (0..g.order()).filter(|&x| {
            (0..self.a).all(|i| {
                (0..self.b).all(|l| rel.contains(self.element(i, x, l), self.element(i, one, l)))
            })
        });
        let normal = NormalSubgroup::new(g, elements)
            .expect("the kernel of a diagonal subsemigroup is a normal subgroup");
        // (i, p_{λi}^-1, λ)
        let pinv = |l: usize, i: usize| self.element(i, g.inv(self.entry(l, i)), l);
        let mut on_i = BinaryRelation::empty(self.a);
        for i in 0..self.a {
            for j in 0..self.a {
                if (0..self.b).all(|l| rel.contains(pinv(l, i), pinv(l, j))) {
                    on_i.insert(i, j);
                }
            }
        }
        let mut on_lambda = BinaryRelation::empty(self.b);
        for l in 0..self.b {
            for m in 0..self.b {
                if (0..self.a).all(|i| rel.contains(pinv(l, i), pinv(m, i))) {
                    on_lambda.insert(l, m);
                }
            }
        }
        self.linked_triple(normal, on_i, on_lambda)
            .expect("the triple of a diagonal subsemigroup is linked")
    }

    /// The largest relations `σ` on `I` and `τ` on `Λ` linked with `N`, as
    /// partitions.
    pub fn sigma_tau(&self, normal: &NormalSubgroup) -> Result<(Partition, Partition)> {
        let mut sigma = BinaryRelation::empty(self.a);
        for i in 0..self.a {
            for j in 0..self.a {
                if (0..self.b).all(|l| (0..self.b).all(|m| normal.contains(self.q(l, m, i, j)))) {
                    sigma.insert(i, j);
                }
            }
        }
        let mut tau = BinaryRelation::empty(self.b);
        for l in 0..self.b {
            for m in 0..self.b {
                if (0..self.a).all(|i| (0..self.a).all(|j| normal.contains(self.q(l, m, i, j)))) {
                    tau.insert(l, m);
                }
            }
        }
        Ok((as_partition(&sigma, "sigma")?, as_partition(&tau, "tau")?))
    }

    /// Per-normal-subgroup counts of linked triples.
    pub fn triple_census(&self, limits: &Limits) -> Result<TripleCensus> {
        if self.group.order() > limits.group_order {
            return Err(Error::cap("group order", self.group.order(), limits.group_order));
        }
        let subgroups = self.group.normal_subgroups()?;
        let rows = crate::par::map(&subgroups, |n| {
            let (sigma, tau) = self.sigma_tau(n)?;
            CensusRow::new(SubgroupLabel::Concrete(n.clone()), sigma, tau)
        });
        TripleCensus::from_rows(rows.into_iter().collect::<Result<Vec<_>>>()?)
    }

    /// `χ` from the triple census, without materializing the semigroup.
    pub fn chi_rees(&self, limits: &Limits) -> Result<DscReport> {
        self.triple_census(limits)?.report()
    }

    /// Every linked reflexive triple, generated from the census: for each
    /// normal subgroup `N`, all reflexive `S ⊆ σ_N` and `T ⊆ τ_N`.
    pub fn linked_reflexive_triples(&self, limits: &Limits) -> Result<Vec<LinkedTriple>> {
        let census = self.triple_census(limits)?;
        let mut out = Vec::new();
        for row in census.rows() {
            let SubgroupLabel::Concrete(normal) = &row.label else {
                unreachable!("concrete census rows")
            };
            let on_i_all = reflexive_subrelations(&row.sigma);
            let on_lambda_all = reflexive_subrelations(&row.tau);
            for s in &on_i_all {
                for t in &on_lambda_all {
                    out.push(self.linked_triple(normal.clone(), s.clone(), t.clone())?);
                }
            }
        }
        Ok(out)
    }
}

fn as_partition(rel: &BinaryRelation, name: &str) -> Result<Partition> {
    Partition::from_equivalence(rel)
        .map_err(|_| Error::Internal(format!("maximal linked relation {name} is not an equivalence")))
}

/// All reflexive relations contained in the equivalence of `partition`.
pub(crate) fn reflexive_subrelations(partition: &Partition) -> Vec<BinaryRelation> {
    let n = partition.ground_size();
    let free: Vec<(usize, usize)> = partition
        .blocks()
        .iter()
        .flat_map(|b| b.iter().flat_map(move |&i| b.iter().filter(move |&&j| j != i).map(move |&j| (i, j))))
        .collect();
    assert!(free.len() < 32, "too many free pairs to enumerate");
    (0u32..1 << free.len())
        .map(|mask| {
            let mut rel = BinaryRelation::diagonal(n);
            for (k, &(i, j)) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rel.insert(i, j);
                }
            }
            rel
        })
        .collect()
}

#[cfg(test)]
mod tests;
